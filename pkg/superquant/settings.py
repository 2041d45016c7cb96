"""
Django settings for superquant project.

Настройки читаются через python-decouple из окружения или файла .env.
"""
import os
import sys
from pathlib import Path

import rollbar
from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config('SECRET_KEY', default='superquant-dev-key')

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []

ROLLBAR_ACCESS_TOKEN = config('ROLLBAR_ACCESS_TOKEN', default='')
if ROLLBAR_ACCESS_TOKEN:
    rollbar.init(
        access_token=ROLLBAR_ACCESS_TOKEN,
        environment=config('ROLLBAR_ENVIRONMENT', default='development'),
        root=os.path.dirname(os.path.abspath(__file__)),  # Корень проекта
    )


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',
    'rest_framework',
    'superalgebra',
]

# Вычисления не используют базу данных
DATABASES = {}

LANGUAGE_CODE = 'ru-ru'

TIME_ZONE = 'Europe/Moscow'

USE_I18N = True

USE_TZ = True

# Logging
LOG_LEVEL = config('LOG_LEVEL', default='INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {'format': '{levelname} {name}: {message}', 'style': '{'},
    },
    'handlers': {
        'console': {'class': 'logging.StreamHandler', 'formatter': 'simple'},
    },
    'loggers': {
        'superalgebra': {'handlers': ['console'], 'level': LOG_LEVEL, 'propagate': False},
    },
}

# Celery Configuration Options
CELERY_BROKER_URL = config('CELERY_BROKER_URL', default='redis://localhost:6379/0')
CELERY_RESULT_BACKEND = config('CELERY_RESULT_BACKEND', default='redis://localhost:6379/0')
CELERY_TASK_ALWAYS_EAGER = config('CELERY_TASK_ALWAYS_EAGER', default=True, cast=bool)
CELERY_ACCEPT_CONTENT = ['json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_TIMEZONE = 'Europe/Moscow'

# Движок супералгебр
SUPERQUANT_FIXTURES_DIR = config('SUPERQUANT_FIXTURES_DIR', default='')
SUPERQUANT_DEFAULT_JOBS = config('SUPERQUANT_DEFAULT_JOBS', default=1, cast=int)
SUPERQUANT_RANDOM_CASES = config('SUPERQUANT_RANDOM_CASES', default=1000, cast=int)
SUPERQUANT_REPORT_SCHEMA = config('SUPERQUANT_REPORT_SCHEMA', default='1')

if 'test' in sys.argv:  # Проверяем, что это тесты
    SUPERQUANT_RANDOM_CASES = 50  # Уменьшаем число случайных примеров
    CELERY_TASK_ALWAYS_EAGER = True
    LOGGING['loggers']['superalgebra']['level'] = 'WARNING'
