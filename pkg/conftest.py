import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'superquant.settings')
django.setup()
