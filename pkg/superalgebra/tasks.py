import logging

import django
import rollbar
from billiard import Pool
from celery import group, shared_task
from django.conf import settings

from .certificates import Certificate
from .serializers import CertificateSerializer
from .suites import run_suite

logger = logging.getLogger(__name__)


@shared_task
def verify_suite(name):
    """Выполнение набора проверок; результат - сериализованные сертификаты"""
    try:
        certificates = run_suite(name)
        return list(CertificateSerializer(certificates, many=True).data)
    except Exception as e:
        logger.error(f"Error running suite {name}: {e}")
        if getattr(settings, 'ROLLBAR_ACCESS_TOKEN', ''):
            rollbar.report_exc_info()
        return [Certificate(name, 'suite', False, detail=f"{type(e).__name__}: {e}",
                            witness=str(e)).as_dict()]


def certificates_from(payload):
    """Восстановление сертификатов из результата задачи"""
    result = []
    for data in payload:
        serializer = CertificateSerializer(data=data)
        serializer.is_valid(raise_exception=True)
        result.append(serializer.save())
    return result


def _init_worker():
    django.setup()


def _verify(name):
    return verify_suite(name)


def run_suites(names, jobs=1):
    """Наборы по очереди, в пуле процессов billiard или группой задач Celery"""
    names = list(names)
    if jobs <= 1 or len(names) == 1:
        payloads = [_verify(name) for name in names]
    elif not settings.CELERY_TASK_ALWAYS_EAGER:
        logger.info(f"Dispatching {len(names)} suites to the Celery broker")
        payloads = group(verify_suite.s(name) for name in names).apply_async().get()
    else:
        logger.info(f"Running {len(names)} suites in {jobs} worker processes")
        with Pool(jobs, initializer=_init_worker) as pool:
            payloads = pool.map(_verify, names)
    return [c for payload in payloads for c in certificates_from(payload)]
