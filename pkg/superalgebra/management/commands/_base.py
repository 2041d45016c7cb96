"""Общая часть команд: коды возврата и печать сертификатов"""
import logging

from django.core.management.base import BaseCommand, CommandError
from rest_framework import serializers

from superalgebra.certificates import all_ok
from superalgebra.exceptions import MalformedInput, SuperAlgebraError
from superalgebra.report import FORMATS, build_report, render

logger = logging.getLogger(__name__)

EXIT_FAILED = 1
EXIT_MALFORMED = 2


def certificate_line(certificate):
    if certificate.ok:
        status = 'PASS' if certificate.passed else 'XFAIL'
    else:
        status = 'FAIL' if not certificate.passed else 'XPASS'
    line = f"{status} [{certificate.suite}] {certificate.name}"
    if certificate.detail and (certificate.passed or certificate.ok):
        line += f": {certificate.detail}"
    return line


class SuperquantCommand(BaseCommand):
    """Команда с кодами возврата 0 / 1 (проверка не прошла) / 2 (некорректный ввод)"""
    with_format = False

    def add_arguments(self, parser):
        if self.with_format:
            parser.add_argument('--format', choices=FORMATS, default='text')

    def handle(self, *args, **options):
        try:
            return self.run(*args, **options)
        except MalformedInput as e:
            raise CommandError(str(e), returncode=EXIT_MALFORMED)
        except serializers.ValidationError as e:
            raise CommandError(f"Malformed input: {e.detail}", returncode=EXIT_MALFORMED)
        except SuperAlgebraError as e:
            witness = getattr(e, 'witness', None)
            if witness:
                self.stdout.write(f"witness: {witness}")
            raise CommandError(f"{type(e).__name__}: {e}", returncode=EXIT_FAILED)

    def run(self, *args, **options):
        raise NotImplementedError

    def write_blocks(self, blocks, options, certificates=None):
        fmt = options.get('format') or 'text'
        self.stdout.write(render(build_report(blocks, certificates), fmt), ending='')

    def write_certificates(self, certificates):
        for certificate in certificates:
            self.stdout.write(certificate_line(certificate))
            if not certificate.ok:
                for check in certificate.checks:
                    if not check['passed']:
                        self.stdout.write(f"    {check['name']}: {check['witness']}")
                if certificate.witness and not certificate.checks:
                    self.stdout.write(f"    witness: {certificate.witness}")
                if certificate.passed:
                    self.stdout.write("    expected to fail, but passed")

    def finish(self, certificates):
        """Итог по сертификатам; при провале - код возврата 1"""
        failed = [c for c in certificates if not c.ok]
        self.stdout.write(f"{len(certificates) - len(failed)}/{len(certificates)} checks ok")
        if not all_ok(certificates):
            logger.warning(f"{len(failed)} checks failed")
            raise CommandError(f"{len(failed)} checks failed", returncode=EXIT_FAILED)
