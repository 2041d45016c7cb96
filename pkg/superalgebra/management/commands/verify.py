from django.conf import settings

from superalgebra.suites import SUITES, suite_names
from superalgebra.tasks import run_suites

from ._base import SuperquantCommand


class Command(SuperquantCommand):
    help = 'Run verification suites and print their certificates'

    def add_arguments(self, parser):
        parser.add_argument('--suite', choices=['all', *SUITES], default='all')
        parser.add_argument('--jobs', type=int, default=None,
                            help='Number of worker processes (default SUPERQUANT_DEFAULT_JOBS)')

    def run(self, *args, **options):
        jobs = options.get('jobs') or settings.SUPERQUANT_DEFAULT_JOBS
        certificates = run_suites(suite_names(options['suite']), jobs=jobs)
        self.write_certificates(certificates)
        self.finish(certificates)
