from pathlib import Path

from superalgebra.exceptions import MalformedInput
from superalgebra.report import build_report, render
from superalgebra.suites import SUITES, suite_names
from superalgebra.tasks import run_suites

from ._base import SuperquantCommand


class Command(SuperquantCommand):
    help = 'Emit the full report: orbits, forms, polarizations, quantization and comparison'
    with_format = True

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--output', help='Write the report to this file instead of stdout')
        parser.add_argument('--certificates', choices=['all', *SUITES],
                            help='Append the certificates of these suites')

    def run(self, *args, **options):
        certificates = []
        if options.get('certificates'):
            certificates = run_suites(suite_names(options['certificates']))
        text = render(build_report(certificates=certificates), options['format'])
        if options.get('output'):
            try:
                Path(options['output']).write_text(text, encoding='utf-8')
            except OSError as e:
                raise MalformedInput(f"Cannot write {options['output']}: {e}")
            self.stdout.write(f"Report written to {options['output']}")
        else:
            self.stdout.write(text, ending='')
        if certificates:
            self.finish(certificates)
