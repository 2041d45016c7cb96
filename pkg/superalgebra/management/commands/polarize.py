from superalgebra.orbits import CASES, generic_orbit, polarization_checks, stabilizer_checks
from superalgebra.report import polarization_blocks

from ._base import SuperquantCommand


class Command(SuperquantCommand):
    help = 'List and check the polarization families of every orbit type'
    with_format = True

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--case', choices=CASES)

    def run(self, *args, **options):
        cases = [options['case']] if options.get('case') else list(CASES)
        certificates = []
        for case in cases:
            orbit = generic_orbit(case)
            certificates += stabilizer_checks(orbit)
            certificates += polarization_checks(orbit)
        self.write_blocks(polarization_blocks(cases), options)
        self.write_certificates(certificates)
        self.finish(certificates)
