from superalgebra.orbits import CASES, generic_orbit, symplectic_checks
from superalgebra.report import symplectic_blocks

from ._base import SuperquantCommand


class Command(SuperquantCommand):
    help = 'Compute the KKS form of every orbit type and check closedness, invariance and nondegeneracy'
    with_format = True

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--case', choices=CASES)

    def run(self, *args, **options):
        cases = [options['case']] if options.get('case') else list(CASES)
        certificates = []
        for case in cases:
            certificates += symplectic_checks(generic_orbit(case))
        self.write_blocks(symplectic_blocks(cases), options)
        self.write_certificates(certificates)
        self.finish(certificates)
