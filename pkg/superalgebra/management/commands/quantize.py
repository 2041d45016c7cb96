from superalgebra.quantize import (
    connection_for, curvature_check, lift_checks, quantization_pairs, representation_checks,
    solution_checks,
)
from superalgebra.orbits import kks_form
from superalgebra.report import quantization_blocks

from ._base import SuperquantCommand


class Command(SuperquantCommand):
    help = 'Quantize every (orbit, polarization) pair and check the resulting representations'
    with_format = True

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--polarization', help='Only the polarization family with this name')

    def run(self, *args, **options):
        name = options.get('polarization')
        pairs = quantization_pairs(name=name)
        certificates = []
        seen = set()
        for orbit, polarization in pairs:
            connection = connection_for(orbit)
            if orbit.case not in seen:
                seen.add(orbit.case)
                certificates += curvature_check(connection, orbit, kks_form(orbit))
                certificates += lift_checks(orbit, connection)
            certificates += solution_checks(orbit, polarization, connection=connection)
            certificates += representation_checks(orbit, polarization)
        self.write_blocks(quantization_blocks(name), options)
        self.write_certificates(certificates)
        self.finish(certificates)
