from superalgebra.compare import compare_certificates
from superalgebra.report import comparison_blocks

from ._base import SuperquantCommand


class Command(SuperquantCommand):
    help = 'Compare the regular representation modes with the orbit representations'
    with_format = True

    def run(self, *args, **options):
        certificates = compare_certificates()
        self.write_blocks(comparison_blocks(), options)
        self.write_certificates(certificates)
        self.finish(certificates)
