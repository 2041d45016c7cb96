import sys
from pathlib import Path

from superalgebra.exceptions import MalformedInput
from superalgebra.orbits import classify, orbit_report
from superalgebra.report import block
from superalgebra.serializers import PointFileSerializer

from ._base import SuperquantCommand


class Command(SuperquantCommand):
    help = 'Classify the coadjoint orbit through a base point read from a point file'
    with_format = True

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('point_file', help="File with lines 'name = p/q' ('-' reads stdin)")

    def run(self, *args, **options):
        path = options['point_file']
        if path == '-':
            text = sys.stdin.read()
        else:
            try:
                text = Path(path).read_text(encoding='utf-8')
            except OSError as e:
                raise MalformedInput(f"Cannot read point file {path}: {e}")
        serializer = PointFileSerializer(data={'text': text})
        serializer.is_valid(raise_exception=True)
        orbit = classify(serializer.validated_data['values'])
        report = orbit_report(orbit)
        report['embedding'] = {name: str(value) for name, value in orbit.embedding.items()}
        self.write_blocks([block('orbit', orbit.case, report)], options)
