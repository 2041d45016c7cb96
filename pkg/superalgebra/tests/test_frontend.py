"""Тесты файлов точек, отчётов, задач проверки и команд управления"""
import tempfile
from fractions import Fraction
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from superalgebra.certificates import Certificate
from superalgebra.exceptions import MalformedInput
from superalgebra.report import block, build_report, parse_report, render, render_json
from superalgebra.serializers import CertificateSerializer, PointFileSerializer
from superalgebra.suites import suite_names
from superalgebra.tasks import certificates_from, verify_suite


class PointFileTest(SimpleTestCase):
    """Тесты разбора файла базовой точки"""

    def parse(self, text):
        serializer = PointFileSerializer(data={'text': text})
        return serializer, serializer.is_valid()

    def test_valid_file(self):
        serializer, valid = self.parse("# орбита 2|2\ny0 = -2\nx2 = 1/3  # сдвиг\n\n")
        self.assertTrue(valid, serializer.errors)
        self.assertEqual(serializer.validated_data['values'], {'y0': Fraction(-2), 'x2': Fraction(1, 3)})

    def test_empty_file(self):
        serializer, valid = self.parse('')
        self.assertTrue(valid)
        self.assertEqual(serializer.validated_data['values'], {})

    def test_invalid_files(self):
        for text in ('y0 = x', 'xi4 = 1', 'y0 = 1\ny0 = 2', 'y0 = 1/0', 'y0 1', 'y0 = 0.5'):
            with self.subTest(text=text):
                serializer, valid = self.parse(text)
                self.assertFalse(valid)
                self.assertIn('text', serializer.errors)


class ReportTest(SimpleTestCase):
    """Тесты отчёта в трёх форматах"""

    def setUp(self):
        certificate = Certificate('kernel', 'units', True, detail='ok')
        self.report = build_report(
            [block('orbit', 'even22', {'case': 'even22', 'labels': {'y0': 'y0'}, 'stabilizer': []})],
            [certificate])

    def test_json_round_trip(self):
        data = parse_report(render_json(self.report))
        self.assertEqual(data['blocks'][0]['data']['labels'], {'y0': 'y0'})
        self.assertEqual(data['blocks'][1]['kind'], 'certificates')
        self.assertEqual(data['blocks'][1]['data'][0]['name'], 'units')

    def test_rejects_bad_reports(self):
        with self.assertRaises(MalformedInput):
            parse_report('{')
        with self.assertRaises(MalformedInput):
            parse_report('{"schema": "0", "blocks": []}')
        with self.assertRaises(MalformedInput):
            render(self.report, 'html')

    def test_text(self):
        text = render(self.report, 'text')
        self.assertIn('== orbit: even22 ==', text)
        self.assertIn('stabilizer: -', text)

    def test_latex(self):
        """Выражения под ключами ядра набираются в math-режиме"""
        text = render(self.report, 'latex')
        self.assertTrue(text.startswith(r'\documentclass{article}'))
        self.assertIn(r'\section*{orbit: even22}', text)
        self.assertIn(r'\item[y0] $y_{0}$', text)
        self.assertIn(r'\end{document}', text)


class TaskTest(SimpleTestCase):
    """Тесты задачи проверки набора"""

    def test_certificate_serializer(self):
        certificate = Certificate('orbits', 'classify[0]', False, witness='y0', expected_failure=True)
        data = CertificateSerializer(certificate).data
        self.assertTrue(data['ok'])
        restored = certificates_from([data])[0]
        self.assertEqual(restored.name, 'classify[0]')
        self.assertTrue(restored.expected_failure)

    def test_unknown_suite_gives_failed_certificate(self):
        (certificate,) = certificates_from(verify_suite('unknown'))
        self.assertFalse(certificate.ok)
        self.assertIn('MalformedInput', certificate.detail)

    def test_suite_names(self):
        self.assertEqual(suite_names('kernel'), ['kernel'])
        self.assertIn('compare', suite_names('all'))
        with self.assertRaises(MalformedInput):
            suite_names('unknown')


class CommandTest(SimpleTestCase):
    """Тесты команд управления"""

    def point_file(self, text):
        directory = tempfile.TemporaryDirectory()
        self.addCleanup(directory.cleanup)
        path = Path(directory.name) / 'point.txt'
        path.write_text(text, encoding='utf-8')
        return str(path)

    def test_classify(self):
        out = StringIO()
        call_command('classify', self.point_file('y0 = 1\n'), stdout=out)
        self.assertIn('== orbit: even22 ==', out.getvalue())

    def test_classify_malformed_point(self):
        with self.assertRaises(CommandError) as cm:
            call_command('classify', self.point_file('y0 = x\n'), stdout=StringIO())
        self.assertEqual(cm.exception.returncode, 2)

    def test_classify_missing_file(self):
        with self.assertRaises(CommandError) as cm:
            call_command('classify', '/nonexistent/point.txt', stdout=StringIO())
        self.assertEqual(cm.exception.returncode, 2)

    def test_verify_kernel(self):
        out = StringIO()
        call_command('verify', suite='kernel', jobs=1, stdout=out)
        self.assertIn('PASS [kernel]', out.getvalue())
        self.assertIn('checks ok', out.getvalue())
