"""Тесты классификации орбит, формы KKS и поляризаций"""
from fractions import Fraction

from django.test import SimpleTestCase

from superalgebra.certificates import all_ok
from superalgebra.exceptions import MalformedInput
from superalgebra.orbits import (
    CASES, classify, displayed_form, find_polarization, generic_orbit, kks_form, label_checks,
    orbit_report, polarization_checks, polarizations, stabilizer, symplectic_checks,
)


class ClassifyTest(SimpleTestCase):
    """Тесты классификации базовых точек"""

    def test_cases(self):
        """Тип орбиты определяется y0 и ȳ1"""
        self.assertEqual(classify({'x1': 1}).case, 'point')
        self.assertEqual(classify({}).case, 'point')
        self.assertEqual(classify({'y0': 1}).case, 'even22')
        self.assertEqual(classify({'yb1': 3, 'xb4': 1}).case, 'odd22')
        self.assertEqual(classify({'y0': Fraction(1, 2), 'yb1': -1}).case, 'mixed33')

    def test_labels(self):
        """Метки орбиты - значения инвариантов в базовой точке"""
        orbit = classify({'y0': -2, 'x3': Fraction(1, 3)})
        self.assertEqual(orbit.labels['y0'], orbit.ctx.const(-2))
        self.assertEqual(orbit.labels['xo3'], orbit.ctx.const(Fraction(1, 3)))

    def test_rejects_odd_coordinates(self):
        with self.assertRaises(MalformedInput):
            classify({'xi4': 1})

    def test_report(self):
        report = orbit_report(classify({'y0': 1}))
        self.assertEqual(report['case'], 'even22')
        self.assertEqual(report['dimension'], '2|2')
        self.assertEqual(report['stabilizer'], ['e3', 'k0', 'e4', 'k1'])


class SymplecticTest(SimpleTestCase):
    """Тесты формы KKS на всех типах орбит"""

    def test_generic_orbits(self):
        for case in CASES:
            with self.subTest(case=case):
                certificates = symplectic_checks(generic_orbit(case))
                self.assertTrue(all_ok(certificates), [c.witness for c in certificates if not c.ok])

    def test_mixed_form_is_not_homogeneous(self):
        """У формы 3|3-орбиты есть чётная и нечётная части"""
        omega = kks_form(generic_orbit('mixed33'))
        self.assertEqual(omega, displayed_form(generic_orbit('mixed33')))
        self.assertTrue(omega.even_part())
        self.assertTrue(omega.odd_part())

    def test_labels_are_invariant(self):
        orbit = generic_orbit('mixed33')
        self.assertTrue(all_ok(label_checks(orbit)))


class PolarizationTest(SimpleTestCase):
    """Тесты поляризаций"""

    def test_stabilizers(self):
        self.assertEqual(stabilizer(generic_orbit('odd22')), ['e2', 'k0', 'e6', 'k1'])
        self.assertEqual(stabilizer(generic_orbit('mixed33')), ['k0', 'k1'])

    def test_families(self):
        """ε разворачивается в два семейства"""
        orbit = generic_orbit('even22')
        labels = [p.label for p in polarizations(orbit)]
        self.assertEqual(labels, ['even22-3x3[eps=+1]', 'even22-3x3[eps=-1]'])
        self.assertEqual(find_polarization(orbit, 'even22-3x3', eps=-1).eps, -1)
        with self.assertRaises(MalformedInput):
            find_polarization(orbit, 'odd22-4x2')

    def test_conditions(self):
        for case in ('odd22', 'mixed33'):
            with self.subTest(case=case):
                certificates = polarization_checks(generic_orbit(case))
                self.assertTrue(all_ok(certificates), [c.witness for c in certificates if not c.ok])
