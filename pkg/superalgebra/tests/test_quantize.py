"""Тесты предквантования, решений условий поляризации и формул представлений"""
from django.test import SimpleTestCase

from superalgebra.certificates import all_ok
from superalgebra.exceptions import MalformedInput
from superalgebra.expressions import parse
from superalgebra.orbits import find_polarization, generic_orbit, kks_form
from superalgebra.quantize import (
    RepFormula, action_check, connection_for, curvature_check, displayed_rep, induced_rep,
    lift_checks, polarized_solve, quantization_pairs, quantization_report, representation_checks,
    solution_checks,
)
from superalgebra.symkernel import exp_nilpotent


class PrequantizationTest(SimpleTestCase):
    """Тесты связности и поднятого действия"""

    def test_curvature_even22(self):
        """dΓ₀ и dΓ₁ - чётная и нечётная части ω"""
        orbit = generic_orbit('even22')
        certificates = curvature_check(connection_for(orbit), orbit, kks_form(orbit))
        self.assertTrue(all_ok(certificates), [c.witness for c in certificates])

    def test_lift_odd22(self):
        orbit = generic_orbit('odd22')
        self.assertTrue(all_ok(lift_checks(orbit)))

    def test_action_point(self):
        """Действие на расслоении над одноточечной орбитой"""
        orbit = generic_orbit('point')
        certificates = action_check(orbit)
        self.assertTrue(all_ok(certificates), [c.witness for c in certificates])


class PolarizedSolutionTest(SimpleTestCase):
    """Тесты решений условий поляризации"""

    def setUp(self):
        self.orbit = generic_orbit('even22')
        self.polarization = find_polarization(self.orbit, 'even22-3x3', eps=1)

    def test_solution_matches_display(self):
        certificates = solution_checks(self.orbit, self.polarization)
        self.assertTrue(all_ok(certificates), [c.witness for c in certificates])

    def test_transverse_coordinates(self):
        """Поперечные координаты x2 и ξ5 − εξ6"""
        solution = polarized_solve(self.orbit, self.polarization)
        self.assertEqual(solution.transverse, [parse('x2', self.orbit.ctx), parse('xi5 - xi6', self.orbit.ctx)])

    def test_report(self):
        report = quantization_report(self.orbit, self.polarization)
        self.assertEqual(report['case'], 'even22')
        self.assertEqual(report['polarization'], 'even22-3x3[eps=+1]')
        self.assertIn('multiplier', report['representation'])


class RepFormulaTest(SimpleTestCase):
    """Тесты формул представлений"""

    def setUp(self):
        self.orbit = generic_orbit('even22')
        self.ctx = self.orbit.ctx
        self.polarization = find_polarization(self.orbit, 'even22-3x3', eps=-1)

    def test_induced_rep(self):
        """Показанная формула совпадает с поднятым действием"""
        rep = induced_rep(self.orbit, self.polarization)
        self.assertEqual(rep, displayed_rep(self.orbit, self.polarization))

    def test_representation_checks(self):
        certificates = representation_checks(self.orbit, self.polarization)
        self.assertTrue(all_ok(certificates), [c.witness for c in certificates])

    def test_central_character(self):
        """Вдоль b̂: −i·y0/ħ"""
        rep = displayed_rep(self.orbit, self.polarization)
        group = self.orbit.group
        self.assertEqual(rep.central_character('bh', group), parse('-I*y0/hbar', self.ctx))

    def test_reshift_is_invertible(self):
        """Сдвиг переменной и обратный сдвиг"""
        z1 = self.ctx.scalar('z1')
        rep = RepFormula(self.ctx, {'z1': z1}, {'z1': z1 - self.ctx.scalar('ah1')},
                         exp_nilpotent(parse('I*y0/hbar*ah2*z1', self.ctx)))
        amount = parse('xo2/y0', self.ctx)
        moved = rep.reshift('z1', amount)
        self.assertEqual(moved.shift['z1'], rep.shift['z1'])
        self.assertEqual(moved.reshift('z1', -amount), rep)

    def test_quantization_pairs(self):
        """Фильтр по имени поляризации"""
        pairs = quantization_pairs(name='even22-3x3')
        self.assertEqual([p.eps for _, p in pairs], [1, -1])
        with self.assertRaises(MalformedInput):
            quantization_pairs(name='unknown')
