"""Тесты регулярного представления, операторов I и Фурье-мод"""
from django.test import SimpleTestCase

from superalgebra.certificates import all_ok
from superalgebra.exceptions import MalformedInput, NotInvertible
from superalgebra.expressions import parse
from superalgebra.liegroup import standard_group
from superalgebra.oddfamily import certify
from superalgebra.regrep import (
    PM, FourierModeSpec, build_I_operators, epsilon_split, families, irreducibility_certificate,
    left_regular_action, reconstruct, representation_checks, subspace_catalog,
)
from superalgebra.symkernel import IMAG


class OperatorValuesTest(SimpleTestCase):
    """Значения операторов I на простых функциях"""

    def setUp(self):
        self.ctx = standard_group().ctx
        self.ops = build_I_operators(self.ctx)

    def test_values(self):
        """I₄(1) = iα⁴, I₆(α⁶) = −i"""
        self.assertEqual(self.ops['I4'](self.ctx.one), self.ctx.scalar('alpha4').scale(IMAG))
        self.assertEqual(self.ops['I6'](self.ctx.scalar('alpha6')), self.ctx.const(-IMAG))

    def test_involution(self):
        f = parse('a1*beta + alpha4*alpha5', self.ctx)
        for label, op in self.ops.items():
            with self.subTest(op=label):
                self.assertEqual(op(op(f)), f)

    def test_summary_families(self):
        decompositions = families(subspace_catalog(self.ctx), self.ops)
        self.assertEqual(set(decompositions), {'E', 'X', 'Y', 'S', 'C', 'X+', 'X-'})
        for key in ('Y', 'S', 'C'):
            with self.subTest(family=key):
                certificate = certify(decompositions[key])
                self.assertTrue(certificate.passed, certificate.witness)


class RegularRepresentationTest(SimpleTestCase):
    """Тесты левого регулярного действия"""

    def test_checks(self):
        certificates = representation_checks()
        self.assertTrue(all_ok(certificates), [c.witness for c in certificates if not c.ok])

    def test_translation_of_coordinate(self):
        """Φ_ĝ a1 = a1 − â1"""
        ctx = standard_group().ctx
        self.assertEqual(left_regular_action(ctx.scalar('a1')), parse('a1 - ah1', ctx))


class FourierModeSpecTest(SimpleTestCase):
    """Проверка меток мод"""

    def test_valid_tiers(self):
        self.assertEqual(FourierModeSpec().variables, ('a1', 'alpha5', 'alpha6'))
        self.assertEqual(FourierModeSpec('full', l0=0, lambda0=0, l1='l1').variables, ())

    def test_invalid_labels(self):
        cases = [
            dict(tier='unknown'),
            dict(eps=2),
            dict(tier='pm'),
            dict(tier='mode', l1='l1'),
            dict(tier='pm', lambda0=0, lambda5='lambda5'),
            dict(tier='lambda6', lambda6='lambda6'),
            dict(tier='full', lambda0=0),
        ]
        for labels in cases:
            with self.subTest(**labels):
                with self.assertRaises(MalformedInput):
                    FourierModeSpec(**labels)

    def test_pm_requires_invertible_l0(self):
        with self.assertRaises(NotInvertible):
            FourierModeSpec('pm', l0=0, lambda0=0)

    def test_mode_multiplier(self):
        """Множитель моды не зависит от координат вне моды"""
        spec = FourierModeSpec()
        self.assertFalse(spec.multiplier().depends_on('a2', 'a3', 'b', 'alpha4', 'beta'))


class EpsilonSplitTest(SimpleTestCase):
    """Тесты разбиения по ε"""

    def setUp(self):
        self.ctx = standard_group().ctx

    def test_constant(self):
        """t = 1: h± = ½"""
        h_plus, h_minus = epsilon_split(self.ctx.one, 'l0')
        self.assertEqual(h_plus, parse('1/2', self.ctx))
        self.assertEqual(h_minus, parse('1/2', self.ctx))

    def test_top_word(self):
        """t = α⁵α⁶: h± = ±i/ℓ₀"""
        h_plus, h_minus = epsilon_split(parse('alpha5*alpha6', self.ctx), 'l0')
        self.assertEqual(h_plus, parse('I/l0', self.ctx))
        self.assertEqual(h_minus, parse('-I/l0', self.ctx))

    def test_reconstruct(self):
        t = parse('a1 + 2*alpha5 - a1*alpha6 + 3*alpha5*alpha6', self.ctx)
        self.assertEqual(reconstruct(*epsilon_split(t, 'l0'), 'l0'), t)


class IrreducibilityTest(SimpleTestCase):
    """Вычисления неприводимости V± и Y"""

    def test_pm_modes(self):
        parts = ['generator_matrices', 'reachable', 'compositions', 'pm_exclusion', 'heisenberg']
        for eps in (1, -1):
            with self.subTest(eps=eps):
                certificate = irreducibility_certificate(FourierModeSpec(PM, lambda0=0, eps=eps))
                self.assertTrue(certificate.passed, certificate.witness)
                self.assertEqual(certificate.name, f"irreducible[eps={eps:+d}]")
                self.assertEqual([check['name'] for check in certificate.checks], parts)

    def test_requires_pm_tier(self):
        with self.assertRaises(MalformedInput):
            irreducibility_certificate(FourierModeSpec())
