"""Тесты нечётных семейств и преобразования Фурье-Березина"""
from django.test import SimpleTestCase

from superalgebra.exceptions import MalformedInput, MembershipError, ParityMismatch
from superalgebra.expressions import parse
from superalgebra.liegroup import standard_group
from superalgebra.oddfamily import (
    LinearOperator, OddFamilyDecomposition, berezin_fourier, berezin_fourier_expanded, certify,
    exp_action, family_element, family_operator, fourier_inverse, fourier_sign, graded_commutator,
    independent_coefficients, induced_action_check, lambda_components, right_adjoint,
)
from superalgebra.regrep import build_I_operators, families, regular_operator, subspace_catalog
from superalgebra.suites import one_variable_family
from superalgebra.symkernel import Parity


class OperatorTest(SimpleTestCase):
    """Тесты алгебры линейных операторов"""

    def setUp(self):
        self.ctx = standard_group().ctx
        self.ops = build_I_operators(self.ctx)

    def test_composition_and_sum(self):
        f = parse('a1*alpha5 + beta', self.ctx)
        i0, i4 = self.ops['I0'], self.ops['I4']
        self.assertEqual((i0 @ i4)(f), i0(i4(f)))
        self.assertEqual((i0 + i4)(f), i0(f) + i4(f))
        self.assertEqual((i0 @ i4).parity, Parity.EVEN)

    def test_odd_maps_anticommute(self):
        """[I0, I4] = I0 I4 + I4 I0 = 0"""
        f = parse('a1*alpha4*alpha5 + a3*beta', self.ctx)
        self.assertFalse(graded_commutator(self.ops['I0'], self.ops['I4'])(f))

    def test_family_requires_odd_maps(self):
        single = one_variable_family(self.ctx)
        even = LinearOperator(lambda f: f, Parity.EVEN, 'id')
        with self.assertRaises(ParityMismatch):
            OddFamilyDecomposition('(W1; id)', single.space, {'id': even})


class CertifyTest(SimpleTestCase):
    """Тесты трёх условий разложения"""

    def setUp(self):
        self.ctx = standard_group().ctx
        self.ops = build_I_operators(self.ctx)
        self.catalog = subspace_catalog(self.ctx)
        self.families = families(self.catalog, self.ops)

    def test_single_variable(self):
        certificate = certify(one_variable_family(self.ctx))
        self.assertTrue(certificate.passed, certificate.witness)

    def test_catalog_families(self):
        for key in ('E', 'X'):
            with self.subTest(family=key):
                certificate = certify(self.families[key])
                self.assertTrue(certificate.passed, certificate.witness)

    def test_repeated_map_is_not_a_decomposition(self):
        """Повтор I5 нарушает инволютивное антикоммутирование"""
        fam = OddFamilyDecomposition('(X; I0, I5, I5)', self.catalog['X'],
                                     {'I0': self.ops['I0'], 'I5': self.ops['I5'], 'I5*': self.ops['I5']},
                                     ambient=self.catalog['W'])
        certificate = certify(fam, expected_failure=True)
        self.assertFalse(certificate.passed)
        self.assertTrue(certificate.ok)

    def test_membership(self):
        """Элемент с α⁴ не лежит в X"""
        space = self.catalog['X']
        self.assertTrue(space.contains(space.generic()))
        with self.assertRaises(MembershipError):
            space.check(space.original(parse('alpha4', self.ctx)))


class FourierTest(SimpleTestCase):
    """Тесты преобразования Фурье-Березина"""

    def setUp(self):
        self.ctx = standard_group().ctx
        self.single = one_variable_family(self.ctx)
        self.x_family = families()['X']
        self.lambdas = ['lam1', 'lam2']

    def test_one_variable_element(self):
        """e^{λI}(1) = 1 + iλξ"""
        value = family_element(self.single, self.ctx.one, ['lam1'])
        self.assertEqual(value, parse('1 + I*lam1*xi', self.ctx))

    def test_one_variable_transform(self):
        """F(w₀ + λw₁) = w₁ + I(w₀)"""
        w0, w1 = self.ctx.scalars('c0 c1')
        f = w0 + self.ctx.scalar('lam1') * w1
        self.assertEqual(berezin_fourier(self.single, f, ['lam1']), w1 + self.single.maps['I'](w0))

    def test_sign_of_empty_subset(self):
        """При n = 2 знак слагаемого I₂I₁x_∅ отрицателен"""
        lambdas = [self.ctx.scalar(name) for name in self.lambdas]
        self.assertEqual(fourier_sign(self.x_family, (), lambdas), -1)
        self.assertEqual(fourier_sign(self.x_family, ('I0', 'I4'), lambdas), 1)

    def test_transform_matches_expansion(self):
        space = self.x_family.space
        lam1, lam2 = self.ctx.scalars('lam1 lam2')
        parts = [space.generic(offset) for offset in (0, 40, 80, 120)]
        f = parts[0] + lam1 * parts[1] + lam2 * parts[2] + lam2 * lam1 * parts[3]
        self.assertEqual(lambda_components(self.x_family, f, self.lambdas)[('I0', 'I4')], parts[3])
        transformed = berezin_fourier(self.x_family, f, self.lambdas)
        self.assertEqual(transformed, berezin_fourier_expanded(self.x_family, f, self.lambdas))
        self.assertEqual(fourier_inverse(self.x_family, transformed, self.lambdas), f)

    def test_parameter_count(self):
        with self.assertRaises(MalformedInput):
            family_operator(self.x_family, ['lam1'])

    def test_inverse_exponential(self):
        w = self.x_family.space.generic()
        forward = family_element(self.x_family, w, self.lambdas)
        backward = family_operator(self.x_family, self.lambdas, sign=-1)
        self.assertEqual(exp_action(backward, forward), w)


class InducedActionTest(SimpleTestCase):
    """Тесты индуцированного действия и независимости коэффициентов"""

    def setUp(self):
        self.ctx = standard_group().ctx
        self.x_family = families()['X']

    def test_right_adjoint_is_nilpotent(self):
        generator = build_I_operators(self.ctx)['I0'].scaled(self.ctx.scalar('lam1'))
        adjoint = right_adjoint(generator)
        w = self.x_family.space.generic()
        self.assertFalse(adjoint(adjoint(regular_operator()))(w))

    def test_induced_action_intertwines(self):
        psi = induced_action_check(self.x_family, regular_operator(), ['lambda0', 'lambda4'])
        self.assertEqual(psi.parity, Parity.EVEN)

    def test_independent_coefficients(self):
        space = self.x_family.space
        lam1, lam2 = self.ctx.scalars('lam1 lam2')
        w1, w2 = space.generic(), space.generic(60)
        found = independent_coefficients(space, lam1 * w1 + lam2 * w2, ['lam1', 'lam2'])
        self.assertEqual(found, {('lam1',): w1, ('lam2',): w2})
