"""Тесты ядра: нормальная форма, законы алгебры, экспоненты, производные и интеграл Березина"""
from fractions import Fraction

from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings, strategies as st

from superalgebra.exceptions import (
    ConstantPhaseError, ContextMismatch, MalformedInput, NonIntegrablePhase, NotInvertible,
    ParityMismatch, PhaseError,
)
from superalgebra.expressions import parse
from superalgebra.liegroup import standard_group
from superalgebra.suites import random_cases
from superalgebra.symkernel import (
    IMAG, Parity, SymbolContext, berezin, berezin_multiple, dumps, exp_nilpotent, integrate_even,
    inverse, loads, partial_even, partial_odd_left, partial_odd_right, set_zero, split_by,
    substitute, to_coeff,
)

EVEN = ('a1', 'a2', 'a3', 'b')
ODD = ('alpha4', 'alpha5', 'alpha6', 'beta')


def ctx():
    return standard_group().ctx


@st.composite
def scalars(draw, parity=Parity.EVEN):
    """Однородный элемент из нескольких мономов"""
    c = ctx()
    lengths = [0, 2, 4] if parity == Parity.EVEN else [1, 3]
    total = c.zero
    for _ in range(draw(st.integers(min_value=1, max_value=3))):
        term = c.const(Fraction(draw(st.integers(-4, 4)), draw(st.integers(1, 3))))
        for name in draw(st.lists(st.sampled_from(EVEN), max_size=2)):
            term = term * c.scalar(name)
        word = draw(st.permutations(ODD))[:draw(st.sampled_from(lengths))]
        for name in word:
            term = term * c.scalar(name)
        total = total + term
    return total


any_scalar = st.one_of(scalars(Parity.EVEN), scalars(Parity.ODD))


class NormalFormTest(SimpleTestCase):
    """Тесты нормальной формы"""

    def setUp(self):
        self.ctx = ctx()
        self.a1, self.a2 = self.ctx.scalars('a1 a2')
        self.alpha4, self.alpha5 = self.ctx.scalars('alpha4 alpha5')

    def test_odd_square_vanishes(self):
        """Квадрат нечётной образующей равен нулю"""
        self.assertFalse(self.alpha4 * self.alpha4)

    def test_odd_generators_anticommute(self):
        """Нечётные образующие антикоммутируют"""
        self.assertEqual(self.alpha4 * self.alpha5, -(self.alpha5 * self.alpha4))

    def test_parity(self):
        """Чётность однородных и смешанных элементов"""
        self.assertEqual((self.a1 * self.alpha4).parity(), Parity.ODD)
        self.assertEqual((self.alpha4 * self.alpha5).parity(), Parity.EVEN)
        self.assertEqual((self.a1 + self.alpha4).parity(), Parity.MIXED)
        self.assertEqual(self.ctx.zero.parity(), Parity.EVEN)

    def test_components(self):
        """Компоненты по нечётным словам"""
        x = self.a1 + 2 * self.alpha4 * self.alpha5 * self.a2
        self.assertEqual(x.component(), self.a1)
        self.assertEqual(x.component(('alpha4', 'alpha5')), self.a2.scale(2))
        self.assertEqual(x.odd_part(), self.ctx.zero)

    def test_split_by_keeps_basis_on_the_left(self):
        """split_by: слово из выделенных переменных стоит слева от коэффициента"""
        x = self.alpha5 * self.alpha4 * self.a1
        parts = split_by(x, ['alpha4'])
        ((bkey, coefficient),) = parts.items()
        self.assertEqual(bkey[0], (self.ctx['alpha4'].index,))
        self.assertEqual(self.alpha4 * coefficient, x)

    def test_context_mismatch(self):
        """Элементы разных контекстов не складываются"""
        other = SymbolContext('other')
        other.declare('a1', Parity.EVEN)
        with self.assertRaises(ContextMismatch):
            self.a1 + other.scalar('a1')

    def test_to_coeff(self):
        """Коэффициенты - гауссовы рациональные числа, float отвергается"""
        self.assertEqual(to_coeff(Fraction(1, 3)), to_coeff('1/3'))
        with self.assertRaises(MalformedInput):
            to_coeff(0.5)
        with self.assertRaises(MalformedInput):
            to_coeff(True)

    def test_s_expression(self):
        """Запись в s-выражение и обратное чтение"""
        x = parse('3/2*a1**2*alpha4*alpha5 - I*exp(I*a2)*beta + 7', self.ctx)
        self.assertEqual(loads(dumps(x), self.ctx), x)

    def test_substitute_checks_parity(self):
        """Образ нечётного символа обязан быть нечётным"""
        with self.assertRaises(ParityMismatch):
            substitute(self.alpha4, {'alpha4': self.a1})

    def test_substitute_is_homomorphism(self):
        """Подстановка a1 -> a1 + alpha4*alpha5 в многочлен"""
        x = self.a1 ** 2
        shifted = substitute(x, {'a1': self.a1 + self.alpha4 * self.alpha5})
        self.assertEqual(shifted, self.a1 ** 2 + 2 * self.a1 * self.alpha4 * self.alpha5)
        self.assertEqual(set_zero(shifted, ['alpha4']), self.a1 ** 2)


class LawsTest(SimpleTestCase):
    """Законы суперкоммутативной алгебры на случайных элементах"""

    def test_random_cases_follow_settings(self):
        """Число случайных примеров задаётся SUPERQUANT_RANDOM_CASES"""
        with override_settings(SUPERQUANT_RANDOM_CASES=7):
            self.assertEqual(random_cases(), 7)

    @settings(max_examples=random_cases(), deadline=None)
    @given(any_scalar, any_scalar)
    def test_graded_commutativity(self, x, y):
        sign = -1 if x.parity() == Parity.ODD and y.parity() == Parity.ODD else 1
        self.assertEqual(x * y, (y * x).scale(sign))

    @settings(max_examples=random_cases(), deadline=None)
    @given(any_scalar, any_scalar, any_scalar)
    def test_associativity_and_distributivity(self, x, y, z):
        self.assertEqual((x * y) * z, x * (y * z))
        self.assertEqual(x * (y + z), x * y + x * z)

    @settings(max_examples=random_cases(), deadline=None)
    @given(any_scalar, any_scalar)
    def test_odd_derivation(self, x, y):
        sign = -1 if x.parity() == Parity.ODD else 1
        expected = partial_odd_left(x, 'alpha5') * y + (x * partial_odd_left(y, 'alpha5')).scale(sign)
        self.assertEqual(partial_odd_left(x * y, 'alpha5'), expected)

    @settings(max_examples=random_cases(), deadline=None)
    @given(scalars(Parity.EVEN), scalars(Parity.EVEN))
    def test_exp_is_additive(self, x, y):
        a, b = x.soul(), y.soul()
        self.assertEqual(exp_nilpotent(a + b), exp_nilpotent(a) * exp_nilpotent(b))

    @settings(max_examples=random_cases(), deadline=None)
    @given(scalars(Parity.EVEN))
    def test_inverse(self, x):
        u = 3 + x.soul()
        self.assertEqual(inverse(u) * u, ctx().one)


class CalculusTest(SimpleTestCase):
    """Экспоненты, производные и интегралы"""

    def setUp(self):
        self.ctx = ctx()
        self.i = self.ctx.const(IMAG)

    def test_phase_exponential(self):
        """Производная e^{i*l0*b} по b"""
        e = exp_nilpotent(parse('I*l0*b', self.ctx))
        self.assertEqual(partial_even(e, 'b'), self.i * self.ctx.scalar('l0') * e)

    def test_nilpotent_series_terminates(self):
        """e^{alpha4*alpha5} = 1 + alpha4*alpha5"""
        x = parse('alpha4*alpha5', self.ctx)
        self.assertEqual(exp_nilpotent(x), 1 + x)

    def test_exp_rejects_constant_and_odd(self):
        """Постоянный член и нечётный аргумент экспоненты запрещены"""
        with self.assertRaises(ConstantPhaseError):
            exp_nilpotent(self.ctx.const(1) + self.ctx.scalar('a1'))
        with self.assertRaises(ParityMismatch):
            exp_nilpotent(self.ctx.scalar('alpha4'))

    def test_exp_rejects_nested_exponential(self):
        """Экспонента внутри показателя не допускается"""
        with self.assertRaises(PhaseError) as cm:
            exp_nilpotent(parse('exp(I*a1)*a2', self.ctx))
        self.assertNotIsInstance(cm.exception, ConstantPhaseError)

    def test_substitute_into_phase(self):
        """Сдвиг на константу под фазой запрещён, нильпотентный сдвиг раскладывается"""
        phase = parse('exp(I*a1)', self.ctx)
        with self.assertRaises(ConstantPhaseError):
            substitute(phase, {'a1': parse('a1 + 1', self.ctx)})
        shifted = substitute(phase, {'a1': parse('a1 + alpha4*alpha5', self.ctx)})
        self.assertEqual(shifted, phase * parse('1 + I*alpha4*alpha5', self.ctx))

    def test_inverse_of_invertible_symbol(self):
        """Обратный к y0 + alpha4*alpha5"""
        x = parse('y0 + alpha4*alpha5', self.ctx)
        self.assertEqual(inverse(x) * x, self.ctx.one)
        with self.assertRaises(NotInvertible):
            inverse(self.ctx.scalar('a1'))

    def test_left_and_right_derivatives(self):
        """Левая и правая производные различаются знаком на произведении"""
        x = parse('alpha4*alpha5', self.ctx)
        self.assertEqual(partial_odd_left(x, 'alpha5'), -self.ctx.scalar('alpha4'))
        self.assertEqual(partial_odd_right(x, 'alpha5'), self.ctx.scalar('alpha4'))

    def test_berezin_normalization(self):
        """∫ λ_n⋯λ_1 dλ_1⋯dλ_n = 1"""
        names = ['lam1', 'lam2', 'lam3', 'lam4']
        for n in range(1, 5):
            top = self.ctx.one
            for name in reversed(names[:n]):
                top = top * self.ctx.scalar(name)
            self.assertEqual(berezin_multiple(top, names[:n]), self.ctx.one)
        self.assertEqual(berezin(self.ctx.scalar('a1'), 'lam1'), self.ctx.zero)

    def test_integrate_even(self):
        """Первообразная многочлена и запрет на символ внутри фазы"""
        x = parse('a1**2*alpha4', self.ctx)
        self.assertEqual(partial_even(integrate_even(x, 'a1'), 'a1'), x)
        with self.assertRaises(NonIntegrablePhase):
            integrate_even(exp_nilpotent(parse('I*a1', self.ctx)), 'a1')
