"""Тесты дифференциальных форм, полей и линейного решателя"""
from django.test import SimpleTestCase

from superalgebra.conventions import D_RIGHT, STANDARD, all_combinations
from superalgebra.exceptions import ChartMismatch, Inconsistent, NonUnitPivot, Underdetermined
from superalgebra.expressions import parse, parse_form
from superalgebra.liegroup import standard_group
from superalgebra.supercalc import (
    Chart, contract, contract_seq, d, is_nondegenerate, lie_derivative, linear_equations, pullback,
    solve_linear,
)
from superalgebra.suites import conventions_certificates
from superalgebra.symkernel import partial_even, substitute


class FormsTest(SimpleTestCase):
    """Тесты внешней алгебры форм"""

    def setUp(self):
        self.ctx = standard_group().ctx
        self.chart = Chart('test', self.ctx, ['a1', 'a2', 'alpha4', 'alpha5'])
        self.f = parse('a1*alpha4*alpha5 + a2**2 + a1*a2*alpha4', self.ctx)

    def test_even_differential_squares_to_zero(self):
        """dx∧dx = 0, dξ∧dξ ≠ 0"""
        da1 = self.chart.differential('a1')
        dalpha4 = self.chart.differential('alpha4')
        self.assertFalse(da1 * da1)
        self.assertTrue(dalpha4 * dalpha4)

    def test_d_squared(self):
        """d∘d = 0 при всех соглашениях"""
        for conventions in all_combinations():
            df = d(self.chart.function(self.f), conventions)
            self.assertFalse(d(df, conventions), conventions.label)

    def test_contract_differential(self):
        """ι(∂a1) df = ∂f/∂a1"""
        df = d(self.chart.function(self.f))
        value = contract(self.chart.partial_field('a1'), df).as_function()
        self.assertEqual(value, partial_even(self.f, 'a1'))

    def test_cartan_formula_on_exact_form(self):
        """L_X df = d(ι(X) df) для чётного поля"""
        X = self.chart.field({'a1': self.ctx.scalar('a2'), 'alpha4': self.ctx.scalar('alpha5')})
        df = d(self.chart.function(self.f))
        self.assertEqual(lie_derivative(X, df), d(contract(X, df)))

    def test_contract_sequence(self):
        """ι(∂a1, ∂a2)(da1 da2) = ±1"""
        omega = parse_form('da1*da2', self.chart)
        value = contract_seq([self.chart.partial_field('a1'), self.chart.partial_field('a2')], omega)
        self.assertIn(value.as_function(), (self.ctx.one, -self.ctx.one))

    def test_chart_mismatch(self):
        """Поле с координатой вне карты формы"""
        other = Chart('other', self.ctx, ['a3'])
        with self.assertRaises(ChartMismatch):
            contract(other.partial_field('a3'), self.chart.differential('a1'))

    def test_nondegeneracy(self):
        """da1 da2 + dα4 dα4 невырождена, da1 da2 на карте с α4 - нет"""
        chart = Chart('small', self.ctx, ['a1', 'a2', 'alpha4'])
        self.assertTrue(is_nondegenerate(parse_form('da1*da2 + dalpha4*dalpha4', chart)))
        self.assertFalse(is_nondegenerate(parse_form('da1*da2', chart)))

    def test_standard_conventions(self):
        """Восемь комбинаций переключателей, стандартная среди них"""
        combinations = all_combinations()
        self.assertEqual(len(combinations), 8)
        self.assertIn(STANDARD, combinations)


class RightDifferentialTest(SimpleTestCase):
    """d справа отличается от стандартного знаком (−1)^{deg}"""

    def setUp(self):
        self.ctx = standard_group().ctx
        self.chart = Chart('test', self.ctx, ['a1', 'a2', 'alpha4', 'alpha5'])
        self.right = STANDARD.with_(d_placement=D_RIGHT)

    def test_functions(self):
        f = self.chart.function(parse('a1*alpha4*alpha5 + a2*alpha5 + a1**2', self.ctx))
        self.assertEqual(d(f, self.right), d(f))

    def test_one_form(self):
        omega = parse_form('a1*alpha4*dalpha5 + alpha5*da2 + a2*dalpha4', self.chart)
        self.assertEqual(d(omega, self.right), -d(omega))

    def test_two_form(self):
        omega = parse_form('alpha4*da1*dalpha5 + a1*a2*dalpha4*dalpha4', self.chart)
        self.assertEqual(d(omega, self.right), d(omega))


class PullbackTest(SimpleTestCase):
    """Обратный образ при отображении, перемешивающем чётные и нечётные координаты"""

    def setUp(self):
        self.ctx = standard_group().ctx
        self.source = Chart('source', self.ctx, ['a1', 'a2', 'alpha4', 'alpha5'])
        self.target = Chart('target', self.ctx, ['a3', 'b', 'alpha6', 'beta'])
        self.mapping = self.parse_map({
            'a3': 'a1 + alpha4*alpha5',
            'b': 'a1*a2 + a2*alpha4*alpha5',
            'alpha6': 'alpha4 + a1*alpha5',
            'beta': 'a2*alpha5 + a1*alpha4',
        })
        self.forms = [
            parse_form('a3*b*alpha6', self.target),
            parse_form('a3*b*dalpha6 + beta*da3 + alpha6*beta*db', self.target),
            parse_form('alpha6*da3*dbeta + a3*dalpha6*dalpha6', self.target),
        ]

    def parse_map(self, texts):
        return {name: parse(text, self.ctx) for name, text in texts.items()}

    def test_commutes_with_d(self):
        for conventions in all_combinations():
            for omega in self.forms:
                with self.subTest(conventions=conventions.label, omega=omega):
                    self.assertEqual(
                        pullback(self.mapping, d(omega, conventions), self.source, conventions),
                        d(pullback(self.mapping, omega, self.source, conventions), conventions))

    def test_commutes_with_wedge(self):
        alpha, beta, gamma = self.forms
        for conventions in all_combinations():
            with self.subTest(conventions=conventions.label):
                pulled = [pullback(self.mapping, f, self.source, conventions) for f in self.forms]
                self.assertEqual(pullback(self.mapping, beta * gamma, self.source, conventions),
                                 pulled[1] * pulled[2])
                self.assertEqual(pullback(self.mapping, alpha * beta, self.source, conventions),
                                 pulled[0] * pulled[1])

    def test_functorial(self):
        """(ψ∘φ)* = φ*∘ψ* для двух отображений карты в себя"""
        inner = self.parse_map({
            'a1': 'a1 + a2*alpha4*alpha5',
            'a2': 'a2',
            'alpha4': 'alpha4 + a2*alpha5',
            'alpha5': 'alpha5',
        })
        outer = self.parse_map({
            'a1': 'a1*a2 + alpha4*alpha5',
            'a2': 'a2 + a1',
            'alpha4': 'a1*alpha5',
            'alpha5': 'alpha4 + alpha5',
        })
        composed = {name: substitute(image, inner) for name, image in outer.items()}
        omega = parse_form('a1*alpha4*dalpha5 + a2*da1*dalpha4 + alpha5*dalpha4*dalpha4', self.source)
        for conventions in all_combinations():
            with self.subTest(conventions=conventions.label):
                twice = pullback(inner, pullback(outer, omega, self.source, conventions), self.source,
                                 conventions)
                self.assertEqual(twice, pullback(composed, omega, self.source, conventions))


class ConventionsLedgerTest(SimpleTestCase):
    """Из восьми комбинаций соглашений проверки проходит только стандартная"""

    def test_only_standard_passes(self):
        (certificate,) = conventions_certificates()
        self.assertTrue(certificate.passed, certificate.witness)
        self.assertEqual(certificate.detail, STANDARD.label)


class SolverTest(SimpleTestCase):
    """Тесты исключения Гаусса над кольцом"""

    def setUp(self):
        self.ctx = standard_group().ctx
        self.unknowns = ['c0', 'c1']

    def system(self, *texts):
        return linear_equations([parse(t, self.ctx) for t in texts], self.unknowns)

    def test_unique_solution(self):
        """c0 + a1*c1 = 1, c1 = 2"""
        solution = solve_linear(self.system('c0 + a1*c1 - 1', 'c1 - 2'), self.unknowns)
        self.assertEqual(solution[self.ctx['c0']], parse('1 - 2*a1', self.ctx))
        self.assertEqual(solution[self.ctx['c1']], self.ctx.const(2))

    def test_underdetermined(self):
        """Свободная неизвестная попадает в отчёт"""
        with self.assertRaises(Underdetermined) as cm:
            solve_linear(self.system('c0 + c1'), self.unknowns)
        self.assertEqual(cm.exception.free, (self.ctx['c1'],))

    def test_inconsistent(self):
        with self.assertRaises(Inconsistent):
            solve_linear(self.system('c0 - 1', 'c0 - 2'), ['c0'])

    def test_non_unit_pivot(self):
        """a1 необратим"""
        with self.assertRaises(NonUnitPivot):
            solve_linear(self.system('a1*c0 - 1'), ['c0'])
