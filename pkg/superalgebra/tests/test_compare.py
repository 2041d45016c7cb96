"""Тесты сравнения Фурье-мод с представлениями орбит"""
from django.test import SimpleTestCase

from superalgebra.certificates import all_ok
from superalgebra.compare import (
    compare, comparison_report, comparison_rows, heisenberg_checks, heisenberg_multiplicity,
    mode_formula, mode_spec, printed_sign_mutant, restricted_law,
)
from superalgebra.exceptions import MalformedInput
from superalgebra.expressions import parse
from superalgebra.liegroup import standard_group
from superalgebra.regrep import FourierModeSpec


class CompareRowsTest(SimpleTestCase):
    """Строки сравнения после отождествления меток"""

    def test_rows(self):
        self.assertEqual(comparison_rows(),
                         [('point', None), ('odd22', None), ('even22', 1), ('even22', -1), ('mixed33', None)])

    def test_identified_formulas_agree(self):
        for row, eps in comparison_rows():
            with self.subTest(row=row, eps=eps):
                certificate = compare(row, eps)
                self.assertTrue(certificate.passed, certificate.witness)

    def test_printed_signs_fail(self):
        """Знаки λ ↦ −x̄°κ не дают совпадения"""
        certificate = printed_sign_mutant('mixed33')
        self.assertFalse(certificate.passed)
        self.assertTrue(certificate.ok)

    def test_row_validation(self):
        with self.assertRaises(MalformedInput):
            compare('unknown')
        with self.assertRaises(MalformedInput):
            compare('even22')

    def test_mode_formula_variables(self):
        self.assertEqual(set(mode_formula(mode_spec('even22', eps=-1)).shift), {'a1', 'xi'})
        self.assertEqual(set(mode_formula(mode_spec('odd22')).shift), {'a1', 'alpha5'})

    def test_report(self):
        rows = [entry['row'] for entry in comparison_report()]
        self.assertIn('even22[eps=-1]', rows)


class HeisenbergTest(SimpleTestCase):
    """Ограничение на подгруппу Гейзенберга"""

    def setUp(self):
        self.ctx = standard_group().ctx

    def test_multiplicities(self):
        """Четыре копии на моде, две на V±, ни одной при ℓ₀ = 0"""
        character, copies = heisenberg_multiplicity(FourierModeSpec(ctx=self.ctx))
        self.assertEqual(copies, 4)
        self.assertEqual(character, parse('exp(-I*l0*bh)', self.ctx))
        self.assertEqual(heisenberg_multiplicity(FourierModeSpec('pm', lambda0=0, ctx=self.ctx))[1], 2)
        self.assertEqual(heisenberg_multiplicity(FourierModeSpec(l0=0, ctx=self.ctx)), (self.ctx.one, 0))

    def test_summands_follow_odd_words(self):
        """Каждое нечётное слово моды даёт своё инвариантное слагаемое"""
        specs = {
            4: FourierModeSpec(ctx=self.ctx),
            2: FourierModeSpec('pm', lambda0=0, ctx=self.ctx),
            0: FourierModeSpec('lambda6', l0=0, lambda6='lambda6', ctx=self.ctx),
        }
        for copies, spec in specs.items():
            with self.subTest(tier=spec.tier):
                odd = [name for name in mode_formula(spec).shift if self.ctx[name].is_odd]
                self.assertEqual(heisenberg_multiplicity(spec)[1], copies)
                if copies:
                    self.assertEqual(copies, 2 ** len(odd))

    def test_restricted_law(self):
        law = restricted_law()
        self.assertEqual(law['a2'], parse('ah2 + a2', self.ctx))

    def test_checks(self):
        certificates = heisenberg_checks()
        self.assertTrue(all_ok(certificates), [c.witness for c in certificates if not c.ok])
