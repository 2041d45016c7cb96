"""Тесты группы 4|4: закон умножения, скобки, Ad, Coad и фундаментальные поля"""
from django.test import SimpleTestCase

from superalgebra.exceptions import MalformedInput, ParityMismatch
from superalgebra.expressions import parse
from superalgebra.liegroup import EVEN_DUAL, standard_group
from superalgebra.symkernel import to_coeff


class GroupLawTest(SimpleTestCase):
    """Тесты закона умножения"""

    def setUp(self):
        self.group = standard_group()
        self.ctx = self.group.ctx
        self.g, self.h, self.k = (self.group.point(i) for i in range(3))

    def test_associativity(self):
        left = self.group.multiply(self.group.multiply(self.g, self.h), self.k)
        right = self.group.multiply(self.g, self.group.multiply(self.h, self.k))
        self.assertTrue(self.group.points_equal(left, right))

    def test_inverse(self):
        product = self.group.multiply(self.g, self.group.inverse(self.g))
        self.assertTrue(self.group.points_equal(product, self.group.identity()))

    def test_central_coordinate(self):
        """b-координата произведения: b̂ + b + ½(â²a¹ − â¹a²) + ..."""
        product = self.group.multiply(self.h, self.g)
        expected = parse('bh + b + 1/2*(ah2*a1 - ah1*a2) + 1/2*(alphah6*alpha6 - alphah5*alpha5)', self.ctx)
        self.assertEqual(product[3], expected)

    def test_point_from_checks_parity(self):
        """Нечётная координата не может быть чётным числом"""
        with self.assertRaises(ParityMismatch):
            self.group.point_from({'e4': 1})
        point = self.group.point_from({'a1': 2})
        self.assertEqual(point[0], self.ctx.const(2))


class AlgebraTest(SimpleTestCase):
    """Тесты алгебры Ли и двойственного пространства"""

    def setUp(self):
        self.group = standard_group()
        self.ctx = self.group.ctx

    def test_structure_constants(self):
        """[e1, e2] = −k0, [e5, e5] = k0, [e4, e1] = k1"""
        table = self.group.structure_constants()
        self.assertEqual(table[('e1', 'e2')], {'k0': to_coeff(-1)})
        self.assertEqual(table[('e5', 'e5')], {'k0': to_coeff(1)})
        self.assertEqual(table[('e4', 'e1')], {'k1': to_coeff(1)})
        self.assertNotIn(('e1', 'e3'), table)

    def test_left_invariant_fields(self):
        fields = self.group.left_invariant_fields()
        for name, field in fields.items():
            self.assertTrue(self.group.is_left_invariant(field), name)

    def test_adjoint_at_identity(self):
        """Ad(e) = id"""
        element = self.group.algebra_element()
        self.assertEqual(self.group.adjoint(self.group.identity(), element), element)

    def test_coadjoint_fixes_centre(self):
        """y0 и ȳ1 неподвижны при Coad"""
        moved = self.group.coadjoint(self.group.point(), self.group.dual_point())
        self.assertEqual(moved['y0'], self.ctx.scalar('y0'))
        self.assertEqual(moved['yb1'], self.ctx.scalar('yb1'))
        self.assertEqual(moved['x2'], parse('x2 + y0*a1', self.ctx))

    def test_fundamental_fields_form_a_homomorphism(self):
        """[X_V, X_W] = X_[V,W]"""
        v, w = self.group.algebra_element(0), self.group.algebra_element(1)
        bracket = self.group.fundamental_field_dual(v).bracket(self.group.fundamental_field_dual(w))
        self.assertEqual(bracket, self.group.fundamental_field_dual(self.group.bracket_vectors(v, w)))

    def test_base_point(self):
        """Базовая точка допускает только чётные координаты"""
        point = self.group.base_point({'y0': 1})
        self.assertTrue(set(EVEN_DUAL) <= set(point))
        with self.assertRaises(MalformedInput):
            self.group.base_point({'xi4': 1})
