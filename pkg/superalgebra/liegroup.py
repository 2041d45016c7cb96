"""Гейзенбергоподобная супергруппа, построенная по градуированной кососимметричной форме Ω.

Закон умножения: ĝ·g = ĝ + g + ½[ĝ, g], где скобка задаётся Ω и лежит в центре.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache

from .conventions import STANDARD
from .exceptions import MalformedInput, ParityMismatch
from .loaders import group_fixture, pool, standard_context
from .supercalc import Chart, contract, linear_equations, solve_linear
from .symkernel import QQ, Parity, partial, partial_even, substitute, to_coeff

logger = logging.getLogger(__name__)

HALF = QQ(1, 2)

DUAL_ORDER = ('x1', 'x2', 'x3', 'xb4', 'xb5', 'xb6', 'y0', 'yb1',
              'xib1', 'xib2', 'xib3', 'xi4', 'xi5', 'xi6', 'etab0', 'eta1')
EVEN_DUAL = DUAL_ORDER[:8]
ODD_DUAL = DUAL_ORDER[8:]


@dataclass(frozen=True)
class BasisVector:
    name: str
    parity: Parity
    copies: tuple
    algebra: tuple
    dual_even: str
    dual_odd: str
    dual_sign: int
    central: bool = False


class OmegaSpec:
    """Базис E ⊕ C и значения Ω(e_i, e_j) ∈ C"""

    def __init__(self, name, basis, omega):
        self.name = name
        self.basis = tuple(basis)
        self.by_name = {b.name: b for b in self.basis}
        self.omega = {}
        for (left, right), value in omega.items():
            self._set(left, right, value)

    def _set(self, left, right, value):
        bl, br = self.by_name[left], self.by_name[right]
        for k, c in value.items():
            if self.by_name[k].parity != (bl.parity + br.parity) % 2:
                raise ParityMismatch(f"Omega({left},{right}) has a {k} component of wrong parity")
        self.omega[(left, right)] = dict(value)
        mirror_sign = 1 if bl.parity * br.parity else -1
        mirrored = {k: c * mirror_sign for k, c in value.items()}
        existing = self.omega.get((right, left))
        if left != right and existing is None:
            self.omega[(right, left)] = mirrored
        elif existing is not None and existing != mirrored:
            raise MalformedInput(f"Omega({left},{right}) is not graded skew-symmetric")

    @classmethod
    def from_fixture(cls, data):
        basis = []
        for entry in data['basis']:
            even, odd, sign = entry['dual']
            basis.append(BasisVector(
                entry['name'], Parity.parse(entry['parity']), tuple(entry['copies']),
                tuple(entry['algebra']), even, odd, int(sign), bool(entry.get('central', False))))
        omega = {}
        for item in data.get('omega', []):
            omega[(item['left'], item['right'])] = {
                k: to_coeff(v) for k, v in item['value'].items()}
        return cls(data.get('name', 'group'), basis, omega)

    def value(self, left, right):
        return self.omega.get((left, right), {})

    def is_graded_skew(self):
        for (left, right), value in self.omega.items():
            bl, br = self.by_name[left], self.by_name[right]
            sign = 1 if bl.parity * br.parity else -1
            mirror = self.omega.get((right, left), {})
            if {k: c * sign for k, c in value.items()} != mirror:
                return False
        return True


@dataclass(frozen=True)
class GroupPoint:
    """Точка группы: координаты в порядке слотов базиса"""
    coords: tuple

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __str__(self):
        return '(' + ', '.join(str(c) for c in self.coords) + ')'


class LieSuperGroup:
    """Группа, алгебра Ли, Ad/Coad и фундаментальные поля"""

    def __init__(self, spec, ctx):
        self.spec = spec
        self.ctx = ctx
        self.basis = spec.basis
        self.names = tuple(b.name for b in self.basis)
        self.chart = Chart(f"{spec.name}-group", ctx, [b.copies[0] for b in self.basis])
        self.dual_chart = Chart(f"{spec.name}-dual", ctx, DUAL_ORDER)

    def __repr__(self):
        return f"LieSuperGroup({self.spec.name!r})"

    # --- точки и элементы алгебры -------------------------------------

    def point(self, copy=0):
        return GroupPoint(tuple(self.ctx.scalar(b.copies[copy]) for b in self.basis))

    def coordinate_symbols(self, copy=0):
        return [self.ctx[b.copies[copy]] for b in self.basis]

    def identity(self):
        return GroupPoint(tuple(self.ctx.zero for _ in self.basis))

    def point_from(self, values):
        """Точка из словаря {имя базиса или координаты: значение}"""
        coords = []
        for b in self.basis:
            value = values.get(b.name, values.get(b.copies[0], 0))
            value = self.ctx.coerce(value)
            if value and value.parity() != b.parity:
                raise ParityMismatch(f"Coordinate of {b.name} must be {b.parity.name}")
            coords.append(value)
        return GroupPoint(tuple(coords))

    def algebra_element(self, copy=0):
        return {b.name: self.ctx.scalar(b.algebra[copy]) for b in self.basis}

    def basis_element(self, name, coefficient=1):
        return {b.name: (self.ctx.coerce(coefficient) if b.name == name else self.ctx.zero)
                for b in self.basis}

    def exp(self, element):
        """Экспоненциальные координаты совпадают с групповыми"""
        return GroupPoint(tuple(self.ctx.coerce(element.get(b.name, 0)) for b in self.basis))

    def log(self, point):
        return {b.name: point[i] for i, b in enumerate(self.basis)}

    # --- закон группы ------------------------------------------------

    def bracket_vectors(self, left, right):
        """[V, W] = Σ v^i w^j (−1)^{|e_i||e_j|} Ω(e_i, e_j)"""
        result = {b.name: self.ctx.zero for b in self.basis}
        for (li, ri), value in self.spec.omega.items():
            bl, br = self.spec.by_name[li], self.spec.by_name[ri]
            vi = left.get(li)
            wj = right.get(ri)
            if not vi or not wj:
                continue
            product = vi * wj
            if bl.parity * br.parity:
                product = -product
            for k, c in value.items():
                result[k] = result[k] + product.scale(c)
        return result

    def multiply(self, left, right):
        """ĝ·g"""
        correction = self.bracket_vectors(self.log(left), self.log(right))
        return GroupPoint(tuple(
            left[i] + right[i] + correction[b.name].scale(HALF)
            for i, b in enumerate(self.basis)))

    def inverse(self, point):
        return GroupPoint(tuple(-c for c in point))

    def triple_product(self, g, h):
        """g·h·g⁻¹"""
        return self.multiply(self.multiply(g, h), self.inverse(g))

    def substitute_point(self, point, mapping):
        return GroupPoint(tuple(substitute(c, mapping) for c in point))

    def translation_map(self, point, copy=0):
        """Подстановка координат копии copy значениями точки"""
        return {b.copies[copy]: point[i] for i, b in enumerate(self.basis)}

    def points_equal(self, p, q):
        return all(a == b for a, b in zip(p, q))

    # --- левоинвариантные поля и формы -----------------------------------

    def _scaled(self, element):
        s = self.ctx.scalar('s')
        return GroupPoint(tuple(s * self.ctx.coerce(element.get(b.name, 0)) for b in self.basis))

    def _derive_at_zero(self, value):
        s = self.ctx['s']
        return substitute(partial_even(value, s), {s: self.ctx.zero})

    def left_invariant_field(self, element):
        """X_V|_g = ∂_s (g·sV)|_{s=0}"""
        moved = self.multiply(self.point(), self._scaled(element))
        return self.chart.field({
            b.copies[0]: self._derive_at_zero(moved[i]) for i, b in enumerate(self.basis)})

    @lru_cache(maxsize=None)
    def left_invariant_fields(self):
        """Поля базиса: левая производная X_V по коэффициенту v^i"""
        generic = self.left_invariant_field(self.algebra_element())
        fields = {}
        for b in self.basis:
            v = self.ctx[b.algebra[0]]
            fields[b.name] = self.chart.field({
                z: partial(c, v) for z, c in generic.coeffs.items()})
        return fields

    def is_left_invariant(self, field):
        """X(f∘L_ĝ) = (Xf)∘L_ĝ для координатных функций f"""
        shift = self.multiply(self.point(1), self.point())
        mapping = self.translation_map(shift)
        for i, b in enumerate(self.basis):
            lhs = field.apply(shift[i])
            rhs = substitute(field.coefficient(b.copies[0]), mapping)
            if lhs != rhs:
                return False
        return True

    @lru_cache(maxsize=None)
    def left_invariant_forms(self):
        """Кореперы θ^j, двойственные полям: ι(X_i)θ^j = δ_ij"""
        fields = self.left_invariant_fields()
        forms = {}
        for target in self.basis:
            even = iter(pool(self.ctx, Parity.EVEN, len(self.basis)))
            odd = iter(pool(self.ctx, Parity.ODD, len(self.basis)))
            unknowns = []
            theta = self.chart.zero_form()
            for z in self.chart.coordinates:
                parity = (int(target.parity) + int(z.parity)) % 2
                u = next(odd) if parity else next(even)
                unknowns.append(next(iter(u.free_symbols())))
                theta = theta + self.chart.function(u) * self.chart.differential(z)
            expressions = []
            for b in self.basis:
                value = contract(fields[b.name], theta).as_function()
                expressions.append(value - (1 if b.name == target.name else 0))
            solution = solve_linear(linear_equations(expressions, unknowns), unknowns)
            forms[target.name] = theta.substitute_coefficients(solution)
        return forms

    @lru_cache(maxsize=None)
    def structure_constants(self):
        """[X_i, X_j] в единице: таблица {(i, j): {k: c}}"""
        fields = self.left_invariant_fields()
        at_identity = {z: self.ctx.zero for z in self.chart.coordinates}
        table = {}
        for bi in self.basis:
            for bj in self.basis:
                bracket = fields[bi.name].bracket(fields[bj.name])
                value = {}
                for k, bk in enumerate(self.basis):
                    c = substitute(bracket.coefficient(bk.copies[0]), at_identity)
                    if c:
                        value[bk.name] = c.constant_term()
                if value:
                    table[(bi.name, bj.name)] = value
        return table

    # --- Ad и Coad ------------------------------------------------------

    def adjoint(self, g, element):
        """Ad(g)V = ∂_s (g·sV·g⁻¹)|_{s=0}"""
        moved = self.triple_product(g, self._scaled(element))
        return {b.name: self._derive_at_zero(moved[i]) for i, b in enumerate(self.basis)}

    def dual_point(self):
        return {name: self.ctx.scalar(name) for name in DUAL_ORDER}

    def base_point(self, values):
        """Точка двойственного с рациональными чётными координатами и нулевыми нечётными"""
        point = {name: self.ctx.zero for name in DUAL_ORDER}
        for name, value in values.items():
            if name not in EVEN_DUAL:
                raise MalformedInput(f"Unknown even dual coordinate {name!r}")
            point[name] = self.ctx.const(value)
        return point

    def pairing(self, element, mu):
        """⟨V, μ⟩ = Σ v^i (μ_i + sign_i·μ̃_i)"""
        total = self.ctx.zero
        for b in self.basis:
            v = self.ctx.coerce(element.get(b.name, 0))
            if not v:
                continue
            value = mu[b.dual_even] + (mu[b.dual_odd] if b.dual_sign > 0 else -mu[b.dual_odd])
            total = total + v * value
        return total

    def coadjoint(self, g, mu):
        """Coad(g)μ из ⟨V, Coad(g)μ⟩ = ⟨Ad(g⁻¹)V, μ⟩"""
        generic = self.algebra_element(copy=1)
        paired = self.pairing(self.adjoint(self.inverse(g), generic), mu)
        result = {}
        for b in self.basis:
            component = partial(paired, b.algebra[1])
            result[b.dual_even] = component.even_part()
            odd = component.odd_part()
            result[b.dual_odd] = odd if b.dual_sign > 0 else -odd
        return result

    def fundamental_field_dual(self, element, conventions=STANDARD):
        """X_V = sign·∂_s Coad(exp sV)μ |_{s=0} на двойственном пространстве"""
        moved = self.coadjoint(self._scaled(element), self.dual_point())
        coeffs = {}
        for name in DUAL_ORDER:
            c = self._derive_at_zero(moved[name])
            coeffs[name] = -c if conventions.fundamental_sign < 0 else c
        return self.dual_chart.field(coeffs)


@lru_cache(maxsize=None)
def standard_group():
    ctx = standard_context()
    spec = OmegaSpec.from_fixture(group_fixture()['group'])
    logger.debug(f"Built group {spec.name} with {len(spec.basis)} basis vectors")
    return LieSuperGroup(spec, ctx)
