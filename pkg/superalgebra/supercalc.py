"""Дифференциальное исчисление на суперкартах.

Формы хранятся как ``{DiffKey: коэффициент}``, коэффициент стоит слева
от дифференциального монома. ``DiffKey`` - отсортированный по позициям
карты кортеж ``(позиция, кратность)``. Правило знаков бистепенное:
αβ = (-1)^{deg α deg β + par α par β} βα, поэтому dx∧dx = 0, а dξ∧dξ ≠ 0.
"""
import logging
from functools import lru_cache

from .conventions import CONTRACTION_GRADED, D_LEFT, STANDARD
from .exceptions import (
    ChartMismatch, Inconsistent, MalformedInput, NonUnitPivot, ParityMismatch,
    Underdetermined,
)
from .symkernel import (
    Parity, SuperScalar, berezin, inverse, partial, partial_even, partial_odd_right, substitute,
)

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _merge_diff(k1, k2, parities):
    """Знак и ключ произведения дифференциальных мономов Δ₁Δ₂"""
    if not k1:
        return 1, k2
    if not k2:
        return 1, k1
    exponent = 0
    for u, mu in k1:
        for w, mw in k2:
            if u > w:
                exponent += mu * mw * (1 + parities[u] * parities[w])
    mults = dict(k1)
    for w, mw in k2:
        mults[w] = mults.get(w, 0) + mw
    for pos, m in mults.items():
        if m > 1 and not parities[pos]:
            return 0, ()
    return (-1 if exponent % 2 else 1), tuple(sorted(mults.items()))


def _key_parity(key, parities):
    return sum(m * parities[pos] for pos, m in key) % 2


def _key_degree(key):
    return sum(m for _, m in key)


def _remove_one(key, pos):
    result = []
    for p, m in key:
        if p == pos:
            if m > 1:
                result.append((p, m - 1))
        else:
            result.append((p, m))
    return tuple(result)


class Chart:
    """Глобальная карта: упорядоченный список координат смешанной чётности"""

    def __init__(self, name, ctx, coordinates):
        self.name = name
        self.ctx = ctx
        self.coordinates = tuple(ctx[z] for z in coordinates)
        if len(set(self.coordinates)) != len(self.coordinates):
            raise MalformedInput(f"Chart {name} has repeated coordinates")
        self.parities = tuple(int(z.parity) for z in self.coordinates)
        self._positions = {z: i for i, z in enumerate(self.coordinates)}

    def __repr__(self):
        return f"Chart({self.name!r}, {[z.name for z in self.coordinates]})"

    def __contains__(self, z):
        try:
            return self.ctx[z] in self._positions
        except MalformedInput:
            return False

    @property
    def dimension(self):
        odd = sum(self.parities)
        return len(self.coordinates) - odd, odd

    def position(self, z):
        z = self.ctx[z]
        try:
            return self._positions[z]
        except KeyError:
            raise ChartMismatch(f"{z.name} is not a coordinate of chart {self.name}")

    def extend(self, name, extra):
        return Chart(name, self.ctx, [z.name for z in self.coordinates] + list(extra))

    def function(self, f):
        return SuperForm(self, {(): self.ctx.coerce(f)})

    def differential(self, z):
        return SuperForm(self, {((self.position(z), 1),): self.ctx.one})

    def zero_form(self):
        return SuperForm(self, {})

    def partial_field(self, z):
        return SuperVectorField(self, {self.ctx[z]: self.ctx.one})

    def field(self, coeffs):
        return SuperVectorField(self, coeffs)

    def zero_field(self):
        return SuperVectorField(self, {})


class SuperForm:
    """Дифференциальная форма на карте"""
    __slots__ = ('chart', 'terms')

    def __init__(self, chart, terms):
        self.chart = chart
        self.terms = {k: c for k, c in terms.items() if c}

    def _coerce(self, other):
        if isinstance(other, SuperForm):
            if other.chart is not self.chart:
                raise ChartMismatch(f"Charts differ: {self.chart.name} and {other.chart.name}")
            return other
        return self.chart.function(other)

    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            acc[k] = acc[k] + c if k in acc else c
        return SuperForm(self.chart, acc)

    __radd__ = __add__

    def __neg__(self):
        return SuperForm(self.chart, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        """Внешнее произведение"""
        other = self._coerce(other)
        parities = self.chart.parities
        acc = {}
        for k1, a in self.terms.items():
            twist = _key_parity(k1, parities)
            for k2, b in other.terms.items():
                sign, key = _merge_diff(k1, k2, parities)
                if not sign:
                    continue
                c = a * b.twist(twist)
                if sign < 0:
                    c = -c
                acc[key] = acc[key] + c if key in acc else c
        return SuperForm(self.chart, acc)

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __pow__(self, n):
        result = self.chart.function(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, SuperForm):
            try:
                other = self._coerce(other)
            except Exception:
                return NotImplemented
        return self.chart is other.chart and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return sorted({_key_degree(k) for k in self.terms})

    def homogeneous(self, degree):
        return SuperForm(self.chart, {k: c for k, c in self.terms.items() if _key_degree(k) == degree})

    def part(self, parity):
        """Часть заданной полной чётности (коэффициент плюс дифференциалы)"""
        parities = self.chart.parities
        return SuperForm(self.chart, {
            k: c.part((parity + _key_parity(k, parities)) % 2) for k, c in self.terms.items()})

    def even_part(self):
        return self.part(0)

    def odd_part(self):
        return self.part(1)

    def as_function(self):
        if any(k for k in self.terms):
            raise MalformedInput("Form of positive degree used as a function")
        return self.terms.get((), self.chart.ctx.zero)

    def coefficient(self, *coordinates):
        """Коэффициент при мономе dz₁⋯dz_k в нормальном порядке"""
        key = ()
        sign = 1
        for z in coordinates:
            s, key = _merge_diff(key, ((self.chart.position(z), 1),), self.chart.parities)
            sign *= s
        if not sign:
            raise MalformedInput(f"Differential monomial {coordinates} vanishes identically")
        c = self.terms.get(key, self.chart.ctx.zero)
        return c if sign > 0 else -c

    def map_coefficients(self, fn):
        return SuperForm(self.chart, {k: fn(c) for k, c in self.terms.items()})

    def substitute_coefficients(self, mapping):
        return self.map_coefficients(lambda c: substitute(c, mapping))

    def extend_to(self, chart):
        """Перенос формы на карту, продолжающую текущую с сохранением порядка"""
        if chart is self.chart:
            return self
        positions = [chart.position(z) for z in self.chart.coordinates]
        if positions != sorted(positions):
            raise ChartMismatch(f"Chart {chart.name} does not preserve the order of {self.chart.name}")
        return SuperForm(chart, {
            tuple((positions[p], m) for p, m in k): c for k, c in self.terms.items()})

    def restrict_to(self, chart):
        """Обратный перенос: все дифференциалы должны лежать в меньшей карте"""
        if chart is self.chart:
            return self
        back = {}
        for i, z in enumerate(self.chart.coordinates):
            if z in chart:
                back[i] = chart.position(z)
        terms = {}
        for k, c in self.terms.items():
            if any(p not in back for p, _ in k):
                raise ChartMismatch(f"Form uses differentials outside chart {chart.name}")
            terms[tuple((back[p], m) for p, m in k)] = c
        return SuperForm(chart, terms)

    def __str__(self):
        from .expressions import to_text
        if not self.terms:
            return '0'
        parts = []
        for k, c in sorted(self.terms.items()):
            diffs = '*'.join(
                f"d{self.chart.coordinates[p].name}" + (f"^{m}" if m > 1 else '') for p, m in k)
            parts.append(f"({to_text(c)})" + (f"*{diffs}" if diffs else ''))
        return ' + '.join(parts)

    def latex(self):
        from .expressions import latex
        if not self.terms:
            return '0'
        parts = []
        for k, c in sorted(self.terms.items()):
            diffs = ' \\wedge '.join(
                f"d{self.chart.coordinates[p].latex or self.chart.coordinates[p].name}"
                + (f"^{{{m}}}" if m > 1 else '') for p, m in k)
            parts.append(f"\\left({latex(c)}\\right) {diffs}".strip())
        return ' + '.join(parts)

    def __repr__(self):
        return f"SuperForm({self})"


class SuperVectorField:
    """Векторное поле X = Σ coeff(z)·∂/∂z с левыми производными"""
    __slots__ = ('chart', 'coeffs')

    def __init__(self, chart, coeffs):
        self.chart = chart
        result = {}
        for z, c in coeffs.items():
            z = chart.coordinates[chart.position(z)]
            c = chart.ctx.coerce(c)
            if c:
                result[z] = c
        self.coeffs = result

    def coefficient(self, z):
        return self.coeffs.get(self.chart.ctx[z], self.chart.ctx.zero)

    def apply(self, f):
        total = self.chart.ctx.zero
        for z, c in self.coeffs.items():
            total = total + c * partial(f, z)
        return total

    __call__ = apply

    def part(self, parity):
        return SuperVectorField(self.chart, {
            z: c.part((parity + int(z.parity)) % 2) for z, c in self.coeffs.items()})

    def parity(self):
        found = {p for p in (0, 1) if self.part(p)}
        if not found or found == {0}:
            return Parity.EVEN
        if found == {1}:
            return Parity.ODD
        return Parity.MIXED

    def homogeneous_parts(self):
        return [(p, self.part(p)) for p in (0, 1) if self.part(p)]

    def _coerce(self, other):
        if other.chart is not self.chart:
            raise ChartMismatch(f"Charts differ: {self.chart.name} and {other.chart.name}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self.coeffs)
        for z, c in other.coeffs.items():
            acc[z] = acc[z] + c if z in acc else c
        return SuperVectorField(self.chart, acc)

    def __neg__(self):
        return SuperVectorField(self.chart, {z: -c for z, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f):
        """Умножение слева на функцию"""
        f = self.chart.ctx.coerce(f)
        return SuperVectorField(self.chart, {z: f * c for z, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, SuperVectorField):
            return NotImplemented
        return self.chart is other.chart and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def bracket(self, other):
        """Градуированный коммутатор [X,Y]^z = X(Y^z) − (−1)^{|X||Y|}Y(X^z)"""
        other = self._coerce(other)
        coordinates = set(self.coeffs) | set(other.coeffs)
        result = self.chart.zero_field()
        for p, x in self.homogeneous_parts():
            for q, y in other.homogeneous_parts():
                sign = -1 if p * q else 1
                coeffs = {}
                for z in coordinates:
                    value = x.apply(y.coefficient(z))
                    back = y.apply(x.coefficient(z))
                    coeffs[z] = value + back if sign < 0 else value - back
                result = result + SuperVectorField(self.chart, coeffs)
        return result

    def substitute_coefficients(self, mapping):
        return SuperVectorField(self.chart, {z: substitute(c, mapping) for z, c in self.coeffs.items()})

    def extend_to(self, chart):
        if chart is self.chart:
            return self
        return SuperVectorField(chart, {z.name: c for z, c in self.coeffs.items()})

    def __str__(self):
        from .expressions import to_text
        if not self.coeffs:
            return '0'
        return ' + '.join(f"({to_text(c)})*D[{z.name}]" for z, c in
                          sorted(self.coeffs.items(), key=lambda zc: self.chart.position(zc[0])))

    def __repr__(self):
        return f"SuperVectorField({self})"


# --- операции ------------------------------------------------------------

def d(form, conventions=STANDARD):
    """Внешняя производная"""
    if not isinstance(form, SuperForm):
        raise MalformedInput("exterior derivative expects a SuperForm")
    chart = form.chart
    parities = chart.parities
    acc = {}
    for key, a in form.terms.items():
        for pos, z in enumerate(chart.coordinates):
            if conventions.d_placement == D_LEFT:
                c = partial(a, z)
                if not c:
                    continue
                sign, new_key = _merge_diff(((pos, 1),), key, parities)
                c = c.twist(parities[pos])
            else:
                # (a∂ᴿ)·Δ dz с множителем (−1)^{|z||Δ|}: итог равен (−1)^{deg}·d при D_LEFT
                c = partial_odd_right(a, z) if z.is_odd else partial_even(a, z)
                if not c:
                    continue
                sign, new_key = _merge_diff(key, ((pos, 1),), parities)
                if parities[pos] and _key_parity(key, parities):
                    sign = -sign
            if not sign:
                continue
            if sign < 0:
                c = -c
            acc[new_key] = acc[new_key] + c if new_key in acc else c
    return SuperForm(chart, acc)


exterior_derivative = d


def _contract_homogeneous(field, parity, form, conventions):
    chart = form.chart
    parities = chart.parities
    acc = {}
    for key, a in form.terms.items():
        sequence = [pos for pos, m in key for _ in range(m)]
        for j, pos in enumerate(sequence):
            coordinate = chart.coordinates[pos]
            xz = field.coefficient(coordinate)
            if not xz:
                continue
            if conventions.contraction == CONTRACTION_GRADED:
                prior = sequence[:j]
                exponent = sum(1 + parity * parities[i] for i in prior)
                shift = sum(parities[i] for i in prior)
                c = a.twist(parity) * xz.twist(shift)
            else:
                exponent = j
                c = a * xz
            if exponent % 2:
                c = -c
            new_key = _remove_one(key, pos)
            acc[new_key] = acc[new_key] + c if new_key in acc else c
    return SuperForm(chart, acc)


def contract(field, form, conventions=STANDARD):
    """Свёртка ι(X)ω; неоднородное поле раскладывается на однородные части"""
    if field.chart is not form.chart:
        if all(z in form.chart for z in field.coeffs):
            field = field.extend_to(form.chart)
        else:
            raise ChartMismatch(f"Field on {field.chart.name} contracted with form on {form.chart.name}")
    if conventions.contraction != CONTRACTION_GRADED:
        return _contract_homogeneous(field, 0, form, conventions)
    result = form.chart.zero_form()
    for parity, part in field.homogeneous_parts():
        result = result + _contract_homogeneous(part, parity, form, conventions)
    return result


def contract_seq(fields, form, conventions=STANDARD):
    """ι(X₁,…,X_ℓ)ω = ι(X₁)∘⋯∘ι(X_ℓ)ω"""
    for field in reversed(list(fields)):
        form = contract(field, form, conventions)
    return form


def lie_derivative(field, form, conventions=STANDARD):
    """L_X = ι(X)∘d + d∘ι(X)"""
    return (contract(field, d(form, conventions), conventions)
            + d(contract(field, form, conventions), conventions))


def pullback(mapping, form, source_chart, conventions=STANDARD):
    """Обратный образ формы при отображении координат целевой карты в функции на source_chart"""
    ctx = source_chart.ctx
    images = {}
    for z in form.chart.coordinates:
        image = mapping.get(z.name, mapping.get(z)) if mapping else None
        if image is None:
            image = ctx.scalar(z)
        image = ctx.coerce(image)
        if image and image.parity() != z.parity:
            raise ParityMismatch(f"Image of {z.name} has parity {image.parity().name}")
        images[z] = image
    substitution = {z: img for z, img in images.items()}
    differentials = {}
    result = source_chart.zero_form()
    for key, a in form.terms.items():
        term = source_chart.function(substitute(a, substitution))
        for pos, m in key:
            z = form.chart.coordinates[pos]
            if z not in differentials:
                differentials[z] = d(source_chart.function(images[z]), conventions)
            term = term * differentials[z] ** m
        result = result + term
    return result


# --- линейные системы ------------------------------------------------------

def linear_equations(expressions, unknowns):
    """Система (коэффициенты, правая часть) для выражений, линейных по неизвестным"""
    if not expressions:
        return []
    ctx = expressions[0].ctx
    unknowns = [ctx[u] for u in unknowns]
    zero_map = {u: ctx.zero for u in unknowns}
    system = []
    for expression in expressions:
        coefficients = {}
        for u in unknowns:
            c = berezin(expression, u) if u.is_odd else partial_even(expression, u)
            if c:
                coefficients[u] = c
        system.append((coefficients, -substitute(expression, zero_map)))
    return system


def solve_linear(equations, unknowns):
    """Исключение Гаусса над кольцом: ведущие элементы должны быть обратимы.

    Уравнения имеют вид Σ_k a_k·u_k = r (коэффициенты слева).
    """
    rows = [({u: c for u, c in coeffs.items() if c}, rhs) for coeffs, rhs in equations]
    if not rows:
        if unknowns:
            raise Underdetermined("Empty system", free=tuple(unknowns))
        return {}
    ctx = rows[0][1].ctx
    unknowns = [ctx[u] for u in unknowns]
    pivots = {}
    used = set()
    while True:
        choice = None
        for i, (coeffs, _) in enumerate(rows):
            if i in used:
                continue
            for u in unknowns:
                if u in pivots:
                    continue
                c = coeffs.get(u)
                if c is not None and c.is_unit():
                    choice = (i, u)
                    break
            if choice:
                break
        if choice is None:
            break
        i, u = choice
        coeffs, rhs = rows[i]
        inv = inverse(coeffs[u])
        coeffs = {k: inv * c for k, c in coeffs.items()}
        rows[i] = ({k: c for k, c in coeffs.items() if c}, inv * rhs)
        for r, (other, other_rhs) in enumerate(rows):
            if r == i or u not in other:
                continue
            factor = other[u]
            updated = dict(other)
            for k, c in rows[i][0].items():
                updated[k] = updated.get(k, ctx.zero) - factor * c
            rows[r] = ({k: c for k, c in updated.items() if c}, other_rhs - factor * rows[i][1])
        pivots[u] = i
        used.add(i)
    for i, (coeffs, rhs) in enumerate(rows):
        if i in used:
            continue
        if coeffs:
            logger.error(f"No unit pivot among {[u.name for u in coeffs]}")
            raise NonUnitPivot(f"No unit pivot for unknowns {[u.name for u in coeffs]}")
        if rhs:
            raise Inconsistent(f"Equation 0 = {rhs} is inconsistent", equation=i)
    free = tuple(u for u in unknowns if u not in pivots)
    if free:
        raise Underdetermined(f"Free unknowns: {[u.name for u in free]}", free=free)
    solution = {}
    for u, i in pivots.items():
        coeffs, rhs = rows[i]
        if set(coeffs) != {u}:
            raise NonUnitPivot(f"Row for {u.name} still couples {[k.name for k in coeffs]}")
        solution[u] = rhs
    return solution


def solve_expressions(expressions, unknowns):
    return solve_linear(linear_equations(expressions, unknowns), unknowns)


def is_nondegenerate(form):
    """Невырожденность 2-формы: система ι(X)ω = θ однозначно разрешима в полях"""
    chart = form.chart
    ctx = chart.ctx
    two = form.homogeneous(2)
    matrix = []
    for z in chart.coordinates:
        row = {}
        image = contract(chart.partial_field(z), two)
        for j, w in enumerate(chart.coordinates):
            c = image.terms.get(((j, 1),), ctx.zero)
            if c:
                row[w] = c
        matrix.append(row)
    try:
        rows = [(row, ctx.zero) for row in matrix]
        solve_linear(rows, list(chart.coordinates))
    except (NonUnitPivot, Underdetermined):
        return False
    return True
