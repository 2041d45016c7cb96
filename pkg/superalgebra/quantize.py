"""Геометрическое квантование орбит.

Расслоение Y = орбита × (t, τ) со связностью Γ = Γ₀ + Γ₁, поднятие
фундаментальных полей, решения условий поляризации и формулы
индуцированных представлений вида (T_ĝ h)(z) = h(σ(z))·M(z).
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .certificates import expect_equal, expect_true, run_check
from .conventions import STANDARD
from .exceptions import MalformedInput, NonIntegrablePhase, VerificationFailure
from .expressions import parse, parse_form
from .loaders import displays, pool
from .orbits import CASES, Polarization, generic_orbit, polarizations
from .supercalc import contract, d, lie_derivative, linear_equations, pullback, solve_linear
from .symkernel import (
    Parity, exp_nilpotent, integrate_even, inverse, partial, substitute,
)

logger = logging.getLogger(__name__)

BUNDLE_COORDINATES = ('t', 'tau')
EQUIVARIANCE = 'I*tau*kappa + I*t/hbar'


@dataclass
class QuantParams:
    """ħ обратим, κ нечётен; период d только переносится в отчёты"""
    hbar: str = 'hbar'
    kappa: str = 'kappa'
    period: str = 'd'

    def as_dict(self):
        return {'hbar': self.hbar, 'kappa': self.kappa, 'period': self.period}


@dataclass
class Connection:
    gamma0: object
    gamma1: object

    @property
    def chart(self):
        return self.gamma0.chart

    def as_dict(self):
        return {'gamma0': str(self.gamma0), 'gamma1': str(self.gamma1)}


def _quantization_display(case):
    try:
        return displays()['quantization'][case]
    except KeyError:
        raise MalformedInput(f"No quantization data for orbit case {case!r}")


def _solution_display(name):
    try:
        return displays()['solutions'][name]
    except KeyError:
        raise MalformedInput(f"No solution data for polarization {name!r}")


@lru_cache(maxsize=None)
def bundle_chart(orbit):
    return orbit.chart.extend(f"{orbit.case}-bundle", BUNDLE_COORDINATES)


def on_orbit(orbit, value):
    """Подстановка функций вложения вместо координат двойственного вне карты"""
    mapping = {name: expression for name, expression in orbit.embedding.items()
               if orbit.ctx.scalar(name) != expression}
    return substitute(value, mapping) if mapping else value


def _parse_on_orbit(orbit, text, params=None):
    return on_orbit(orbit, parse(str(text), orbit.ctx, params))


def _field_from(chart, orbit, data, params=None):
    return chart.field({name: _parse_on_orbit(orbit, text, params) for name, text in data.items()})


def connection_for(orbit):
    """Γ₀, Γ₁ из показанных формул"""
    data = _quantization_display(orbit.case)
    chart = bundle_chart(orbit)
    gamma0 = parse_form(str(data['gamma0']), chart)
    gamma1 = parse_form(str(data['gamma1']), chart)
    return Connection(gamma0, gamma1)


def curvature_check(connection, orbit, omega, conventions=STANDARD, suite='quantize'):
    """dΓ₀ и dΓ₁ равны чётной и нечётной частям ω"""
    chart = connection.chart
    lifted = omega.extend_to(chart)

    def even():
        expect_equal(d(connection.gamma0, conventions), lifted.even_part(), f"{orbit.case}: d Gamma0")

    def odd():
        expect_equal(d(connection.gamma1, conventions), lifted.odd_part(), f"{orbit.case}: d Gamma1")

    return [run_check(suite, f"{orbit.case}.curvature.even", even),
            run_check(suite, f"{orbit.case}.curvature.odd", odd)]


# --- поднятия -----------------------------------------------------------

def lift_fundamental(connection, orbit, conventions=STANDARD):
    """(v,z)^Y = X + p₀∂t + p₁∂τ из ι(X^Y)Γ_i = ⟨(v,z), μ⟩_i и проверка L(X^Y)Γ = 0"""
    chart = connection.chart
    ctx = orbit.ctx
    base = orbit.generic_field(conventions).extend_to(chart)
    (p0,) = pool(ctx, Parity.EVEN, 1)
    (p1,) = pool(ctx, Parity.ODD, 1)
    candidate = base + chart.field({'t': p0, 'tau': p1})
    paired = orbit.group.pairing(orbit.group.algebra_element(), orbit.point())
    expressions = [
        contract(candidate, connection.gamma0, conventions).as_function() - paired.even_part(),
        contract(candidate, connection.gamma1, conventions).as_function() - paired.odd_part(),
    ]
    unknowns = [ctx['c0'], ctx['q0']]
    solution = solve_linear(linear_equations(expressions, unknowns), unknowns)
    lifted = candidate.substitute_coefficients(solution)
    for name, gamma in (('Gamma0', connection.gamma0), ('Gamma1', connection.gamma1)):
        derivative = lie_derivative(lifted, gamma, conventions)
        if derivative:
            raise VerificationFailure(
                f"Lifted field does not preserve {name} on the {orbit.case} orbit",
                witness=str(derivative))
    return lifted


def lift_checks(orbit, connection=None, conventions=STANDARD, suite='quantize'):
    """Поднятое поле совпадает с показанным"""
    connection = connection or connection_for(orbit)
    data = _quantization_display(orbit.case).get('lift', {})

    def check():
        lifted = lift_fundamental(connection, orbit, conventions)
        horizontal = orbit.generic_field(conventions).extend_to(connection.chart)
        shown = _field_from(connection.chart, orbit, data)
        for z in connection.chart.coordinates:
            expected = shown.coefficient(z) if z.name in data else horizontal.coefficient(z)
            expect_equal(lifted.coefficient(z), expected, f"{orbit.case}: lift at {z.name}")
        return str(lifted)

    return [run_check(suite, f"{orbit.case}.lift", check)]


def horizontal_lift(connection, orbit, vector_field, conventions=STANDARD):
    """X^h = X + p₀∂t + p₁∂τ с ι(X^h)Γ₀ = ι(X^h)Γ₁ = 0"""
    chart = connection.chart
    ctx = orbit.ctx
    X = vector_field.extend_to(chart)
    parity = X.parity()
    if parity == Parity.MIXED:
        raise MalformedInput("Horizontal lift needs a homogeneous field")
    p0 = pool(ctx, parity, 1, offset=1)[0]
    p1 = pool(ctx, (int(parity) + 1) % 2, 1, offset=1)[0]
    candidate = X + chart.field({'t': p0, 'tau': p1})
    expressions = [contract(candidate, connection.gamma0, conventions).as_function(),
                   contract(candidate, connection.gamma1, conventions).as_function()]
    unknowns = [next(iter(p0.free_symbols())), next(iter(p1.free_symbols()))]
    solution = solve_linear(linear_equations(expressions, unknowns), unknowns)
    return candidate.substitute_coefficients(solution)


# --- поднятое действие группы ---------------------------------------------------

def lifted_action(orbit, copy=0):
    """Показанное действие Φ_g на координатах Y (копия координат группы copy)"""
    data = _quantization_display(orbit.case).get('action', {})
    group = orbit.group
    chart = bundle_chart(orbit)
    action = {z.name: orbit.ctx.scalar(z) for z in chart.coordinates}
    for name, text in data.items():
        if name not in chart:
            raise MalformedInput(f"Action display names {name!r}, not a coordinate of {chart.name}")
        action[name] = _parse_on_orbit(orbit, text)
    if copy:
        renaming = group.translation_map(group.point(copy))
        action = {name: substitute(value, renaming) for name, value in action.items()}
    return action


def _at_point(group, action, point):
    mapping = group.translation_map(point)
    return {name: substitute(value, mapping) for name, value in action.items()}


def action_check(orbit, lifted=None, connection=None, conventions=STANDARD, suite='quantize'):
    """Аксиома действия, единица, генераторы и сохранение Γ"""
    group = orbit.group
    chart = bundle_chart(orbit)
    plain = lifted_action(orbit)
    hat = lifted_action(orbit, copy=1)
    prefix = orbit.case
    certificates = []

    def axiom():
        composed = {name: substitute(value, plain) for name, value in hat.items()}
        product = _at_point(group, plain, group.multiply(group.point(1), group.point()))
        for name in composed:
            expect_equal(composed[name], product[name], f"{prefix}: Phi_hat(Phi_g) at {name}")

    def identity():
        at_identity = _at_point(group, plain, group.identity())
        for name, value in at_identity.items():
            expect_equal(value, orbit.ctx.scalar(name), f"{prefix}: identity at {name}")

    def generators():
        X = lifted if lifted is not None else lift_fundamental(connection or connection_for(orbit), orbit,
                                                               conventions)
        moved = _at_point(group, plain, group._scaled(group.algebra_element()))
        for name, value in moved.items():
            generator = -group._derive_at_zero(value)
            expect_equal(generator, X.coefficient(name), f"{prefix}: generator at {name}")

    def preserves_connection():
        conn = connection or connection_for(orbit)
        for label, gamma in (('Gamma0', conn.gamma0), ('Gamma1', conn.gamma1)):
            expect_equal(pullback(plain, gamma, chart, conventions), gamma, f"{prefix}: Phi_g^* {label}")

    certificates.append(run_check(suite, f"{prefix}.action.axiom", axiom))
    certificates.append(run_check(suite, f"{prefix}.action.identity", identity))
    certificates.append(run_check(suite, f"{prefix}.action.generators", generators))
    certificates.append(run_check(suite, f"{prefix}.action.connection", preserves_connection))
    return certificates


# --- решения условий поляризации ------------------------------------------------

@dataclass
class PolarizedSolution:
    """g = h(u₁, …, u_k)·e^{φ}: поперечные координаты u и фаза φ"""
    polarization: Polarization
    pivots: list
    rows: list
    rhs: list
    transverse: list
    phase: object
    lifts: list = field(default_factory=list)

    def as_dict(self):
        return {
            'polarization': self.polarization.label,
            'transverse': [str(u) for u in self.transverse],
            'phase': str(self.phase),
        }


def equivariance_factor(ctx):
    """E = e^{iτκ + it/ħ}"""
    return exp_nilpotent(parse(EQUIVARIANCE, ctx))


def polarization_fields(orbit, polarization, conventions=STANDARD):
    fields = [orbit.element_field(u, conventions) for u in polarization.instantiated()]
    return [X for X in fields if X]


def _reduce(orbit, fields, rhs):
    """Приведение полей к ступенчатому виду: ведущие столбцы ищутся справа"""
    chart = orbit.chart
    ctx = orbit.ctx
    rows = list(fields)
    values = list(rhs)
    for X in rows:
        for c in X.coeffs.values():
            if c.depends_on(*chart.coordinates):
                raise NonIntegrablePhase(f"Polarization field {X} has non-constant coefficients")
    pivots = []
    done = set()
    for z in reversed(chart.coordinates):
        choice = None
        for i, X in enumerate(rows):
            if i in done:
                continue
            c = X.coefficient(z)
            if c and c.is_unit():
                choice = i
                break
        if choice is None:
            continue
        factor = inverse(rows[choice].coefficient(z))
        rows[choice] = rows[choice].scale(factor)
        values[choice] = factor * values[choice]
        for j, Y in enumerate(rows):
            if j == choice:
                continue
            c = Y.coefficient(z)
            if c:
                rows[j] = Y - rows[choice].scale(c)
                values[j] = values[j] - c * values[choice]
        pivots.append((z, choice))
        done.add(choice)
    leftover = [rows[i] for i in range(len(rows)) if i not in done and rows[i]]
    if leftover:
        raise NonIntegrablePhase(f"Polarization fields are not in echelon form: {leftover}")
    ordered = [(z, rows[i], values[i]) for z, i in pivots]
    return ordered, ctx


def polarized_solve(orbit, polarization, connection=None, conventions=STANDARD):
    """Решение X^h f = 0 для f = E·g: g = h(поперечные)·e^{φ}"""
    connection = connection or connection_for(orbit)
    ctx = orbit.ctx
    chart = orbit.chart
    E = equivariance_factor(ctx)
    E_inv = inverse(E)
    fields = polarization_fields(orbit, polarization, conventions)
    rhs = []
    for X in fields:
        lifted = horizontal_lift(connection, orbit, X, conventions)
        rhs.append(-(E_inv * lifted.apply(E)))
    ordered, _ = _reduce(orbit, fields, rhs)
    pivot_names = {z for z, _, _ in ordered}
    transverse = []
    for w in chart.coordinates:
        if w in pivot_names:
            continue
        u = ctx.scalar(w)
        for z, row, _ in ordered:
            coefficient = row.coefficient(w)
            if coefficient:
                u = u - coefficient * ctx.scalar(z)
        transverse.append(u)
    phase = ctx.zero
    scratch = ctx['r']
    for z, row, value in ordered:
        residual = value - row.apply(phase)
        if not residual:
            continue
        along = {w: row.coefficient(w) for w in chart.coordinates if w != z and row.coefficient(w)}
        if z.is_odd:
            projection = {z: ctx.zero}
            projection.update({w: ctx.scalar(w) - c * ctx.scalar(z) for w, c in along.items()})
            phase = phase + ctx.scalar(z) * substitute(residual, projection)
        else:
            flow = {z: ctx.scalar(scratch)}
            flow.update({w: ctx.scalar(w) + c * (ctx.scalar(scratch) - ctx.scalar(z))
                         for w, c in along.items()})
            antiderivative = integrate_even(substitute(residual, flow), scratch)
            phase = phase + substitute(antiderivative, {scratch: ctx.scalar(z)})
    rows = [row for _, row, _ in ordered]
    values = [value for _, _, value in ordered]
    for row, value in zip(rows, values):
        if row.apply(phase) != value:
            raise NonIntegrablePhase(
                f"Phase equations of {polarization.label} are not integrable: {row.apply(phase)} != {value}")
    logger.debug(f"{polarization.label}: transverse {[str(u) for u in transverse]}, phase {phase}")
    return PolarizedSolution(polarization, [z for z, _, _ in ordered], rows, values, transverse, phase)


def solution_checks(orbit, polarization, solution=None, connection=None, conventions=STANDARD,
                    suite='quantize'):
    """Сравнение решения и горизонтальных поднятий с показанными формулами"""
    connection = connection or connection_for(orbit)
    data = _solution_display(polarization.name)
    params = {'eps': polarization.eps} if polarization.eps is not None else {}
    prefix = polarization.label
    cache = {}

    def get_solution():
        if 'solution' not in cache:
            cache['solution'] = solution or polarized_solve(orbit, polarization, connection, conventions)
        return cache['solution']

    def transverse():
        expected = [_parse_on_orbit(orbit, text, params) for text in data.get('transverse', [])]
        expect_equal(get_solution().transverse, expected, f"{prefix}: transverse coordinates")

    def phase():
        found = get_solution()
        expected = _parse_on_orbit(orbit, data.get('phase', '0'), params)
        gauge = found.phase - expected
        for row in found.rows:
            expect_true(not row.apply(gauge), f"{prefix}: phase agrees up to gauge", gauge)
        return 'exact' if not gauge else f"gauge {gauge}"

    def lifts():
        chart = connection.chart
        for entry in data.get('lifts', []):
            X = _field_from(orbit.chart, orbit, entry['field'], params)
            expected = _field_from(chart, orbit, entry['lift'], params)
            found = horizontal_lift(connection, orbit, X, conventions)
            expect_equal(found, expected, f"{prefix}: horizontal lift of {X}")
            expect_true(not contract(found, connection.gamma0, conventions)
                        and not contract(found, connection.gamma1, conventions),
                        f"{prefix}: horizontal lift annihilates Gamma", found)

    return [run_check(suite, f"{prefix}.transverse", transverse),
            run_check(suite, f"{prefix}.phase", phase),
            run_check(suite, f"{prefix}.lifts", lifts)]


# --- формулы представлений --------------------------------------------------------

class RepFormula:
    """(T_ĝ h)(z) = h(σ(z))·M(z) в координатах ĝ (копия 1)"""

    def __init__(self, ctx, variables, shift, multiplier):
        self.ctx = ctx
        self.variables = dict(variables)
        self.shift = dict(shift)
        self.multiplier = multiplier

    def __repr__(self):
        return f"RepFormula({list(self.variables)}, M={self.multiplier})"

    def __eq__(self, other):
        if not isinstance(other, RepFormula):
            return NotImplemented
        return (set(self.shift) == set(other.shift)
                and all(self.shift[k] == other.shift[k] for k in self.shift)
                and self.multiplier == other.multiplier)

    __hash__ = None

    def renamed(self, mapping):
        """Формула с подстановкой в координаты группы"""
        return RepFormula(self.ctx, self.variables,
                          {k: substitute(v, mapping) for k, v in self.shift.items()},
                          substitute(self.multiplier, mapping))

    def apply(self, h):
        return substitute(h, self.shift) * self.multiplier

    def is_unit_multiplier(self):
        return self.multiplier * inverse(self.multiplier) == self.ctx.one

    def reshift(self, var, amount):
        """Переход к несдвинутой переменной w̃ = w + c"""
        var = self.ctx[var]
        back = {var: self.ctx.scalar(var) - amount}
        shift = {}
        for name, value in self.shift.items():
            moved = substitute(value, back)
            shift[name] = moved + amount if self.ctx[name] == var else moved
        variables = dict(self.variables)
        if var.name in variables:
            variables[var.name] = variables[var.name] + amount
        return RepFormula(self.ctx, variables, shift, substitute(self.multiplier, back))

    def central_character(self, direction, group):
        """Минус производная множителя в единице по центральному направлению"""
        identity = group.translation_map(group.identity(), copy=1)
        return -substitute(partial(self.multiplier, direction), identity)

    def as_dict(self):
        return {
            'variables': {k: str(v) for k, v in self.variables.items()},
            'shift': {k: str(v) for k, v in self.shift.items()},
            'multiplier': str(self.multiplier),
        }


def displayed_rep(orbit, polarization):
    data = _solution_display(polarization.name)
    params = {'eps': polarization.eps} if polarization.eps is not None else {}
    ctx = orbit.ctx
    variables = {name: _parse_on_orbit(orbit, text, params) for name, text in data.get('variables', {}).items()}
    shift = {name: parse(str(text), ctx, params) for name, text in data.get('shift', {}).items()}
    multiplier = parse(str(data['multiplier']), ctx, params)
    return RepFormula(ctx, variables, shift, multiplier)


def generic_function(ctx, variables, offset=0):
    """Общая функция приведённых переменных: полилинейная по чётным, все нечётные слова"""
    even = [v for v in variables if not ctx[v].is_odd]
    odd = [v for v in variables if ctx[v].is_odd]
    monomials = []
    for k in range(len(even) + 1):
        for subset in combinations(even, k):
            for j in range(len(odd) + 1):
                for word in combinations(odd, j):
                    term = ctx.one
                    for v in subset + word:
                        term = term * ctx.scalar(v)
                    monomials.append(term)
    coefficients = pool(ctx, Parity.EVEN, len(monomials), offset=offset)
    total = ctx.zero
    for c, m in zip(coefficients, monomials):
        total = total + c * m
    return total


def induced_rep(orbit, polarization, rep=None):
    """Проверка показанной формулы: (Φ_ĝ f)(y) = f(ĝ⁻¹·y) для f = E·h(z(y))·e^{φ}"""
    group = orbit.group
    ctx = orbit.ctx
    rep = rep or displayed_rep(orbit, polarization)
    data = _solution_display(polarization.name)
    params = {'eps': polarization.eps} if polarization.eps is not None else {}
    phase = exp_nilpotent_or_one(_parse_on_orbit(orbit, data.get('phase', '0'), params))
    E = equivariance_factor(ctx)
    h = generic_function(ctx, list(rep.variables), offset=8)
    section = E * substitute(h, rep.variables) * phase
    backwards = lifted_action(orbit)
    to_hat = {b.copies[0]: -ctx.scalar(b.copies[1]) for b in group.basis}
    backwards = {name: substitute(value, to_hat) for name, value in backwards.items()}
    lhs = substitute(section, backwards)
    rhs = E * substitute(rep.apply(h), rep.variables) * phase
    if lhs != rhs:
        raise VerificationFailure(
            f"{polarization.label}: displayed representation differs from the lifted action",
            witness=str(lhs - rhs))
    return rep


def exp_nilpotent_or_one(value):
    return exp_nilpotent(value) if value else value.ctx.one


def representation_checks(orbit, polarization, suite='quantize'):
    """Формула представления, гомоморфность, центральные характеры и сдвиги"""
    group = orbit.group
    ctx = orbit.ctx
    prefix = polarization.label
    data = _solution_display(polarization.name)
    rep = displayed_rep(orbit, polarization)
    certificates = []

    def matches():
        induced_rep(orbit, polarization, rep)
        expect_true(rep.is_unit_multiplier(), f"{prefix}: multiplier is a unit")
        return str(rep.multiplier)

    def homomorphism():
        h = generic_function(ctx, list(rep.variables), offset=8)
        plain = rep.renamed({b.copies[1]: ctx.scalar(b.copies[0]) for b in group.basis})
        inner = plain.apply(h)
        composed = rep.apply(inner)
        product = group.multiply(group.point(1), group.point())
        direct = rep.renamed(group.translation_map(product, copy=1)).apply(h)
        expect_equal(composed, direct, f"{prefix}: T_hat T_g = T_(hat g)")

    def central():
        mu = orbit.point()
        expected = {
            'bh': -(parse('I/hbar', ctx) * mu['y0']),
            'betah': -(parse('I', ctx) * mu['yb1'] * ctx.scalar('kappa')),
        }
        for direction, value in expected.items():
            expect_equal(rep.central_character(direction, group), value,
                         f"{prefix}: central character along {direction}")

    def reshifts():
        for entry in data.get('reshift', []):
            moved = rep
            for var, amount in entry.get('shifts', {}).items():
                moved = moved.reshift(var, parse(str(amount), ctx))
            multiplier = moved.multiplier
            for name, text in (entry.get('substitute') or {}).items():
                multiplier = substitute(multiplier, {name: parse(str(text), ctx)})
            for name in entry.get('removes', []):
                expect_true(not multiplier.depends_on(name),
                            f"{prefix}: {name} is spurious after the reshift", multiplier)

    certificates.append(run_check(suite, f"{prefix}.rep", matches))
    certificates.append(run_check(suite, f"{prefix}.homomorphism", homomorphism))
    certificates.append(run_check(suite, f"{prefix}.central", central))
    certificates.append(run_check(suite, f"{prefix}.reshift", reshifts))
    return certificates


def quantization_report(orbit, polarization):
    """Блок отчёта для пары (орбита, поляризация)"""
    solution = polarized_solve(orbit, polarization)
    return {
        'case': orbit.case,
        'polarization': polarization.label,
        'connection': connection_for(orbit).as_dict(),
        'solution': solution.as_dict(),
        'representation': displayed_rep(orbit, polarization).as_dict(),
        'params': QuantParams().as_dict(),
    }


def quantization_pairs(cases=None, name=None):
    """Все пары (орбита, поляризация), при необходимости с фильтром по имени"""
    pairs = []
    for case in cases or CASES:
        orbit = generic_orbit(case)
        if name:
            try:
                selected = [p for p in polarizations(orbit) if p.name == name]
            except MalformedInput:
                selected = []
        else:
            selected = polarizations(orbit)
        pairs.extend((orbit, p) for p in selected)
    if name and not pairs:
        raise MalformedInput(f"Unknown polarization {name!r}")
    return pairs
