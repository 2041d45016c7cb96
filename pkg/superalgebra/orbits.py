"""Коприсоединённые орбиты: классификация, карты, форма KKS и поляризации"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache

from .certificates import expect_equal, expect_true, run_check
from .conventions import STANDARD
from .exceptions import MalformedInput, VerificationFailure
from .expressions import parse, parse_form
from .liegroup import DUAL_ORDER, EVEN_DUAL, standard_group
from .loaders import displays, pool
from .supercalc import (
    Chart, contract_seq, d, is_nondegenerate, lie_derivative, linear_equations,
    solve_linear,
)
from .symkernel import Parity, partial, split_by, substitute

logger = logging.getLogger(__name__)

POINT = 'point'
EVEN22 = 'even22'
ODD22 = 'odd22'
MIXED33 = 'mixed33'
CASES = (POINT, EVEN22, ODD22, MIXED33)

# символы меток, которые при классификации заменяются координатами базовой точки
LABEL_SYMBOLS = {
    'xo1': 'x1', 'xo2': 'x2', 'xo3': 'x3',
    'xbo4': 'xb4', 'xbo5': 'xb5', 'xbo6': 'xb6',
    'y0': 'y0', 'yb1': 'yb1',
}


def case_for(y0, yb1):
    """Тип орбиты по обращению в нуль центральных координат"""
    if not y0 and not yb1:
        return POINT
    if not yb1:
        return EVEN22
    if not y0:
        return ODD22
    return MIXED33


@dataclass
class Polarization:
    """Семейство подалгебр h ⊇ g_μ с ⟨[h, h], μ⟩ = 0"""
    name: str
    case: str
    dimension: tuple
    vectors: list
    complement: list
    eps: object = None
    instance: dict = field(default_factory=dict)

    @property
    def label(self):
        return self.name if self.eps is None else f"{self.name}[eps={self.eps:+d}]"

    def instantiated(self):
        """Векторы при значениях параметров семейства из instance"""
        if not self.instance:
            return self.vectors
        return [{k: substitute(c, self.instance) for k, c in u.items()} for u in self.vectors]

    def as_dict(self):
        return {
            'name': self.name,
            'eps': self.eps,
            'dimension': f"{self.dimension[0]}|{self.dimension[1]}",
            'vectors': [_element_text(u) for u in self.vectors],
        }


def _element_text(element):
    parts = []
    for name, c in element.items():
        if c:
            parts.append(name if c == 1 else f"({c})*{name}")
    return ' + '.join(parts) or '0'


class OrbitClass:
    """Орбита: тип, карта, вложение в двойственное пространство и метки"""

    def __init__(self, case, chart, embedding, invariants, vanishing=None, labels=None,
                 group=None):
        self.case = case
        self.chart = chart
        self.embedding = embedding
        self.invariants = invariants
        self.vanishing = vanishing or {}
        self.labels = labels
        self.group = group or standard_group()
        self.ctx = self.group.ctx

    def __repr__(self):
        return f"OrbitClass({self.case!r}, chart={[z.name for z in self.chart.coordinates]})"

    @property
    def dimension(self):
        return self.chart.dimension

    @property
    def is_generic(self):
        return self.labels is None

    def point(self):
        """Точка орбиты как функция координат карты"""
        mu = {name: self.ctx.zero for name in DUAL_ORDER}
        for z in self.chart.coordinates:
            mu[z.name] = self.ctx.scalar(z)
        mu.update(self.embedding)
        return mu

    def base_value(self, name):
        return self.point()[name]

    # --- фундаментальные поля на орбите ---------------------------------

    def _restricted(self, full):
        mu = self.point()
        substituted = {name: substitute(full.coefficient(name), mu) for name in DUAL_ORDER}
        for name in DUAL_ORDER:
            if name in self.chart:
                continue
            emb = self.embedding.get(name, self.ctx.zero)
            along = self.ctx.zero
            for z in self.chart.coordinates:
                along = along + substituted[z.name] * partial(emb, z)
            if along != substituted[name]:
                raise VerificationFailure(
                    f"Fundamental field is not tangent to the {self.case} orbit",
                    witness=f"{name}: field {substituted[name]}, along the orbit {along}")
        return self.chart.field({z: substituted[z.name] for z in self.chart.coordinates})

    @lru_cache(maxsize=None)
    def generic_field(self, conventions=STANDARD):
        """Поле X_V для общего элемента V = Σ v^i e_i, ограниченное на карту"""
        full = self.group.fundamental_field_dual(self.group.algebra_element(), conventions)
        return self._restricted(full)

    @lru_cache(maxsize=None)
    def basis_fields(self, conventions=STANDARD):
        generic = self.generic_field(conventions)
        fields = {}
        for b in self.group.basis:
            v = self.ctx[b.algebra[0]]
            fields[b.name] = self.chart.field({
                z: partial(c, v) for z, c in generic.coeffs.items()})
        return fields

    def element_field(self, element, conventions=STANDARD):
        """X_u для элемента с вещественными коэффициентами"""
        fields = self.basis_fields(conventions)
        result = self.chart.zero_field()
        for name, c in element.items():
            if c:
                result = result + fields[name].scale(c)
        return result

    # --- спаривания -------------------------------------------------------

    def omega_pairing(self, left, right):
        """⟨Ω(u, w), μ°⟩ для вещественных коэффициентов: k0 ↦ y0, k1 ↦ ȳ1"""
        mu = self.point()
        values = {'k0': mu['y0'], 'k1': mu['yb1']}
        total = self.ctx.zero
        for (li, ri), value in self.group.spec.omega.items():
            u = self.ctx.coerce(left.get(li, 0))
            w = self.ctx.coerce(right.get(ri, 0))
            if not u or not w:
                continue
            for k, c in value.items():
                total = total + (u * w * values[k]).scale(c)
        return total

    def describe(self):
        return {
            'case': self.case,
            'dimension': '{}|{}'.format(*self.dimension),
            'chart': [z.name for z in self.chart.coordinates],
            'labels': {k: str(v) for k, v in (self.labels or {}).items()},
        }


def _parse_map(data, ctx, params=None):
    return {str(name): parse(str(text), ctx, params) for name, text in (data or {}).items()}


def _case_display(case):
    try:
        return displays()['orbits'][case]
    except KeyError:
        raise MalformedInput(f"No display data for orbit case {case!r}")


@lru_cache(maxsize=None)
def generic_orbit(case):
    """Орбита с символическими метками"""
    group = standard_group()
    ctx = group.ctx
    data = _case_display(case)
    chart = Chart(case, ctx, data.get('chart', []))
    return OrbitClass(
        case, chart,
        embedding=_parse_map(data.get('embedding'), ctx),
        invariants=_parse_map(data.get('invariants'), ctx),
        vanishing=_parse_map(data.get('vanishing'), ctx),
        group=group)


def classify(values):
    """Классификация орбиты через базовую точку с рациональными чётными координатами"""
    group = standard_group()
    ctx = group.ctx
    unknown = set(values) - set(EVEN_DUAL)
    if unknown:
        raise MalformedInput(f"Not a base point: unknown or odd coordinates {sorted(unknown)}")
    mu = group.base_point(values)
    case = case_for(mu['y0'], mu['yb1'])
    generic = generic_orbit(case)
    base = {symbol: mu[name] for symbol, name in LABEL_SYMBOLS.items()}
    labels = {}
    for label, expression in generic.invariants.items():
        labels[label] = substitute(expression, mu)
    embedding = {name: substitute(expression, base) for name, expression in generic.embedding.items()}
    logger.info(f"Base point {values} lies on a {case} orbit")
    return OrbitClass(case, generic.chart, embedding, generic.invariants,
                      vanishing=generic.vanishing, labels=labels, group=group)


# --- симплектическая форма --------------------------------------------------

def _two_form_keys(chart):
    keys = []
    n = len(chart.coordinates)
    for i in range(n):
        for j in range(i, n):
            if i == j and not chart.parities[i]:
                continue
            keys.append((chart.coordinates[i], chart.coordinates[j]))
    return keys


def kks_form(orbit, conventions=STANDARD):
    """ω из условий ι(X_i, X_j)ω + ⟨Ω(e_i, e_j), μ°⟩ = 0"""
    chart = orbit.chart
    ctx = orbit.ctx
    keys = _two_form_keys(chart)
    unknowns = pool(ctx, Parity.EVEN, len(keys))
    omega = chart.zero_form()
    for u, (z1, z2) in zip(unknowns, keys):
        omega = omega + chart.function(u) * chart.differential(z1) * chart.differential(z2)
    symbols = [next(iter(u.free_symbols())) for u in unknowns]
    fields = orbit.basis_fields(conventions)
    expressions = []
    for bi in orbit.group.basis:
        for bj in orbit.group.basis:
            value = contract_seq([fields[bi.name], fields[bj.name]], omega, conventions).as_function()
            value = value + orbit.omega_pairing({bi.name: 1}, {bj.name: 1})
            expressions.extend(split_by(value, chart.coordinates).values())
    solution = solve_linear(linear_equations(expressions, symbols), symbols)
    result = omega.substitute_coefficients(solution)
    logger.debug(f"KKS form of the {orbit.case} orbit: {result}")
    return result


def displayed_form(orbit, name='omega'):
    text = _case_display(orbit.case).get(name, '0')
    form = parse_form(str(text), orbit.chart)
    if not orbit.is_generic:
        form = form.substitute_coefficients(_label_substitution(orbit))
    return form


def _label_substitution(orbit):
    """Значения символов y0, ȳ1, x°… на конкретной орбите"""
    mu = {}
    for symbol, name in LABEL_SYMBOLS.items():
        if name in orbit.chart:
            continue
        value = orbit.embedding.get(name)
        if value is not None and value.is_constant():
            mu[symbol] = value
    return mu


def symplectic_checks(orbit, omega=None, conventions=STANDARD, suite='orbits'):
    """Замкнутость, инвариантность, невырожденность и показанные тождества"""
    certificates = []
    prefix = orbit.case
    cache = {}

    def get_form():
        if 'omega' not in cache:
            cache['omega'] = omega if omega is not None else kks_form(orbit, conventions)
        return cache['omega']

    def matches_display():
        expect_equal(get_form(), displayed_form(orbit), f"{prefix} symplectic form")
        return str(get_form())

    def closed():
        expect_true(not d(get_form(), conventions), f"{prefix}: d omega = 0", d(get_form(), conventions))

    def invariant():
        for name, X in orbit.basis_fields(conventions).items():
            derivative = lie_derivative(X, get_form(), conventions)
            expect_true(not derivative, f"{prefix}: L_X omega = 0 for {name}", derivative)

    def nondegenerate():
        if orbit.case == POINT:
            return 'zero-dimensional orbit'
        expect_true(is_nondegenerate(get_form()), f"{prefix}: omega is nondegenerate", get_form())

    certificates.append(run_check(suite, f"{prefix}.omega", matches_display))
    certificates.append(run_check(suite, f"{prefix}.closed", closed))
    certificates.append(run_check(suite, f"{prefix}.invariant", invariant))
    certificates.append(run_check(suite, f"{prefix}.nondegenerate", nondegenerate))
    for identity in _case_display(orbit.case).get('identities', []):
        fields = [orbit.chart.partial_field(z) for z in identity['fields']]
        expected = parse(str(identity['value']), orbit.ctx)
        if not orbit.is_generic:
            expected = substitute(expected, _label_substitution(orbit))
        label = ','.join(identity['fields'])

        def check(fields=fields, expected=expected, label=label):
            value = contract_seq(fields, get_form(), conventions).as_function()
            expect_equal(value, expected, f"{prefix}: iota({label}) omega")

        certificates.append(run_check(suite, f"{prefix}.identity({label})", check))
    return certificates


# --- инварианты и стабилизатор ------------------------------------------------

def label_checks(orbit, suite='orbits'):
    """Метки и σ инвариантны относительно Coad, карта замкнута относительно Coad"""
    group = orbit.group
    mu = orbit.point()
    moved = group.coadjoint(group.point(), mu)
    prefix = orbit.case
    certificates = []
    for label, expression in orbit.invariants.items():
        def check(expression=expression, label=label):
            expect_equal(substitute(expression, moved), substitute(expression, mu),
                         f"{prefix}: Coad-invariance of {label}")
        certificates.append(run_check(suite, f"{prefix}.label({label})", check))
    for label, expression in orbit.vanishing.items():
        def vanishes(expression=expression, label=label):
            expect_equal(substitute(expression, mu), orbit.ctx.zero, f"{prefix}: {label} on the orbit")
            expect_equal(substitute(expression, moved), orbit.ctx.zero, f"{prefix}: {label} after Coad")
        certificates.append(run_check(suite, f"{prefix}.vanishing({label})", vanishes))

    def closure():
        chart_image = {z: moved[z.name] for z in orbit.chart.coordinates}
        for name in DUAL_ORDER:
            if name in orbit.chart:
                continue
            expected = substitute(orbit.embedding.get(name, orbit.ctx.zero), chart_image)
            expect_equal(moved[name], expected, f"{prefix}: Coad({name}) on the chart")

    certificates.append(run_check(suite, f"{prefix}.closure", closure))
    return certificates


def stabilizer(orbit, conventions=STANDARD):
    """Базисные векторы с нулевым фундаментальным полем на орбите"""
    fields = orbit.basis_fields(conventions)
    return [b.name for b in orbit.group.basis if not fields[b.name]]


def stabilizer_checks(orbit, suite='orbits'):
    prefix = orbit.case

    def check():
        found = stabilizer(orbit)
        expect_equal(found, list(_case_display(orbit.case).get('stabilizer', [])),
                     f"{prefix}: stabilizer")
        for name in found:
            expect_true(not orbit.omega_pairing({name: 1}, {name: 1}),
                        f"{prefix}: <[{name},{name}], mu> = 0")
        return ' '.join(found)

    return [run_check(suite, f"{prefix}.stabilizer", check)]


# --- поляризации -----------------------------------------------------------

def polarizations(orbit):
    """Семейства поляризаций орбиты (ε разворачивается в отдельные семейства)"""
    ctx = orbit.ctx
    result = []
    for entry in _case_display(orbit.case).get('polarizations', []):
        eps_values = entry.get('eps') or [None]
        for eps in eps_values:
            params = {'eps': eps} if eps is not None else {}
            vectors = [_parse_map(u, ctx, params) for u in entry['vectors']]
            complement = [_parse_map(u, ctx, params) for u in entry.get('complement', [])]
            instance = {ctx[k]: ctx.const(v) for k, v in (entry.get('instance') or {}).items()}
            result.append(Polarization(
                entry['name'], orbit.case, tuple(entry['dimension']), vectors, complement,
                eps=eps, instance=instance))
    return result


def find_polarization(orbit, name, eps=None):
    for polarization in polarizations(orbit):
        if polarization.name == name and (eps is None or polarization.eps in (None, eps)):
            return polarization
    raise MalformedInput(f"Unknown polarization {name!r} for the {orbit.case} orbit")


def _vector_parity(group, vector):
    parities = {group.spec.by_name[name].parity for name, c in vector.items() if c}
    if len(parities) != 1:
        raise MalformedInput(f"Polarization vector {vector} is not homogeneous")
    return parities.pop()


def polarization_checks(orbit, suite='orbits'):
    """Изотропность, максимальность, стабилизатор, размерности и препятствия"""
    group = orbit.group
    prefix = orbit.case
    certificates = []
    required = stabilizer(orbit)
    for polarization in polarizations(orbit):
        label = f"{prefix}.{polarization.label}"

        def isotropic(p=polarization):
            for u in p.vectors:
                for w in p.vectors:
                    value = orbit.omega_pairing(u, w)
                    expect_true(not value, f"{p.label}: <[u,w], mu> = 0",
                                f"{_element_text(u)}, {_element_text(w)}: {value}")

        def contains_stabilizer(p=polarization):
            for name in required:
                expect_true(any(u == {name: orbit.ctx.one} for u in p.vectors),
                            f"{p.label} contains {name}")

        def dimension(p=polarization):
            counts = [0, 0]
            for u in p.vectors:
                counts[int(_vector_parity(group, u))] += 1
            expect_equal(tuple(counts), tuple(p.dimension), f"{p.label}: dimension")

        def maximal(p=polarization):
            for c in p.complement:
                values = [orbit.omega_pairing(c, w) for w in p.vectors + [c]]
                expect_true(any(values), f"{p.label}: {_element_text(c)} can be added")

        certificates.append(run_check(suite, f"{label}.isotropic", isotropic))
        certificates.append(run_check(suite, f"{label}.stabilizer", contains_stabilizer))
        certificates.append(run_check(suite, f"{label}.dimension", dimension))
        certificates.append(run_check(suite, f"{label}.maximal", maximal))
    for i, entry in enumerate(_case_display(orbit.case).get('obstructions', [])):
        def obstruction(entry=entry):
            params = {'eps': 1}
            left = _parse_map(entry['left'], orbit.ctx, params)
            right = _parse_map(entry['right'], orbit.ctx, params)
            expected = parse(str(entry['value']), orbit.ctx, params)
            expect_equal(orbit.omega_pairing(left, right), expected,
                         f"{prefix}: <[{_element_text(left)}, {_element_text(right)}], mu>")
        certificates.append(run_check(suite, f"{prefix}.obstruction[{i}]", obstruction))
    return certificates


def orbit_report(orbit):
    """Блок отчёта: тип, метки, карта, ω, стабилизатор и поляризации"""
    report = orbit.describe()
    report['omega'] = str(kks_form(orbit))
    report['stabilizer'] = stabilizer(orbit)
    report['polarizations'] = [p.as_dict() for p in polarizations(orbit)]
    return report
