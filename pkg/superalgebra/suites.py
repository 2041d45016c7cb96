"""Наборы проверок, запускаемые командой verify"""
import logging
import random
from fractions import Fraction

from django.conf import settings

from .certificates import expect_equal, expect_true, run_check, run_checks
from .compare import compare_certificates
from .conventions import STANDARD, all_combinations
from .exceptions import MalformedInput, SuperAlgebraError
from .expressions import parse, parse_form
from .liegroup import standard_group
from .loaders import displays
from .oddfamily import (
    DifferentialOperator, OddFamilyDecomposition, SubspaceSpec, berezin_fourier,
    berezin_fourier_expanded, certify, exp_action, family_element, family_operator,
    fourier_inverse, independent_coefficients, induced_action_check, right_adjoint,
)
from .orbits import (
    CASES, classify, generic_orbit, kks_form, label_checks, polarization_checks,
    polarizations, stabilizer_checks, symplectic_checks,
)
from .quantize import (
    action_check, connection_for, curvature_check, lift_checks, representation_checks,
    solution_checks,
)
from .regrep import build_I_operators, families, regrep_certificates, regular_operator, subspace_catalog
from .symkernel import (
    IMAG, Parity, berezin_multiple, exp_nilpotent, inverse, partial_even, partial_odd_left, to_coeff,
)

logger = logging.getLogger(__name__)

EVEN_POOL = ('a1', 'a2', 'a3', 'b')
ODD_POOL = ('alpha4', 'alpha5', 'alpha6', 'beta')


def random_cases():
    return int(getattr(settings, 'SUPERQUANT_RANDOM_CASES', 1000))


# --- ядро ---------------------------------------------------------------------

def random_scalar(ctx, rng, parity=Parity.EVEN, size=3):
    """Случайный однородный элемент: многочлен от чётных на нечётные слова"""
    lengths = (0, 2, 4) if parity == Parity.EVEN else (1, 3)
    total = ctx.zero
    for _ in range(size):
        term = ctx.const(Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
        for name in rng.sample(EVEN_POOL, rng.randint(0, 2)):
            term = term * ctx.scalar(name)
        for name in rng.sample(ODD_POOL, rng.choice(lengths)):
            term = term * ctx.scalar(name)
        total = total + term
    return total


def _sign(x, y):
    return -1 if x.parity() == Parity.ODD and y.parity() == Parity.ODD else 1


def kernel_certificates(suite='kernel', cases=None, seed=0):
    """Законы суперкоммутативной алгебры на случайных элементах и нормировка Березина"""
    ctx = standard_group().ctx
    rng = random.Random(seed)
    cases = cases or random_cases()
    samples = []
    for _ in range(cases):
        parities = [rng.choice((Parity.EVEN, Parity.ODD)) for _ in range(3)]
        samples.append(tuple(random_scalar(ctx, rng, p) for p in parities))

    def commutativity():
        for x, y, _ in samples:
            expect_equal(x * y, (y * x).scale(_sign(x, y)), "graded commutativity")

    def associativity():
        for x, y, z in samples:
            expect_equal((x * y) * z, x * (y * z), "associativity")

    def derivations():
        for x, y, _ in samples:
            for name in ('alpha4', 'beta'):
                sign = -1 if x.parity() == Parity.ODD else 1
                expected = partial_odd_left(x, name) * y + (x * partial_odd_left(y, name)).scale(sign)
                expect_equal(partial_odd_left(x * y, name), expected, f"Leibniz rule for d/d{name}")
            expected = partial_even(x, 'a1') * y + x * partial_even(y, 'a1')
            expect_equal(partial_even(x * y, 'a1'), expected, "Leibniz rule for d/da1")

    def exponentials():
        for x, y, _ in samples:
            a, b = x.even_part().soul(), y.even_part().soul()
            expect_equal(exp_nilpotent(a + b), exp_nilpotent(a) * exp_nilpotent(b), "exp(a + b)")

    def units():
        for x, _, _ in samples:
            u = ctx.const(2) + x.even_part().soul()
            expect_equal(inverse(u) * u, ctx.one, "inverse")

    def berezin():
        names = ('lam1', 'lam2', 'lam3', 'lam4')
        for n in range(1, len(names) + 1):
            top = ctx.one
            for name in reversed(names[:n]):
                top = top * ctx.scalar(name)
            expect_equal(berezin_multiple(top, names[:n]), ctx.one, f"Berezin normalization n={n}")

    return [
        run_check(suite, 'laws.commutativity', commutativity),
        run_check(suite, 'laws.associativity', associativity),
        run_check(suite, 'laws.derivations', derivations),
        run_check(suite, 'laws.exponentials', exponentials),
        run_check(suite, 'laws.units', units),
        run_check(suite, 'berezin.normalization', berezin),
    ]


# --- группа ---------------------------------------------------------------------

def group_certificates(suite='group'):
    """Закон группы, поля и формы, скобки, Ad, Coad и фундаментальные поля"""
    group = standard_group()
    ctx = group.ctx
    data = displays()['group']
    g, h, k = group.point(0), group.point(1), group.point(2)

    def associativity():
        left = group.multiply(group.multiply(g, h), k)
        right = group.multiply(g, group.multiply(h, k))
        expect_true(group.points_equal(left, right), "associativity", f"{left} != {right}")

    def inverse_law():
        expect_true(group.points_equal(group.multiply(g, group.inverse(g)), group.identity()),
                    "g g^-1 = e")

    def triple_product():
        value = group.triple_product(g, h)
        for i, text in enumerate(data['triple_product']):
            expect_equal(value[i], parse(str(text), ctx), f"triple product slot {group.names[i]}")

    def frame():
        fields = group.left_invariant_fields()
        for name, coeffs in data['frame'].items():
            expected = group.chart.field({z: parse(str(c), ctx) for z, c in coeffs.items()})
            expect_equal(fields[name], expected, f"left-invariant field {name}")
            expect_true(group.is_left_invariant(fields[name]), f"{name} is left-invariant")

    def forms():
        found = group.left_invariant_forms()
        for name, text in data['forms'].items():
            expect_equal(found[name], parse_form(str(text), group.chart), f"left-invariant form {name}")

    def brackets():
        table = group.structure_constants()
        expected = {(e['left'], e['right']): {k: to_coeff(v) for k, v in e['value'].items()}
                    for e in data['brackets']}
        expect_equal(set(table), set(expected), "nonzero brackets")
        for key, value in expected.items():
            expect_equal(table[key], value, f"bracket {key}")

    def adjoint():
        for name, column in data['adjoint'].items():
            value = group.adjoint(g, group.basis_element(name))
            for b in group.basis:
                expect_equal(value[b.name], parse(str(column.get(b.name, 0)), ctx), f"Ad(g){name} at {b.name}")

    def coadjoint():
        moved = group.coadjoint(g, group.dual_point())
        for name, text in data['coadjoint'].items():
            expect_equal(moved[name], parse(str(text), ctx), f"Coad(g) at {name}")

    def duality():
        mu = group.dual_point()
        element = group.algebra_element()
        expect_equal(group.pairing(element, group.coadjoint(g, mu)),
                     group.pairing(group.adjoint(group.inverse(g), element), mu), "<V, Coad(g)mu>")

    def fundamental():
        field = group.fundamental_field_dual(group.algebra_element())
        for name, text in data['fundamental_field'].items():
            expect_equal(field.coefficient(name), parse(str(text), ctx), f"fundamental field at {name}")

    def homomorphism():
        left, right = group.algebra_element(0), group.algebra_element(1)
        bracket = group.fundamental_field_dual(left).bracket(group.fundamental_field_dual(right))
        expect_equal(bracket, group.fundamental_field_dual(group.bracket_vectors(left, right)),
                     "[X_V, X_W] = X_[V,W]")

    checks = [
        ('law.associativity', associativity), ('law.inverse', inverse_law),
        ('triple_product', triple_product), ('frame', frame), ('forms', forms),
        ('brackets', brackets), ('adjoint', adjoint), ('coadjoint', coadjoint),
        ('duality', duality), ('fundamental_field', fundamental), ('homomorphism', homomorphism),
    ]
    return [run_check(suite, name, check) for name, check in checks]


# --- орбиты и квантование ---------------------------------------------------------

def _point_values(entry):
    return {name: Fraction(str(value)) for name, value in (entry.get('point') or {}).items()}


def orbits_certificates(suite='orbits', conventions=STANDARD):
    """Классификация базовых точек и проверки каждого типа орбит"""
    certificates = []
    for i, entry in enumerate(displays()['classification']):
        def check(entry=entry):
            orbit = classify(_point_values(entry))
            expect_equal(orbit.case, entry['case'], f"case of {entry.get('point') or 'the origin'}")
            return orbit.case
        certificates.append(run_check(suite, f"classify[{i}]", check))
    for case in CASES:
        orbit = generic_orbit(case)
        certificates += symplectic_checks(orbit, conventions=conventions, suite=suite)
        certificates += label_checks(orbit, suite=suite)
        certificates += stabilizer_checks(orbit, suite=suite)
        certificates += polarization_checks(orbit, suite=suite)
    return certificates


def quantize_certificates(suite='quantize', conventions=STANDARD):
    certificates = []
    for case in CASES:
        orbit = generic_orbit(case)
        connection = connection_for(orbit)
        omega = kks_form(orbit, conventions)
        certificates += curvature_check(connection, orbit, omega, conventions, suite)
        certificates += lift_checks(orbit, connection, conventions, suite)
        certificates += action_check(orbit, connection=connection, conventions=conventions, suite=suite)
        for polarization in polarizations(orbit):
            certificates += solution_checks(orbit, polarization, connection=connection,
                                            conventions=conventions, suite=suite)
            certificates += representation_checks(orbit, polarization, suite)
    return certificates


def _convention_checks(conventions):
    """Проверки, чувствительные к соглашениям о знаках"""
    certificates = []
    for case in CASES:
        orbit = generic_orbit(case)
        connection = connection_for(orbit)
        certificates += symplectic_checks(orbit, conventions=conventions, suite='conventions')
        try:
            omega = kks_form(orbit, conventions)
        except SuperAlgebraError as e:
            logger.info(f"{conventions.label}: no KKS form on the {case} orbit ({e})")
            return False
        certificates += curvature_check(connection, orbit, omega, conventions, 'conventions')
        certificates += lift_checks(orbit, connection, conventions, 'conventions')
    return all(c.passed for c in certificates)


def conventions_certificates(suite='conventions'):
    """Ровно одна из 8 комбинаций переключателей проходит проверки орбит и квантования"""
    def check():
        passing = [c for c in all_combinations() if _convention_checks(c)]
        expect_equal([c.label for c in passing], [STANDARD.label], "passing convention combinations")
        return passing[0].label

    return [run_check(suite, 'ledger', check)]


# --- нечётные семейства ------------------------------------------------------------

def one_variable_family(ctx=None):
    """W = функции без ξ, I = iξ − i∂ξ"""
    ctx = ctx or standard_group().ctx
    i = ctx.const(IMAG)
    space = SubspaceSpec('W1', ctx, ('xi',))
    operator = DifferentialOperator(ctx, i * ctx.scalar('xi'), {'xi': -i}, label='I')
    return OddFamilyDecomposition('(W1; I)', space, {'I': operator})


def oddfamily_certificates(suite='oddfamily'):
    """Разложения, преобразование Фурье-Березина и индуцированное действие"""
    ctx = standard_group().ctx
    ops = build_I_operators(ctx)
    catalog = subspace_catalog(ctx)
    decompositions = families(catalog, ops)
    x_family = decompositions['X']
    lambdas = ['lam1', 'lam2']
    single = one_variable_family(ctx)
    certificates = [
        certify(single, suite),
        certify(decompositions['E'], suite),
        certify(x_family, suite),
        certify(OddFamilyDecomposition('(X; I0, I5, I5)', catalog['X'],
                                       {'I0': ops['I0'], 'I5': ops['I5'], 'I5*': ops['I5']},
                                       ambient=catalog['W']), suite, expected_failure=True),
    ]

    def one_variable():
        value = family_element(single, ctx.one, ['lam1'])
        expect_equal(value, parse('1 + I*lam1*xi', ctx), "e^(lam1 I)(1)")
        w0, w1 = ctx.scalar('c0'), ctx.scalar('c1')
        f = w0 + ctx.scalar('lam1') * w1
        expect_equal(berezin_fourier(single, f, ['lam1']), w1 + single.maps['I'](w0), "n = 1 transform")

    def inverse_family():
        w = x_family.space.generic()
        forward = family_element(x_family, w, lambdas)
        expect_equal(exp_action(family_operator(x_family, lambdas, sign=-1), forward), w,
                     "e^(-lambda I) e^(lambda I) = id")

    def adjoint_operators():
        phi = regular_operator()
        w = x_family.space.generic()
        first = right_adjoint(ops['I0'].scaled(ctx.scalar('lam1')))
        second = right_adjoint(ops['I4'].scaled(ctx.scalar('lam2')))
        expect_true(first(phi).parity == Parity.EVEN, "right adjoint preserves parity")
        expect_true(not first(first(phi))(w), "right adjoint squares to zero", first(first(phi))(w))
        expect_equal(first(second(phi))(w), second(first(phi))(w), "right adjoints commute")

    def sign_table():
        parts = [x_family.space.generic(offset) for offset in (0, 40, 80, 120)]
        lam1, lam2 = ctx.scalar('lam1'), ctx.scalar('lam2')
        f = parts[0] + lam1 * parts[1] + lam2 * parts[2] + lam2 * lam1 * parts[3]
        transformed = berezin_fourier(x_family, f, lambdas)
        expect_equal(transformed, berezin_fourier_expanded(x_family, f, lambdas), "sign table")
        expect_equal(fourier_inverse(x_family, transformed, lambdas), f, "inverse transform")

    def induced():
        induced_action_check(x_family, regular_operator(), ['lambda0', 'lambda4'])

    def coefficients():
        lam1, lam2 = ctx.scalar('lam1'), ctx.scalar('lam2')
        w1, w2 = x_family.space.generic(), x_family.space.generic(60)
        found = independent_coefficients(x_family.space, lam1 * w1 + lam2 * w2, lambdas)
        expect_equal(found, {('lam1',): w1, ('lam2',): w2}, "coefficients by lambda words")

    certificates.append(run_checks(suite, 'transforms', [
        ('one_variable', one_variable),
        ('inverse_family', inverse_family),
        ('right_adjoint', adjoint_operators),
        ('sign_table', sign_table),
        ('induced_action', induced),
        ('independent_coefficients', coefficients),
    ]))
    return certificates


SUITES = {
    'kernel': kernel_certificates,
    'group': group_certificates,
    'orbits': orbits_certificates,
    'quantize': quantize_certificates,
    'oddfamily': oddfamily_certificates,
    'regrep': regrep_certificates,
    'compare': compare_certificates,
    'conventions': conventions_certificates,
}


def suite_names(name=None):
    if not name or name == 'all':
        return list(SUITES)
    if name not in SUITES:
        raise MalformedInput(f"Unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return [name]


def run_suite(name):
    """Сертификаты одного набора"""
    logger.info(f"Running suite {name}")
    certificates = SUITES[suite_names(name)[0]]()
    failed = [c for c in certificates if not c.ok]
    logger.info(f"Suite {name}: {len(certificates) - len(failed)}/{len(certificates)} checks ok")
    return certificates
