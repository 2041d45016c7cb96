"""Левое регулярное представление группы, его Фурье-моды и операторы I₀, I₄, I₅, I₆.

Функции на группе записываются в координатах копии 0 (a1 a2 a3 b alpha4 alpha5
alpha6 beta), элемент ĝ - в координатах копии 1. Подпространства каталога
проверяются в координатах γ = β + ½a1α⁴ − ½a3α⁵ (и ξ, ζ для V±).
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations

from sympy.polys.domains import QQ

from .certificates import expect_equal, expect_true, run_check, run_checks
from .exceptions import MalformedInput, NotInvertible, ParityMismatch, VerificationFailure
from .expressions import parse
from .liegroup import standard_group
from .loaders import displays, pool
from .oddfamily import (
    DifferentialOperator, LinearOperator, OddFamilyDecomposition, SubspaceSpec,
    SubstitutionOperator, certify, conjugated, family_element, graded_commutator,
    invariance_certificate, sum_parity,
)
from .supercalc import linear_equations, solve_linear
from .symkernel import (
    IMAG, Parity, basis_element, exp_nilpotent, inverse, partial, split_by, substitute,
)

logger = logging.getLogger(__name__)

HALF = QQ(1, 2)

COORDINATES = ('a1', 'a2', 'a3', 'b', 'alpha4', 'alpha5', 'alpha6', 'beta')
GAMMA_COORDINATES = ('a1', 'a2', 'a3', 'b', 'alpha4', 'alpha5', 'alpha6', 'gamma')
PM_COORDINATES = ('a1', 'a2', 'a3', 'b', 'alpha4', 'xi', 'zeta', 'gamma')
PM_PLAIN_COORDINATES = ('a1', 'a2', 'a3', 'b', 'alpha4', 'xi', 'zeta', 'beta')
EVEN_COORDINATES = ('a1', 'a2', 'a3', 'b')
MODES = {'a1': 'l1', 'a2': 'l2', 'a3': 'l3', 'b': 'l0'}

MODE = 'mode'
PM = 'pm'
LAMBDA6 = 'lambda6'
FULL = 'full'
TIERS = {
    MODE: ('a1', 'alpha5', 'alpha6'),
    PM: ('a1', 'alpha5', 'alpha6'),
    LAMBDA6: ('a1', 'alpha5'),
    FULL: (),
}


def _display(key):
    return displays()['regrep'][key]


def _label(ctx, value, parity=Parity.EVEN):
    """Метка моды: имя символа, число или элемент алгебры"""
    x = ctx.scalar(value) if isinstance(value, str) else ctx.coerce(value)
    if x and x.parity() != parity:
        raise ParityMismatch(f"Label {x} must be {Parity.parse(parity).name}")
    return x


def _nonzero_label(x):
    if not x:
        return False
    return x.is_unit() or (x.is_constant() and bool(x.constant_term()))


# --- регулярное действие ------------------------------------------------------

def left_regular_action(f, point=None, copy=1, group=None):
    """(Φ_ĝ f)(g) = f(ĝ⁻¹·g)"""
    group = group or standard_group()
    point = point if point is not None else group.point(copy)
    moved = group.multiply(group.inverse(point), group.point())
    return substitute(f, group.translation_map(moved))


def regular_operator(point=None, copy=1, group=None):
    group = group or standard_group()
    point = point if point is not None else group.point(copy)
    moved = group.multiply(group.inverse(point), group.point())
    return SubstitutionOperator(group.translation_map(moved), label='Φ')


def gamma_maps(ctx):
    """β -> γ и обратно"""
    s = ctx.scalar
    correction = (s('a1') * s('alpha4') - s('a3') * s('alpha5')).scale(HALF)
    return {'beta': s('gamma') - correction}, {'gamma': s('beta') + correction}


def pm_maps(ctx, eps, gamma=True):
    """α⁵, α⁶ -> ξ = α⁵ + εα⁶, ζ = α⁵ − εα⁶"""
    s = ctx.scalar
    alpha5 = (s('xi') + s('zeta')).scale(HALF)
    alpha6 = (s('xi') - s('zeta')).scale(QQ(eps, 2))
    to_adapted = {'alpha5': alpha5, 'alpha6': alpha6}
    from_adapted = {'xi': s('alpha5') + s('alpha6').scale(eps), 'zeta': s('alpha5') - s('alpha6').scale(eps)}
    if gamma:
        to_adapted['beta'] = s('gamma') - (s('a1') * s('alpha4') - s('a3') * alpha5).scale(HALF)
        from_adapted['gamma'] = s('beta') + (s('a1') * s('alpha4') - s('a3') * s('alpha5')).scale(HALF)
    return to_adapted, from_adapted


def build_I_operators(ctx=None):
    """I₀, I₄, I₅, I₆ в исходных координатах"""
    ctx = ctx or standard_group().ctx
    s = ctx.scalar
    i = ctx.const(IMAG)
    gamma = s('beta') + (s('a1') * s('alpha4') - s('a3') * s('alpha5')).scale(HALF)
    return {
        'I0': DifferentialOperator(ctx, i * gamma, {'beta': -i}, label='I0'),
        'I4': DifferentialOperator(ctx, i * s('alpha4'),
                                   {'alpha4': -i, 'beta': (i * s('a1')).scale(HALF)}, label='I4'),
        'I5': DifferentialOperator(ctx, i * s('alpha5'),
                                   {'alpha5': -i, 'beta': -(i * s('a3')).scale(HALF)}, label='I5'),
        'I6': DifferentialOperator(ctx, i * s('alpha6'), {'alpha6': -i}, label='I6'),
    }


# координата, в которой I имеет вид iζ − i∂ζ
ADAPTED_COORDINATE = {'I0': 'gamma', 'I4': 'alpha4', 'I5': 'alpha5', 'I6': 'alpha6'}


def standard_form(ctx, name):
    i = ctx.const(IMAG)
    return DifferentialOperator(ctx, i * ctx.scalar(name), {name: -i}, label=f"i{name} - i∂{name}")


# --- подпространства -------------------------------------------------------------

def mode_factor(ctx, l0=0, l1=0, l2='l2', l3='l3'):
    """e^{i(ℓ₁a¹ + ℓ₂a² + ℓ₃a³ + ℓ₀(b + ½a¹a²))}"""
    s = ctx.scalar
    l0, l1, l2, l3 = (_label(ctx, v) for v in (l0, l1, l2, l3))
    exponent = (l1 * s('a1') + l2 * s('a2') + l3 * s('a3')
                + l0 * (s('b') + (s('a1') * s('a2')).scale(HALF)))
    return exp_nilpotent(exponent.scale(IMAG))


def pm_factor(ctx, l0, eps):
    """e^{−(i/2)ℓ₀εα⁵α⁶}"""
    value = _label(ctx, l0) * ctx.scalar('alpha5') * ctx.scalar('alpha6')
    return exp_nilpotent(value.scale(IMAG).scale(QQ(-eps, 2)))


def subspace_catalog(ctx=None, l0='l0', l1='l1', l2='l2', l3='l3'):
    """Именованные подпространства: V, E, W, X, X±, W0, X0, Y, S, R, R1, C"""
    ctx = ctx or standard_group().ctx
    to_gamma, from_gamma = gamma_maps(ctx)
    f_w = mode_factor(ctx, l0=l0, l2=l2, l3=l3)
    f_0 = mode_factor(ctx, l2=l2, l3=l3)
    f_c = mode_factor(ctx, l1=l1, l2=l2, l3=l3)
    odd = ('alpha4', 'alpha5', 'alpha6')
    a1_mode = {'a1': MODES['a1']}

    def gamma_space(name, even, odd_names, factor, modes=a1_mode):
        return SubspaceSpec(name, ctx, GAMMA_COORDINATES, even, odd_names, factor,
                            to_gamma, from_gamma, modes)

    def plain_space(name, even, odd_names, factor):
        return SubspaceSpec(name, ctx, COORDINATES, even, odd_names, factor, modes=a1_mode)

    catalog = {
        'V': gamma_space('V', EVEN_COORDINATES, odd + ('gamma',), None, MODES),
        'E': gamma_space('E', EVEN_COORDINATES, (), None, MODES),
        'W': gamma_space('W', ('a1',), odd + ('gamma',), f_w),
        'X': gamma_space('X', ('a1',), ('alpha5', 'alpha6'), f_w),
        'W0': gamma_space('W0', ('a1',), odd + ('gamma',), f_0),
        'X0': gamma_space('X0', ('a1',), ('alpha5', 'alpha6'), f_0),
        'Y': gamma_space('Y', ('a1',), ('alpha5',), f_0),
        'S': plain_space('S', ('a1',), (), f_0),
        'R': plain_space('R', ('a1',), odd, f_0),
        'R1': plain_space('R1', (), odd, f_c),
        'C': plain_space('C', (), (), f_c),
    }
    for eps in (1, -1):
        name = 'X+' if eps > 0 else 'X-'
        to_adapted, from_adapted = pm_maps(ctx, eps)
        catalog[name] = SubspaceSpec(name, ctx, PM_COORDINATES, ('a1',), ('xi',),
                                     f_w * pm_factor(ctx, l0, eps), to_adapted, from_adapted, a1_mode)
    return catalog


def families(catalog=None, operators=None):
    """Разложения по нечётным семействам из сводной таблицы"""
    catalog = catalog or subspace_catalog()
    ops = operators or build_I_operators(catalog['V'].ctx)

    def pick(*labels):
        return {label: ops[label] for label in labels}

    result = {
        'E': OddFamilyDecomposition('(E; I0, I4, I5, I6)', catalog['E'], pick('I0', 'I4', 'I5', 'I6'),
                                    ambient=catalog['V']),
        'X': OddFamilyDecomposition('(X; I0, I4)', catalog['X'], pick('I0', 'I4'), ambient=catalog['W']),
        'Y': OddFamilyDecomposition('(Y; I0, I4, I6)', catalog['Y'], pick('I0', 'I4', 'I6'),
                                    ambient=catalog['W0']),
        'S': OddFamilyDecomposition('(S; I4, I5, I6)', catalog['S'], pick('I4', 'I5', 'I6'),
                                    ambient=catalog['R']),
        'C': OddFamilyDecomposition('(C; I4, I5, I6)', catalog['C'], pick('I4', 'I5', 'I6'),
                                    ambient=catalog['R1']),
    }
    for name in ('X+', 'X-'):
        result[name] = OddFamilyDecomposition(f"({name}; I4)", catalog[name], pick('I4'),
                                              ambient=catalog['W'])
    return result


# --- Фурье-моды ----------------------------------------------------------------

@dataclass(frozen=True)
class ComponentVector:
    """Компоненты по нечётным словам: x = Σ слово·компонента"""
    variables: tuple
    words: tuple
    entries: tuple

    @classmethod
    def of(cls, x, variables):
        ctx = x.ctx
        symbols = sorted((ctx[v] for v in variables), key=lambda s: s.index)
        words = []
        for k in range(len(symbols) + 1):
            words.extend(combinations(symbols, k))
        parts = split_by(x, symbols)
        extra = [key for key in parts if key[1] or key[2]]
        if extra:
            raise MalformedInput(f"{x} depends on {variables} beyond odd words")
        entries = tuple(parts.get((tuple(s.index for s in word), (), ()), ctx.zero) for word in words)
        return cls(tuple(s.name for s in symbols), tuple(tuple(s.name for s in w) for w in words), entries)

    def to_scalar(self):
        ctx = self.entries[0].ctx
        total = ctx.zero
        for word, entry in zip(self.words, self.entries):
            key = (tuple(ctx[name].index for name in word), (), ())
            total = total + basis_element(ctx, key) * entry
        return total

    def as_dict(self):
        return {'·'.join(word) or '1': str(entry) for word, entry in zip(self.words, self.entries)}


@dataclass
class FourierModeSpec:
    """Метки моды и уровень: V_(ℓ₀,ℓ₂,ℓ₃,λ₀,λ₄), V±, V_(…),(λ₆) или V_(…),(ℓ₁,λ₅,λ₆)"""
    tier: str = MODE
    l0: object = 'l0'
    l1: object = 0
    l2: object = 'l2'
    l3: object = 'l3'
    lambda0: object = 'lambda0'
    lambda4: object = 'lambda4'
    lambda5: object = 0
    lambda6: object = 0
    eps: int = 1
    ctx: object = field(default=None, repr=False)

    def __post_init__(self):
        if self.tier not in TIERS:
            raise MalformedInput(f"Unknown mode tier {self.tier!r}")
        if self.eps not in (1, -1):
            raise MalformedInput(f"eps must be +1 or -1, got {self.eps!r}")
        self.ctx = self.ctx or standard_group().ctx
        for name in ('l0', 'l1', 'l2', 'l3'):
            setattr(self, name, _label(self.ctx, getattr(self, name)))
        for name in ('lambda0', 'lambda4', 'lambda5', 'lambda6'):
            setattr(self, name, _label(self.ctx, getattr(self, name), Parity.ODD))
        self._validate()

    def _validate(self):
        tier = self.tier
        if tier in (MODE, PM) and (self.l1 or self.lambda5 or self.lambda6):
            raise MalformedInput(f"Tier {tier} has no l1, lambda5 or lambda6 labels")
        if tier == PM:
            if self.lambda0:
                raise MalformedInput("Tier pm requires lambda0 = 0")
            if not _nonzero_label(self.l0):
                raise NotInvertible(f"Tier pm requires an invertible l0, got {self.l0}")
        if tier == LAMBDA6 and (self.l0 or self.l1 or self.lambda5):
            raise MalformedInput("Tier lambda6 requires l0 = 0 and no l1, lambda5")
        if tier == FULL and (self.l0 or self.lambda0):
            raise MalformedInput("Tier full requires l0 = lambda0 = 0")

    @property
    def variables(self):
        return TIERS[self.tier]

    def factor(self):
        ctx = self.ctx
        s = ctx.scalar
        odd = (self.lambda4 * s('alpha4')
               + self.lambda0 * (s('beta') + (s('a1') * s('alpha4') - s('a3') * s('alpha5')).scale(HALF))
               + self.lambda5 * s('alpha5') + self.lambda6 * s('alpha6'))
        return mode_factor(ctx, self.l0, self.l1, self.l2, self.l3) * exp_nilpotent(odd.scale(IMAG))

    def multiplier(self):
        """M = Φ_ĝ(F)/F, не зависящий от координат вне моды"""
        if '_multiplier' in self.__dict__:
            return self.__dict__['_multiplier']
        factor = self.factor()
        value = left_regular_action(factor) * inverse(factor)
        forbidden = [name for name in COORDINATES if name not in self.variables]
        if value.depends_on(*forbidden):
            raise VerificationFailure(
                f"Multiplier of {self.tier} mode depends on {[n for n in forbidden if value.depends_on(n)]}",
                witness=str(value))
        self.__dict__['_multiplier'] = value
        return value

    def shift(self):
        ctx = self.ctx
        group = standard_group()
        hats = {b.copies[0]: b.copies[1] for b in group.basis}
        return {name: ctx.scalar(name) - ctx.scalar(hats[name]) for name in self.variables}

    def mode_action(self, t):
        """Ψ_ĝ t = t(a¹ − â¹, α⁵ − α̂⁵, α⁶ − α̂⁶)·M"""
        return substitute(t, self.shift()) * self.multiplier()

    def embed(self, t):
        return t * self.factor()

    def embedding_check(self, t):
        expect_equal(left_regular_action(self.embed(t)), self.embed(self.mode_action(t)),
                     f"{self.tier}: embedding intertwines the actions")

    # --- V± -------------------------------------------------------------------

    def _pm_exponential(self, sign=1):
        return pm_factor(self.ctx, self.l0, self.eps * sign)

    def pm_embed(self, h):
        """h(a¹, ξ) -> h(a¹, α⁵ + εα⁶)·e^{−(i/2)ℓ₀εα⁵α⁶}"""
        s = self.ctx.scalar
        return substitute(h, {'xi': s('alpha5') + s('alpha6').scale(self.eps)}) * self._pm_exponential()

    def pm_reduce(self, t):
        s = self.ctx.scalar
        h = substitute(t * self._pm_exponential(-1), {'alpha5': s('xi') - s('alpha6').scale(self.eps)})
        if h.depends_on('alpha6'):
            raise VerificationFailure(f"Mode function does not lie in V{'+' if self.eps > 0 else '-'}",
                                      witness=str(h))
        return h

    def pm_action(self, h):
        if self.tier != PM:
            raise MalformedInput(f"pm_action needs tier pm, got {self.tier}")
        return self.pm_reduce(self.mode_action(self.pm_embed(h)))

    def space(self):
        """Подпространство V-моды в функциях на группе"""
        ctx = self.ctx
        factor = self.factor()
        if self.tier == PM:
            to_adapted, from_adapted = pm_maps(ctx, self.eps, gamma=False)
            return SubspaceSpec(f"V{'+' if self.eps > 0 else '-'}", ctx, PM_PLAIN_COORDINATES, ('a1',),
                                ('xi',), factor * self._pm_exponential(), to_adapted, from_adapted,
                                {'a1': MODES['a1']})
        even = [v for v in self.variables if not ctx[v].is_odd]
        odd = [v for v in self.variables if ctx[v].is_odd]
        return SubspaceSpec(f"V[{self.tier}]", ctx, COORDINATES, even, odd, factor,
                            modes={'a1': MODES['a1']} if 'a1' in even else None)

    def as_dict(self):
        return {
            'tier': self.tier,
            'labels': {name: str(getattr(self, name)) for name in
                       ('l0', 'l1', 'l2', 'l3', 'lambda0', 'lambda4', 'lambda5', 'lambda6')},
            'eps': self.eps,
        }


def epsilon_split(t, l0):
    """t(a¹, α⁵, α⁶) = Σ_ε h_ε(a¹, α⁵ + εα⁶)·e^{−(i/2)ℓ₀εα⁵α⁶}: пара (h₊, h₋) от (a¹, ξ)"""
    ctx = t.ctx
    l0_inv = inverse(_label(ctx, l0))
    t0, t5, t6, t56 = ComponentVector.of(t, ('alpha5', 'alpha6')).entries
    correction = (l0_inv * t56).scale(IMAG)
    xi = ctx.scalar('xi')
    h_plus = t0.scale(HALF) + correction + xi * (t5 + t6).scale(HALF)
    h_minus = t0.scale(HALF) - correction + xi * (t5 - t6).scale(HALF)
    return h_plus, h_minus


def reconstruct(h_plus, h_minus, l0):
    ctx = h_plus.ctx
    s = ctx.scalar
    total = ctx.zero
    for eps, h in ((1, h_plus), (-1, h_minus)):
        total = total + (substitute(h, {'xi': s('alpha5') + s('alpha6').scale(eps)}) * pm_factor(ctx, l0, eps))
    return total


# --- генераторы --------------------------------------------------------------

def _hat(group, direction):
    for b in group.basis:
        if direction in (b.name, b.copies[0], b.copies[1]):
            return group.ctx[b.copies[1]]
    raise MalformedInput(f"Unknown direction {direction!r}")


def infinitesimal_generator(action, direction, parity=None, group=None):
    """h -> ∂ˡ_{ĝ-направление} (Ψ_ĝ h) в единице"""
    group = group or standard_group()
    hat = _hat(group, direction)
    at_identity = group.translation_map(group.identity(), copy=1)
    if parity is None:
        parity = getattr(action, 'parity', Parity.EVEN)
    return LinearOperator(lambda h: substitute(partial(action(h), hat), at_identity),
                          sum_parity(Parity.parse(parity), hat.parity), f"d{hat.name}")


def component_matrix(op, variables):
    """Матрица оператора на компонентах по нечётным словам (столбец j - образ слова j)"""
    ctx = standard_group().ctx
    symbols = sorted((ctx[v] for v in variables), key=lambda s: s.index)
    columns = []
    for k in range(len(symbols) + 1):
        for word in combinations(symbols, k):
            basis = ctx.one
            for s in word:
                basis = basis * ctx.scalar(s)
            columns.append(ComponentVector.of(op(basis), variables).entries)
    return [[column[i] for column in columns] for i in range(len(columns))]


def _parse_matrix(rows, ctx, params=None):
    return [[parse(str(entry), ctx, params) for entry in row] for row in rows]


def reduced(op, space):
    """Оператор на адаптированных функциях подпространства"""
    return LinearOperator(lambda h: space.adapted(op(space.original(h))), op.parity, f"{op.label}|{space.name}")


# --- проверки ------------------------------------------------------------------

def representation_checks(suite='regrep'):
    """Гомоморфность Φ и действие на W в координатах γ"""
    group = standard_group()
    ctx = group.ctx
    catalog = subspace_catalog(ctx)

    def homomorphism():
        f = catalog['V'].generic()
        lhs = left_regular_action(left_regular_action(f, group.point(2)), group.point(1))
        rhs = left_regular_action(f, group.multiply(group.point(1), group.point(2)))
        expect_equal(lhs, rhs, "Phi(g1) Phi(g2) = Phi(g1 g2)")

    def identity():
        f = catalog['V'].generic(40)
        expect_equal(left_regular_action(f, group.identity()), f, "Phi(e) = id")

    def w_action():
        data = _display('w_action')
        space = catalog['W']
        h = space.adapted(space.generic())
        shift = {name: parse(text, ctx) for name, text in data['shift'].items()}
        expected = substitute(h, shift) * parse(data['multiplier'], ctx)
        expect_equal(space.adapted(left_regular_action(space.original(h))), expected, "action on W")

    return [run_check(suite, 'regular.homomorphism', homomorphism),
            run_check(suite, 'regular.identity', identity),
            run_check(suite, 'regular.w_action', w_action)]


def operator_checks(suite='regrep'):
    """[I_i, I_j] = 2δ_ij·id, вид iζ − i∂ζ и сертификаты разложений"""
    ctx = standard_group().ctx
    catalog = subspace_catalog(ctx)
    ops = build_I_operators(ctx)
    sample = catalog['V'].generic()
    to_gamma, from_gamma = gamma_maps(ctx)

    def commutators():
        for i, j in combinations(ops, 2):
            value = graded_commutator(ops[i], ops[j])(sample)
            expect_true(not value, f"[{i}, {j}] = 0", value)
        for name, op in ops.items():
            expect_equal(graded_commutator(op, op)(sample), sample.scale(2), f"[{name}, {name}] = 2 id")

    def adapted_forms():
        adapted = catalog['V'].adapted(sample)
        for name, op in ops.items():
            expect_equal(conjugated(op, to_gamma, from_gamma)(adapted),
                         standard_form(ctx, ADAPTED_COORDINATE[name])(adapted),
                         f"{name} in adapted coordinates")

    def values():
        expect_equal(ops['I4'](ctx.one), ctx.scalar('alpha4').scale(IMAG), "I4(1)")
        expect_equal(ops['I6'](ctx.scalar('alpha6')), ctx.const(-IMAG), "I6(alpha6)")

    certificates = [run_check(suite, 'operators.commutators', commutators),
                    run_check(suite, 'operators.adapted', adapted_forms),
                    run_check(suite, 'operators.values', values)]
    decompositions = families(catalog, ops)
    for key in ('E', 'X', 'Y', 'S', 'C'):
        certificates.append(certify(decompositions[key], suite))
    return certificates


def catalog_checks(suite='regrep'):
    """Включения S ⊂ Y ⊂ X0 и X± ⊂ X ⊂ W, члены и нечлены каталога"""
    ctx = standard_group().ctx
    catalog = subspace_catalog(ctx)

    def inclusion(inner, outer):
        def check():
            catalog[outer].check(catalog[inner].generic(60), f"generic element of {inner} in {outer}")
        return check

    def gamma_dependent():
        f = catalog['X'].original(ctx.scalar('gamma') * ctx.scalar('alpha5'))
        expect_true(not catalog['X'].contains(f), "gamma-dependent element is not in X", f)

    def pm_member():
        s = ctx.scalar
        for eps, name in ((1, 'X+'), (-1, 'X-')):
            h = ctx.scalar('c0') + ctx.scalar('c1') * (s('alpha5') + s('alpha6').scale(eps))
            f = catalog['W'].factor * pm_factor(ctx, 'l0', eps) * h
            catalog[name].check(f, f"element of {name}")

    def constants():
        for name in ('V', 'E'):
            catalog[name].check(ctx.const(3), f"constant in {name}")

    certificates = [run_check(suite, f"catalog.{inner}<{outer}", inclusion(inner, outer))
                    for inner, outer in (('S', 'Y'), ('Y', 'X0'), ('X+', 'X'), ('X-', 'X'), ('X', 'W'))]
    certificates += [run_check(suite, 'catalog.gamma_dependent', gamma_dependent),
                     run_check(suite, 'catalog.pm_member', pm_member),
                     run_check(suite, 'catalog.constants', constants)]
    return certificates


def mode_checks(suite='regrep'):
    """Множители мод и их сужения, V± и ε-разложение"""
    ctx = standard_group().ctx
    data = _display('multipliers')
    specs = {
        'mode': FourierModeSpec(ctx=ctx),
        'lambda0_zero': FourierModeSpec(lambda0=0, ctx=ctx),
        'l0_zero': FourierModeSpec(l0=0, ctx=ctx),
        'lambda6': FourierModeSpec(LAMBDA6, l0=0, lambda6='lambda6', ctx=ctx),
        'full': FourierModeSpec(FULL, l0=0, l1='l1', lambda0=0, lambda5='lambda5', lambda6='lambda6', ctx=ctx),
    }
    certificates = []
    for key, spec in specs.items():
        def multiplier(spec=spec, key=key):
            expect_equal(spec.multiplier(), parse(data[key], ctx), f"{key} multiplier")
        certificates.append(run_check(suite, f"mode.{key}", multiplier))

    t_space = SubspaceSpec('T', ctx, ('a1', 'alpha5', 'alpha6'), ('a1',), ('alpha5', 'alpha6'),
                           modes={'a1': MODES['a1']})

    def embedding():
        specs['mode'].embedding_check(t_space.generic())

    def at_identity():
        spec = specs['mode']
        t = t_space.generic(20)
        identity = standard_group().translation_map(standard_group().identity(), copy=1)
        expect_equal(substitute(spec.mode_action(t), identity), t, "Psi(e) = id")

    def full_mode():
        spec = specs['full']
        c = ctx.scalar('c0')
        value = left_regular_action(spec.embed(c))
        expect_equal(value, parse(data['full'], ctx) * spec.embed(c), "full mode transforms by a character")

    def pm_action():
        pm = _display('pm')
        for eps in (1, -1):
            spec = FourierModeSpec(PM, lambda0=0, eps=eps, ctx=ctx)
            h = SubspaceSpec('H', ctx, ('a1', 'xi'), ('a1',), ('xi',), modes={'a1': MODES['a1']}).generic()
            params = {'eps': eps}
            shift = {name: parse(text, ctx, params) for name, text in pm['shift'].items()}
            expected = substitute(h, shift) * parse(pm['multiplier'], ctx, params)
            expect_equal(spec.pm_action(h), expected, f"V{eps:+d} action")

    def split():
        l0 = ctx.scalar('l0')
        half = ctx.const(HALF)
        expect_equal(epsilon_split(ctx.one, l0), (half, half), "split of 1")
        i_over = inverse(l0).scale(IMAG)
        expect_equal(epsilon_split(ctx.scalar('alpha5') * ctx.scalar('alpha6'), l0), (i_over, -i_over),
                     "split of alpha5 alpha6")
        t = t_space.generic(80)
        expect_equal(reconstruct(*epsilon_split(t, l0), l0), t, "reconstruct after split")

    certificates += [run_check(suite, 'mode.embedding', embedding),
                     run_check(suite, 'mode.identity', at_identity),
                     run_check(suite, 'mode.full_character', full_mode),
                     run_check(suite, 'mode.pm', pm_action),
                     run_check(suite, 'mode.epsilon_split', split)]
    return certificates


def commutator_checks(suite='regrep'):
    """[Φ, I₄], [Φ, I₀ + xI₄] и [Φ, I₀ + xI₄ + yI₆] как множители при Φ"""
    ctx = standard_group().ctx
    catalog = subspace_catalog(ctx)
    ops = build_I_operators(ctx)
    phi = regular_operator()
    data = _display('commutators')
    px, py = ctx.scalar('px'), ctx.scalar('py')
    cases = {
        'i4': (ops['I4'], catalog['W']),
        'x': (ops['I0'] + ops['I4'].scaled(px), catalog['W']),
        'y': (ops['I0'] + ops['I4'].scaled(px) + ops['I6'].scaled(py), catalog['W0']),
    }
    certificates = []
    for key, (op, space) in cases.items():
        def check(op=op, space=space, key=key):
            w = space.generic()
            expect_equal(graded_commutator(phi, op)(w), parse(data[key], ctx) * phi(w), f"[Phi, {op.label}]")
        certificates.append(run_check(suite, f"commutator.{key}", check))
    return certificates


def invariance_checks(suite='regrep'):
    """Инвариантные разложения и две намеренно неинвариантные пары"""
    ctx = standard_group().ctx
    catalog = subspace_catalog(ctx)
    zero_catalog = subspace_catalog(ctx, l0=0)
    ops = build_I_operators(ctx)
    phi = regular_operator()
    decompositions = families(catalog, ops)
    zero = families(zero_catalog, ops)
    certificates = [
        invariance_certificate(decompositions['X'], phi, suite),
        invariance_certificate(decompositions['X+'], phi, suite),
        invariance_certificate(decompositions['X-'], phi, suite),
        invariance_certificate(zero['Y'], phi, suite),
        invariance_certificate(zero['S'], phi, suite),
        invariance_certificate(zero['C'], phi, suite),
    ]
    breaker = OddFamilyDecomposition('(C; I0)', zero_catalog['C'], {'I0': ops['I0']})
    certificates.append(invariance_certificate(breaker, phi, suite, expected_failure=True))

    def alpha5_in_c():
        space = zero_catalog['C']
        space.check(space.factor * ctx.scalar('alpha5'), "alpha5-dependent element")

    certificates.append(run_check(suite, 'C.alpha5_member', alpha5_in_c, expected_failure=True))
    return certificates


def summary_checks(suite='regrep'):
    """e^{ΣλI}(W) попадает в соответствующее V-подпространство"""
    ctx = standard_group().ctx
    catalog = subspace_catalog(ctx)
    zero_catalog = subspace_catalog(ctx, l0=0)
    ops = build_I_operators(ctx)
    decompositions = families(catalog, ops)
    zero = families(zero_catalog, ops)
    rows = [
        ('X', decompositions['X'], ['lambda0', 'lambda4'], FourierModeSpec(ctx=ctx)),
        ('X+', decompositions['X+'], ['lambda4'], FourierModeSpec(PM, lambda0=0, eps=1, ctx=ctx)),
        ('X-', decompositions['X-'], ['lambda4'], FourierModeSpec(PM, lambda0=0, eps=-1, ctx=ctx)),
        ('Y', zero['Y'], ['lambda0', 'lambda4', 'lambda6'],
         FourierModeSpec(LAMBDA6, l0=0, lambda6='lambda6', ctx=ctx)),
        ('C', zero['C'], ['lambda4', 'lambda5', 'lambda6'],
         FourierModeSpec(FULL, l0=0, l1='l1', lambda0=0, lambda5='lambda5', lambda6='lambda6', ctx=ctx)),
    ]
    certificates = []
    for name, fam, lambdas, spec in rows:
        def check(fam=fam, lambdas=lambdas, spec=spec):
            value = family_element(fam, fam.space.generic(), lambdas)
            spec.space().check(value, f"e^(lambda I) {fam.space.name}")
        certificates.append(run_check(suite, f"summary.{name}", check))
    return certificates


def irreducibility_certificate(spec=None, suite='regrep'):
    """Конечные вычисления доказательств неприводимости для V± и Y"""
    ctx = standard_group().ctx
    spec = spec or FourierModeSpec(PM, lambda0=0, ctx=ctx)
    if spec.tier != PM:
        raise MalformedInput(f"Irreducibility is certified for tier pm, got {spec.tier}")
    data = _display('generators')
    params = {'eps': spec.eps}
    action = LinearOperator(spec.pm_action, Parity.EVEN, 'Psi')
    h_space = SubspaceSpec('H', ctx, ('a1', 'xi'), ('a1',), ('xi',), modes={'a1': MODES['a1']})
    cache = {}

    def matrices():
        if 'matrices' not in cache:
            cache['matrices'] = {
                key: component_matrix(infinitesimal_generator(action, key), ['xi']) for key in ('e5', 'e6')}
        return cache['matrices']

    def generator_matrices():
        for key, found in matrices().items():
            expect_equal(found, _parse_matrix(data[key], ctx, params), f"matrix of d/d{key}")
        h = h_space.generic()
        expect_equal(infinitesimal_generator(LinearOperator(spec.mode_action, Parity.EVEN, 'Psi'), 'bh')(h),
                     parse(data['bh'], ctx) * h, "generator of bh")

    def reachable():
        m5, m6 = matrices()['e5'], matrices()['e6']
        a, b = pool(ctx, Parity.EVEN, 2, offset=500)
        unknowns = [next(iter(a.free_symbols())), next(iter(b.free_symbols()))]
        found = []
        for target in _display('targets'):
            target = _parse_matrix(target, ctx)
            expressions = [a * m5[i][j] + b * m6[i][j] - target[i][j] for i in range(2) for j in range(2)]
            solution = solve_linear(linear_equations([e for e in expressions if e], unknowns), unknowns)
            for e in expressions:
                expect_true(not substitute(e, solution), "linear combination reaches the target", e)
            found.append(f"{solution[unknowns[0]]}, {solution[unknowns[1]]}")
        return '; '.join(found)

    def compositions():
        components = {}
        generators = {}
        for eps, sign in ((1, 'p'), (-1, 'm')):
            pm_spec = FourierModeSpec(PM, l0=spec.l0, l2=spec.l2, l3=spec.l3, lambda0=0,
                                      lambda4=spec.lambda4, eps=eps, ctx=ctx)
            pm_action = LinearOperator(pm_spec.pm_action, Parity.EVEN, 'Psi')
            inf5 = infinitesimal_generator(pm_action, 'e5')
            inf6 = infinitesimal_generator(pm_action, 'e6')
            generators[sign] = (inf5 + inf6, inf5 - inf6)
            h = h_space.generic(10 if eps > 0 else 30)
            components[sign] = h
            entries = ComponentVector.of(h, ['xi']).entries
            params[f"h{sign}0"], params[f"h{sign}1"] = entries
        for key, outer, inner in (('diff_sum', 1, 0), ('sum_diff', 0, 1)):
            for index, sign in enumerate(('p', 'm')):
                total, difference = generators[sign]
                ops = (total, difference)
                value = ops[outer](ops[inner](components[sign]))
                expect_equal(value, parse(_display(key)[index], ctx, params), f"{key} on h{sign}")

    def pm_exclusion():
        catalog = subspace_catalog(ctx, l0=spec.l0, l2=spec.l2, l3=spec.l3)
        ops = build_I_operators(ctx)
        name = 'X+' if spec.eps > 0 else 'X-'
        phi = regular_operator()
        mixed = ops['I0'] + ops['I4'].scaled(ctx.scalar('px'))
        mixed.label = 'I0+x*I4'
        failing = invariance_certificate(
            OddFamilyDecomposition(f"({name}; I0+x*I4)", catalog[name], {'I0+x*I4': mixed}), phi, suite,
            expected_failure=True)
        expect_true(failing.ok, f"{name} is not invariant under [Phi, I0 + x I4]", failing.detail)
        holding = invariance_certificate(
            OddFamilyDecomposition(f"({name}; I4)", catalog[name], {'I4': ops['I4']}), phi, suite)
        expect_true(holding.passed, f"{name} is invariant under [Phi, I4]", holding.witness)
        return failing.witness

    def heisenberg():
        y = _display('heisenberg')
        catalog = subspace_catalog(ctx, l0=0, l2=spec.l2, l3=spec.l3)
        space = catalog['Y']
        ops = build_I_operators(ctx)
        px, py = ctx.scalar('px'), ctx.scalar('py')
        mixed = ops['I0'] + ops['I4'].scaled(px) + ops['I6'].scaled(py)
        phi = reduced(regular_operator(), space)
        commutator = reduced(graded_commutator(regular_operator(), mixed), space)
        s = space.adapted(space.generic())
        d1 = infinitesimal_generator(phi, 'e1')
        d4 = infinitesimal_generator(commutator, 'e4')
        expect_equal(d1(s), -partial(s, 'a1'), "generator of ah1")
        expect_equal(d4(s), parse(y['e4_commutator'], ctx) * s, "generator of alphah4 on the commutator")
        expect_equal(graded_commutator(d1, d4)(s), parse(y['bracket'], ctx) * s, "Heisenberg bracket")
        expect_equal(infinitesimal_generator(phi, 'e3')(s), parse(y['e3'], ctx) * s, "generator of ah3")
        expect_equal(component_matrix(infinitesimal_generator(phi, 'e5'), ['alpha5']),
                     _parse_matrix(y['e5'], ctx), "matrix of alphah5")
        expect_equal(component_matrix(infinitesimal_generator(commutator, 'e3'), ['alpha5']),
                     _parse_matrix(y['e3_commutator'], ctx), "matrix of ah3 on the commutator")

    return run_checks(suite, f"irreducible[eps={spec.eps:+d}]", [
        ('generator_matrices', generator_matrices),
        ('reachable', reachable),
        ('compositions', compositions),
        ('pm_exclusion', pm_exclusion),
        ('heisenberg', heisenberg),
    ])


def regrep_certificates(suite='regrep'):
    certificates = []
    certificates += representation_checks(suite)
    certificates += operator_checks(suite)
    certificates += catalog_checks(suite)
    certificates += mode_checks(suite)
    certificates += commutator_checks(suite)
    certificates += invariance_checks(suite)
    certificates += summary_checks(suite)
    for eps in (1, -1):
        certificates.append(irreducibility_certificate(FourierModeSpec(PM, lambda0=0, eps=eps), suite))
    return certificates
