"""Нечётные семейства подпространств и разложения по нечётным семействам.

Операторы здесь - линейные отображения SuperScalar -> SuperScalar с объявленной
чётностью. Подпространства задаются синтаксически: после замены координат
(например, β -> γ) и деления на множитель у элемента могут оставаться только
разрешённые нечётные слова и разрешённые чётные переменные.
"""
import logging
import math
from itertools import combinations

from sympy.polys.domains import QQ

from .certificates import expect_equal, expect_true, run_checks
from .exceptions import MalformedInput, MembershipError, ParityMismatch, VerificationFailure
from .loaders import pool
from .symkernel import (
    IMAG, Parity, basis_element, exp_nilpotent, inverse, partial,
    partial_odd_left, split_by, substitute,
)

logger = logging.getLogger(__name__)

MAX_SERIES_ORDER = 64


def sum_parity(*parities):
    if any(p == Parity.MIXED for p in parities):
        return Parity.MIXED
    return Parity(sum(int(p) for p in parities) % 2)


class LinearOperator:
    """Линейный оператор с объявленной чётностью"""

    def __init__(self, action, parity=Parity.EVEN, label=''):
        self.action = action
        self.parity = Parity.parse(parity)
        self.label = label or getattr(action, '__name__', 'op')

    def __call__(self, f):
        return self.action(f)

    def apply(self, f):
        return self.action(f)

    def __repr__(self):
        return f"LinearOperator({self.label!r}, {self.parity.name})"

    def __str__(self):
        return self.label

    def _joined_parity(self, other):
        return self.parity if self.parity == other.parity else Parity.MIXED

    def __add__(self, other):
        return LinearOperator(lambda f: self(f) + other(f), self._joined_parity(other),
                              f"({self.label} + {other.label})")

    def __sub__(self, other):
        return LinearOperator(lambda f: self(f) - other(f), self._joined_parity(other),
                              f"({self.label} - {other.label})")

    def __neg__(self):
        return LinearOperator(lambda f: -self(f), self.parity, f"-{self.label}")

    def __matmul__(self, other):
        """Композиция self∘other"""
        return LinearOperator(lambda f: self(other(f)), sum_parity(self.parity, other.parity),
                              f"{self.label}∘{other.label}")

    def scaled(self, value):
        """Левое умножение результата на элемент алгебры"""
        parity = value.parity() if value else Parity.EVEN
        return LinearOperator(lambda f: value * self(f), sum_parity(parity, self.parity),
                              f"{value}·{self.label}")


def identity_operator():
    return LinearOperator(lambda f: f, Parity.EVEN, 'id')


def zero_operator(parity=Parity.EVEN):
    return LinearOperator(lambda f: f.ctx.zero, parity, '0')


class DifferentialOperator(LinearOperator):
    """f -> m·f + Σ c_z·∂ˡ_z f"""

    def __init__(self, ctx, multiplier=None, derivatives=None, parity=Parity.ODD, label=''):
        self.ctx = ctx
        self.multiplier = ctx.coerce(multiplier if multiplier is not None else 0)
        self.derivatives = {ctx[z]: ctx.coerce(c) for z, c in (derivatives or {}).items()}
        parity = Parity.parse(parity)
        if self.multiplier and self.multiplier.parity() != parity:
            raise ParityMismatch(
                f"Multiplier of {label} has parity {self.multiplier.parity().name}, declared {parity.name}")
        for z, c in self.derivatives.items():
            if not c:
                continue
            if sum_parity(c.parity(), z.parity) != parity:
                raise ParityMismatch(f"Term c·∂_{z.name} of {label} breaks declared parity {parity.name}")
        super().__init__(self._apply, parity, label)

    def _apply(self, f):
        result = self.multiplier * f
        for z, c in self.derivatives.items():
            result = result + c * partial(f, z)
        return result


class SubstitutionOperator(LinearOperator):
    """f -> M·f(σ): чётный оператор сдвига с множителем"""

    def __init__(self, mapping, multiplier=None, label='Φ'):
        self.mapping = dict(mapping)
        self.multiplier = multiplier
        if multiplier is not None and multiplier.parity() != Parity.EVEN:
            raise ParityMismatch(f"Multiplier of {label} must be even")
        super().__init__(self._apply, Parity.EVEN, label)

    def _apply(self, f):
        moved = substitute(f, self.mapping)
        return moved if self.multiplier is None else self.multiplier * moved


def conjugated(op, to_adapted, from_adapted, label=None):
    """Оператор в адаптированных координатах: h -> to(op(from(h)))"""
    return LinearOperator(
        lambda h: substitute(op(substitute(h, from_adapted)), to_adapted),
        op.parity, label or f"{op.label}'")


def graded_commutator(a, b):
    """[A, B] = A∘B − (−1)^{|A||B|} B∘A"""
    for op in (a, b):
        if op.parity not in (Parity.EVEN, Parity.ODD):
            raise ParityMismatch(f"Operator {op.label} has no declared parity")
    sign = -1 if int(a.parity) * int(b.parity) else 1

    def action(f):
        return a(b(f)) + b(a(f)) if sign < 0 else a(b(f)) - b(a(f))

    return LinearOperator(action, sum_parity(a.parity, b.parity), f"[{a.label}, {b.label}]")


def right_adjoint(generator):
    """←Ad(M): X -> X∘M − M∘X"""
    def adjoint(op):
        return LinearOperator(lambda f: op(generator(f)) - generator(op(f)),
                              sum_parity(op.parity, generator.parity),
                              f"[{op.label}, {generator.label}]")
    return adjoint


def exp_action(op, f):
    """Σ_k op^k(f)/k! для нильпотентного op"""
    total = f
    term = f
    for k in range(1, MAX_SERIES_ORDER + 1):
        term = op(term).scale(QQ(1, k))
        if not term:
            return total
        total = total + term
    raise VerificationFailure(f"Operator {op.label} is not nilpotent on {f}")


def exp_operator(op):
    return LinearOperator(lambda f: exp_action(op, f), op.parity, f"exp({op.label})")


def operators_agree(a, b, samples, what=''):
    """Совпадение двух операторов на наборе элементов"""
    for f in samples:
        expect_equal(a(f), b(f), what or f"{a.label} = {b.label} on {f}")


# --- подпространства ----------------------------------------------------------

def _product(ctx, scalars):
    result = ctx.one
    for s in scalars:
        result = result * s
    return result


class SubspaceSpec:
    """Подпространство: множитель, адаптированные координаты и разрешённые переменные.

    ``coordinates`` - все координаты (в адаптированном виде), по которым
    проверяется зависимость; ``even`` и ``odd`` - разрешённые из них.
    ``modes`` задаёт метки Фурье-мод {чётная координата: метка} для общего элемента.
    """

    def __init__(self, name, ctx, coordinates, even=(), odd=(), factor=None,
                 to_adapted=None, from_adapted=None, modes=None):
        self.name = name
        self.ctx = ctx
        self.coordinates = tuple(ctx[z] for z in coordinates)
        self.even = tuple(ctx[z] for z in even)
        self.odd = tuple(sorted((ctx[z] for z in odd), key=lambda s: s.index))
        for z in self.even + self.odd:
            if z not in self.coordinates:
                raise MalformedInput(f"{name}: {z.name} is not a coordinate")
        self.factor = ctx.coerce(factor if factor is not None else 1)
        if not self.factor.is_unit():
            raise MalformedInput(f"{name}: factor {self.factor} is not a unit")
        self.to_adapted = dict(to_adapted or {})
        self.from_adapted = dict(from_adapted or {})
        self.modes = {ctx[z]: ctx[l] for z, l in (modes or {}).items() if ctx[z] in self.even}

    def __repr__(self):
        return f"SubspaceSpec({self.name!r})"

    def adapted(self, f):
        """Запись элемента в адаптированных координатах без множителя"""
        return substitute(f * inverse(self.factor), self.to_adapted)

    def original(self, h):
        return substitute(h, self.from_adapted) * self.factor

    def violations(self, f):
        """Компоненты вне разрешённого шаблона: список (слово, лишние символы)"""
        allowed = set(self.even) | set(self.odd)
        coordinates = set(self.coordinates)
        found = []
        for word, coefficient in self.adapted(f).components().items():
            bad = {s for s in word if s in coordinates and s not in allowed}
            bad |= {s for s in coefficient.free_symbols() if s in coordinates and s not in allowed}
            if bad:
                found.append((tuple(s.name for s in word), tuple(sorted(s.name for s in bad)), coefficient))
        return found

    def contains(self, f):
        return not self.violations(f)

    def check(self, f, what=''):
        found = self.violations(f)
        if found:
            word, bad, coefficient = found[0]
            raise MembershipError(
                f"{what or 'element'} is not in {self.name}",
                witness=f"component {'·'.join(word) or '1'} = {coefficient} depends on {', '.join(bad)}")
        return f

    def words(self):
        """Все слова из разрешённых нечётных переменных"""
        result = []
        for k in range(len(self.odd) + 1):
            for subset in combinations(self.odd, k):
                result.append(tuple(subset))
        return result

    def word_keys(self):
        return {tuple(s.index for s in word) for word in self.words()}

    def mode(self):
        if not self.modes:
            return None
        exponent = self.ctx.zero
        for z, label in self.modes.items():
            exponent = exponent + self.ctx.scalar(label) * self.ctx.scalar(z)
        return exp_nilpotent(exponent.scale(IMAG))

    def generic(self, offset=0):
        """Общий элемент: по каждому слову c + c'·e^{i Σ метка·координата}"""
        ctx = self.ctx
        mode = self.mode()
        per_word = 2 if mode is not None else 1
        words = self.words()
        coefficients = pool(ctx, Parity.EVEN, per_word * len(words), offset=offset)
        h = ctx.zero
        for i, word in enumerate(words):
            value = coefficients[per_word * i]
            if mode is not None:
                value = value + coefficients[per_word * i + 1] * mode
            h = h + _product(ctx, [ctx.scalar(s) for s in word]) * value
        return self.original(h)

    def support(self, f):
        """Нечётные слова (индексы), присутствующие у f в адаптированных координатах"""
        return {bkey[0] for bkey in split_by(self.adapted(f), self.odd)}

    def project(self, f, keys):
        """Часть f, собранная из слов keys"""
        h = self.ctx.zero
        for bkey, coefficient in split_by(self.adapted(f), self.odd).items():
            if bkey[0] in keys:
                h = h + basis_element(self.ctx, bkey) * coefficient
        return self.original(h)

    def widened(self, name=None):
        """То же подпространство без ограничений на координаты"""
        even = [z.name for z in self.coordinates if not z.is_odd]
        odd = [z.name for z in self.coordinates if z.is_odd]
        return SubspaceSpec(name or f"{self.name}+", self.ctx, [z.name for z in self.coordinates],
                            even, odd, self.factor, self.to_adapted, self.from_adapted,
                            {z.name: l.name for z, l in self.modes.items()})


# --- разложения ----------------------------------------------------------------

class OddFamilyDecomposition:
    """(W; I_1, …, I_n) внутри объемлющего пространства"""

    def __init__(self, name, space, maps, ambient=None):
        self.name = name
        self.space = space
        self.maps = dict(maps)
        self.labels = tuple(self.maps)
        self.ambient = ambient or space.widened()
        for label, op in self.maps.items():
            if op.parity != Parity.ODD:
                raise ParityMismatch(f"{name}: map {label} is not odd")

    def __repr__(self):
        return f"OddFamilyDecomposition({self.name!r}, {list(self.labels)})"

    @property
    def n(self):
        return len(self.labels)

    @property
    def ctx(self):
        return self.space.ctx

    def subsets(self):
        result = []
        for k in range(self.n + 1):
            result.extend(combinations(self.labels, k))
        return result

    def complement(self, subset):
        return tuple(label for label in self.labels if label not in subset)

    def _check_labels(self, subset):
        for label in subset:
            if label not in self.maps:
                raise MalformedInput(f"{self.name}: unknown map {label!r}")

    def apply_product(self, subset, f):
        """((I))_P f = I_{i_k}∘…∘I_{i_1} f"""
        self._check_labels(subset)
        for label in subset:
            f = self.maps[label](f)
        return f

    def apply_inverse_product(self, subset, f):
        self._check_labels(subset)
        for label in reversed(subset):
            f = self.maps[label](f)
        return f


def _odd_parameters(ctx, lambdas, generators=False):
    result = []
    for value in lambdas:
        x = ctx.coerce(ctx[value] if isinstance(value, str) else value)
        if x and x.parity() != Parity.ODD:
            raise ParityMismatch(f"Parameter {x} is not odd")
        if generators and (len(x.terms) != 1 or len(x.free_symbols()) != 1):
            raise ParityMismatch(f"Parameter {x} is not an odd generator")
        result.append(x)
    return result


def _expect_count(fam, lambdas):
    if len(lambdas) != fam.n:
        raise MalformedInput(f"{fam.name}: expected {fam.n} odd parameters, got {len(lambdas)}")


def certify(fam, suite='oddfamily', expected_failure=False, offset=0):
    """Три условия разложения: инволютивность, антикоммутирование, прямая сумма"""
    ambient = fam.ambient
    sample = ambient.generic(offset)
    element = fam.space.generic(offset + 200)

    def involution():
        for label, op in fam.maps.items():
            expect_equal(op(op(sample)), sample, f"{label}∘{label} = id")

    def anticommutation():
        for i, j in combinations(fam.labels, 2):
            value = graded_commutator(fam.maps[i], fam.maps[j])(sample)
            expect_true(not value, f"[{i}, {j}] = 0", value)

    def direct_sum():
        ambient.check(element, f"generic element of {fam.space.name}")
        seen = {}
        for subset in fam.subsets():
            image = fam.apply_product(subset, element)
            ambient.check(image, f"image of {fam.space.name} under {subset}")
            for key in ambient.support(image):
                expect_true(key not in seen, f"images of {seen.get(key)} and {subset} are disjoint",
                            f"shared word {key}")
                seen[key] = subset
        missing = ambient.word_keys() - set(seen)
        expect_true(not missing, "images cover the ambient space", f"words not reached: {sorted(missing)}")

    return run_checks(suite, fam.name, [
        ('involution', involution),
        ('anticommutation', anticommutation),
        ('direct_sum', direct_sum),
    ], expected_failure)


def family_operator(fam, lambdas, sign=1):
    """M = ±Σ λ_i·I_i"""
    ctx = fam.ctx
    lambdas = _odd_parameters(ctx, lambdas)
    _expect_count(fam, lambdas)
    total = zero_operator()
    for label, value in zip(fam.labels, lambdas):
        total = total + fam.maps[label].scaled(value if sign > 0 else -value)
    total.label = f"Σλ·{fam.name}"
    return total


def family_element(fam, w, lambdas):
    """e^{λ_1 I_1 + ⋯ + λ_n I_n}(w) для w ∈ W"""
    fam.space.check(w, 'family element seed')
    if not fam.n:
        return w
    return exp_action(family_operator(fam, lambdas), w)


def _descending(ctx, lambdas, positions):
    """λ_{i_k}⋯λ_{i_1} для позиций i_1 < ⋯ < i_k"""
    return _product(ctx, [lambdas[p] for p in sorted(positions, reverse=True)])


def fourier_sign(fam, subset, lambdas):
    """ε_P: знак при ((I))_{P^c}(x_P) в преобразовании Фурье-Березина"""
    ctx = fam.ctx
    position = {label: i for i, label in enumerate(fam.labels)}
    chosen = [position[label] for label in subset]
    rest = [position[label] for label in fam.complement(subset)]
    sign = -1 if sum(len(chosen) + k for k in range(len(rest))) % 2 else 1
    product = _descending(ctx, lambdas, rest) * _descending(ctx, lambdas, chosen)
    top = _descending(ctx, lambdas, range(fam.n))
    if product == top:
        return sign
    if product == -top:
        return -sign
    raise VerificationFailure(f"Cannot order {product} against {top}")


def lambda_components(fam, f, lambdas):
    """f = Σ_P λ_P x_P с λ_P = λ_{i_k}⋯λ_{i_1}: словарь P -> x_P"""
    ctx = fam.ctx
    lambdas = _odd_parameters(ctx, lambdas, generators=True)
    _expect_count(fam, lambdas)
    by_index = {next(iter(l.free_symbols())).index: i for i, l in enumerate(lambdas)}
    symbols = [next(iter(l.free_symbols())) for l in lambdas]
    result = {}
    for bkey, coefficient in split_by(f, symbols).items():
        positions = sorted(by_index[j] for j in bkey[0])
        subset = tuple(fam.labels[p] for p in positions)
        basis = basis_element(ctx, bkey)
        descending = _descending(ctx, lambdas, positions)
        result[subset] = coefficient if descending == basis else -coefficient
    return result


def berezin_fourier(fam, f, lambdas):
    """Σ_P ε_P·((I))_{P^c}(x_P) для f(λ) = Σ_P λ_P x_P со значениями в W"""
    lambdas = _odd_parameters(fam.ctx, lambdas, generators=True)
    total = fam.ctx.zero
    for subset, x in lambda_components(fam, f, lambdas).items():
        fam.space.check(x, f"component {subset or '()'}")
        value = fam.apply_product(fam.complement(subset), x)
        sign = fourier_sign(fam, subset, lambdas)
        total = total + (value if sign > 0 else -value)
    return total


def top_coefficient(g, lambdas):
    """Коэффициент при λ_n⋯λ_1, стоящем слева"""
    for value in reversed(lambdas):
        g = partial_odd_left(g, next(iter(value.free_symbols())))
    return g


def berezin_fourier_expanded(fam, f, lambdas):
    """То же преобразование прямым раскрытием (id+λ_nI_n)∘⋯∘(id+λ_1I_1) f"""
    lambdas = _odd_parameters(fam.ctx, lambdas, generators=True)
    _expect_count(fam, lambdas)
    g = f
    for label, value in zip(fam.labels, lambdas):
        g = g + value * fam.maps[label](g)
    return top_coefficient(g, lambdas)


def fourier_inverse(fam, v, lambdas, offset=300):
    """Обратное преобразование: проекция на образ ((I))_{P^c}(W) и обращение"""
    ctx = fam.ctx
    lambdas = _odd_parameters(ctx, lambdas, generators=True)
    _expect_count(fam, lambdas)
    ambient = fam.ambient
    element = fam.space.generic(offset)
    f = ctx.zero
    for subset in fam.subsets():
        rest = fam.complement(subset)
        keys = ambient.support(fam.apply_product(rest, element))
        x = fam.apply_inverse_product(rest, ambient.project(v, keys))
        if fourier_sign(fam, subset, lambdas) < 0:
            x = -x
        fam.space.check(x, f"component {subset or '()'}")
        f = f + _descending(ctx, lambdas, [fam.labels.index(label) for label in subset]) * x
    return f


# --- действие и инвариантность -----------------------------------------------

def multi_commutator(rep, fam, subset):
    """⟦…⟦Φ, I_{i_1}⟧…, I_{i_k}⟧"""
    fam._check_labels(subset)
    result = rep
    for label in subset:
        result = graded_commutator(result, fam.maps[label])
    return result


def invariance_certificate(fam, rep, suite='oddfamily', expected_failure=False, name=None, offset=0):
    """Для каждого P ⊆ {1..n}: ⟦Φ, (I)⟧_P переводит общий элемент W в W"""
    element = fam.space.generic(offset)

    def part(subset):
        def check():
            image = multi_commutator(rep, fam, subset)(element)
            try:
                fam.space.check(image, f"P={{{', '.join(subset)}}}")
            except MembershipError as e:
                raise VerificationFailure(str(e), witness=f"P={{{', '.join(subset)}}}: {e.witness}")
        return check

    parts = [(f"P={{{', '.join(subset)}}}", part(subset)) for subset in fam.subsets()]
    return run_checks(suite, name or f"{fam.name}.invariant", parts, expected_failure)


def induced_action(fam, rep, lambdas):
    """Ψ = e^{←Ad(Σλ_iI_i)}(Φ) = Σ_k ←Ad(M)^k(Φ)/k!"""
    generator = family_operator(fam, lambdas)
    adjoint = right_adjoint(generator)
    terms = [rep]
    for k in range(1, fam.n + 1):
        terms.append(adjoint(terms[-1]))

    def action(f):
        total = f.ctx.zero
        for k, op in enumerate(terms):
            value = op(f)
            total = total + value.scale(QQ(1, math.factorial(k)))
        return total

    return LinearOperator(action, rep.parity, f"Ψ({rep.label})")


def induced_action_check(fam, rep, lambdas, offset=0):
    """e^{M}∘Ψ = Φ∘e^{M} на общем элементе W"""
    psi = induced_action(fam, rep, lambdas)
    generator = family_operator(fam, lambdas)
    w = fam.space.generic(offset)
    expect_equal(exp_action(generator, psi(w)), rep(exp_action(generator, w)),
                 f"{fam.name}: induced action intertwines")
    return psi


def independent_coefficients(space, combination, lambdas, relations=None):
    """Коэффициенты при λ-словах по отдельности лежат в W"""
    ctx = space.ctx
    if relations:
        combination = substitute(combination, relations)
    symbols = [next(iter(l.free_symbols())) for l in _odd_parameters(ctx, lambdas, generators=True)]
    result = {}
    for bkey, coefficient in split_by(combination, symbols).items():
        word = tuple(ctx.odd_symbol(j).name for j in bkey[0])
        space.check(coefficient, f"coefficient of {'·'.join(word) or '1'}")
        result[word] = coefficient
    return result
