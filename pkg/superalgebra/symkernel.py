"""Ядро: нормальная форма элементов алгебры Грассмана над экспонент-полиномами.

Элемент хранится как словарь ``(word, mono, phase) -> coeff``:

* ``word``  - возрастающий кортеж индексов нечётных образующих;
* ``mono``  - отсортированный кортеж ``(индекс чётного символа, степень)``;
* ``phase`` - многочлен без свободного члена в показателе экспоненты,
  кортеж ``(mono, coeff)``;
* ``coeff`` - гауссово рациональное число (``QQ_I``).

Значение терма равно ``coeff * mono * exp(phase) * word``.
"""
import logging
import math
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from functools import lru_cache

from sympy import sympify
from sympy.polys.domains import QQ, QQ_I

from .exceptions import (
    ConstantPhaseError, ContextMismatch, MalformedInput, NonIntegrablePhase,
    NotInvertible, ParityMismatch, PhaseError, SuperAlgebraError,
)

logger = logging.getLogger(__name__)

ZERO = QQ_I.zero
ONE = QQ_I.one
IMAG = QQ_I(0, 1)


class Parity(IntEnum):
    EVEN = 0
    ODD = 1
    MIXED = 2

    @classmethod
    def parse(cls, value):
        if isinstance(value, Parity):
            return value
        if isinstance(value, int):
            return cls(value)
        try:
            return cls[str(value).upper()]
        except KeyError:
            raise MalformedInput(f"Unknown parity {value!r}")


@dataclass(frozen=True)
class Symbol:
    """Образующая: чётная (коммутирующая) или нечётная (антикоммутирующая)"""
    name: str
    parity: Parity
    index: int
    invertible: bool = False
    latex: str = ''

    @property
    def is_odd(self):
        return self.parity == Parity.ODD

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"Symbol({self.name!r}, {self.parity.name})"


def to_coeff(value):
    """Приведение числа к элементу QQ_I"""
    if isinstance(value, type(ONE)):
        return value
    if isinstance(value, bool):
        raise MalformedInput(f"Boolean is not a coefficient: {value!r}")
    if isinstance(value, int):
        return QQ_I(value, 0)
    if isinstance(value, Fraction):
        return QQ_I(QQ(value.numerator, value.denominator), 0)
    if QQ.of_type(value):
        return QQ_I(value, 0)
    if isinstance(value, complex):
        raise MalformedInput(f"Floating point coefficient {value!r}")
    if isinstance(value, float):
        raise MalformedInput(f"Floating point coefficient {value!r}")
    try:
        return QQ_I.convert(value)
    except Exception:
        pass
    try:
        return QQ_I.from_sympy(sympify(value, rational=True))
    except Exception as e:
        raise MalformedInput(f"Not a Gaussian rational: {value!r} ({e})")


def coeff_to_str(c):
    return f"{QQ.to_sympy(c.x)} {QQ.to_sympy(c.y)}"


# --- кэшируемые операции над ключами -------------------------------------

@lru_cache(maxsize=None)
def _merge_words(w1, w2):
    """Знак и слово произведения w1*w2; знак 0 при повторе образующей"""
    if not w1:
        return 1, w2
    if not w2:
        return 1, w1
    if set(w1) & set(w2):
        return 0, ()
    inversions = sum(1 for i in w1 for j in w2 if i > j)
    return (-1 if inversions % 2 else 1), tuple(sorted(w1 + w2))


@lru_cache(maxsize=None)
def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for k, e in m2:
        exps[k] = exps.get(k, 0) + e
    return tuple(sorted((k, e) for k, e in exps.items() if e))


@lru_cache(maxsize=None)
def _mono_pow(m, n):
    return tuple((k, e * n) for k, e in m) if n else ()


@lru_cache(maxsize=None)
def _phase_add(p1, p2):
    if not p1:
        return p2
    if not p2:
        return p1
    acc = dict(p1)
    for mono, c in p2:
        acc[mono] = acc.get(mono, ZERO) + c
    return tuple(sorted(((m, c) for m, c in acc.items() if c), key=lambda mc: mc[0]))


def _phase_neg(p):
    return tuple((m, -c) for m, c in p)


def _word_remove(word, index):
    """Позиция индекса в слове и слово без него"""
    pos = word.index(index)
    return pos, word[:pos] + word[pos + 1:]


def _sort_key(key):
    word, mono, phase = key
    return (tuple((m, (c.y, c.x)) for m, c in phase), mono, word)


class SymbolContext:
    """Контекст символов: задаёт имена, чётности и глобальный порядок"""

    def __init__(self, name='default'):
        self.name = name
        self._symbols = {}
        self._even = []
        self._odd = []
        self.frozen = False

    def declare(self, name, parity, invertible=False, latex=''):
        if self.frozen:
            raise SuperAlgebraError(f"Context {self.name} is frozen, cannot declare {name}")
        parity = Parity.parse(parity)
        if parity == Parity.MIXED:
            raise ParityMismatch(f"Symbol {name} cannot be mixed")
        if name in self._symbols:
            raise SuperAlgebraError(f"Symbol {name} already declared in {self.name}")
        if parity == Parity.ODD and invertible:
            raise ParityMismatch(f"Odd symbol {name} cannot be invertible")
        pool = self._odd if parity == Parity.ODD else self._even
        symbol = Symbol(name, parity, len(pool), bool(invertible), latex or '')
        pool.append(symbol)
        self._symbols[name] = symbol
        return symbol

    def declare_many(self, names, parity, **kwargs):
        if isinstance(names, str):
            names = names.split()
        return [self.declare(name, parity, **kwargs) for name in names]

    def freeze(self):
        self.frozen = True
        logger.debug(f"Context {self.name} frozen with {len(self._even)} even and {len(self._odd)} odd symbols")
        return self

    def __getitem__(self, name):
        if isinstance(name, Symbol):
            return name
        try:
            return self._symbols[name]
        except KeyError:
            raise MalformedInput(f"Unknown symbol {name!r} in context {self.name}")

    def __contains__(self, name):
        return name in self._symbols

    def __iter__(self):
        return iter(self._symbols.values())

    def symbols(self, names):
        if isinstance(names, str):
            names = names.split()
        return tuple(self[name] for name in names)

    def even_symbol(self, index):
        return self._even[index]

    def odd_symbol(self, index):
        return self._odd[index]

    def scalar(self, name):
        """Элемент алгебры, равный образующей"""
        symbol = self[name]
        if symbol.is_odd:
            return SuperScalar(self, {((symbol.index,), (), ()): ONE})
        return SuperScalar(self, {((), ((symbol.index, 1),), ()): ONE})

    def scalars(self, names):
        if isinstance(names, str):
            names = names.split()
        return tuple(self.scalar(name) for name in names)

    def const(self, value):
        c = to_coeff(value)
        return SuperScalar(self, {((), (), ()): c} if c else {})

    @property
    def zero(self):
        return SuperScalar(self, {})

    @property
    def one(self):
        return self.const(1)

    def coerce(self, value):
        if isinstance(value, SuperScalar):
            if value.ctx is not self:
                raise ContextMismatch(f"Value from context {value.ctx.name} used in {self.name}")
            return value
        if isinstance(value, Symbol):
            return self.scalar(value)
        return self.const(value)

    def __repr__(self):
        return f"SymbolContext({self.name!r})"


class SuperScalar:
    """Элемент суперкоммутативной алгебры в нормальной форме"""
    __slots__ = ('ctx', 'terms', '_hash')

    def __init__(self, ctx, terms):
        self.ctx = ctx
        self.terms = {k: c for k, c in terms.items() if c}
        self._hash = None

    # --- вспомогательное ----------------------------------------------

    def _coerce(self, other):
        if isinstance(other, SuperScalar):
            if other.ctx is not self.ctx:
                raise ContextMismatch(
                    f"Contexts differ: {self.ctx.name} and {other.ctx.name}")
            return other
        return self.ctx.coerce(other)

    def _new(self, terms):
        return SuperScalar(self.ctx, terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kc: _sort_key(kc[0]))

    # --- арифметика -----------------------------------------------------

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except MalformedInput:
            return NotImplemented
        acc = dict(self.terms)
        for key, c in other.terms.items():
            acc[key] = acc.get(key, ZERO) + c
        return self._new(acc)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except MalformedInput:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except MalformedInput:
            return NotImplemented
        acc = {}
        for (w1, m1, p1), c1 in self.terms.items():
            for (w2, m2, p2), c2 in other.terms.items():
                sign, word = _merge_words(w1, w2)
                if not sign:
                    continue
                key = (word, _mono_mul(m1, m2), _phase_add(p1, p2))
                c = c1 * c2
                acc[key] = acc.get(key, ZERO) + (c if sign > 0 else -c)
        return self._new(acc)

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __truediv__(self, other):
        if isinstance(other, SuperScalar):
            return self * inverse(self._coerce(other))
        c = to_coeff(other)
        if not c:
            raise NotInvertible("Division by zero")
        inv = ONE / c
        return self._new({k: v * inv for k, v in self.terms.items()})

    def __rtruediv__(self, other):
        return self._coerce(other) * inverse(self)

    def __pow__(self, n):
        if not isinstance(n, int):
            raise MalformedInput(f"Only integer powers are supported, got {n!r}")
        if n < 0:
            return inverse(self) ** (-n)
        result = self.ctx.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, value):
        c = to_coeff(value)
        return self._new({k: v * c for k, v in self.terms.items()})

    # --- сравнение ------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, SuperScalar):
            try:
                other = self.ctx.coerce(other)
            except SuperAlgebraError:
                return NotImplemented
        return self.ctx is other.ctx and self.terms == other.terms

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    # --- структура ------------------------------------------------------

    def parity(self):
        lengths = {len(word) % 2 for word, _, _ in self.terms}
        if not lengths or lengths == {0}:
            return Parity.EVEN
        if lengths == {1}:
            return Parity.ODD
        return Parity.MIXED

    def even_part(self):
        return self._new({k: c for k, c in self.terms.items() if len(k[0]) % 2 == 0})

    def odd_part(self):
        return self._new({k: c for k, c in self.terms.items() if len(k[0]) % 2 == 1})

    def part(self, parity):
        return self.odd_part() if parity % 2 else self.even_part()

    def twist(self, k=1):
        """Автоморфизм чётности: нечётная часть умножается на (-1)^k"""
        if k % 2 == 0:
            return self
        return self._new({key: (-c if len(key[0]) % 2 else c) for key, c in self.terms.items()})

    def body(self):
        return self._new({k: c for k, c in self.terms.items() if not k[0]})

    def soul(self):
        return self._new({k: c for k, c in self.terms.items() if k[0]})

    def component(self, word=()):
        """Коэффициент при слове из нечётных образующих"""
        indices = tuple(sorted(self.ctx[s].index for s in word))
        return self._new({((), m, p): c for (w, m, p), c in self.terms.items() if w == indices})

    def components(self):
        result = {}
        for (w, m, p), c in self.terms.items():
            word = tuple(self.ctx.odd_symbol(i) for i in w)
            result.setdefault(word, {})[((), m, p)] = c
        return {word: self._new(terms) for word, terms in sorted(
            result.items(), key=lambda item: tuple(s.index for s in item[0]))}

    def constant_term(self):
        return self.terms.get(((), (), ()), ZERO)

    def is_constant(self):
        return all(key == ((), (), ()) for key in self.terms)

    def free_symbols(self):
        even, odd = set(), set()
        for w, m, p in self.terms:
            odd.update(w)
            even.update(k for k, _ in m)
            for mono, _ in p:
                even.update(k for k, _ in mono)
        return ({self.ctx.even_symbol(i) for i in even}
                | {self.ctx.odd_symbol(j) for j in odd})

    def depends_on(self, *symbols):
        free = self.free_symbols()
        return any(self.ctx[s] in free for s in symbols)

    def phase_symbols(self):
        found = set()
        for _, _, p in self.terms:
            for mono, _ in p:
                found.update(self.ctx.even_symbol(k) for k, _ in mono)
        return found

    def is_unit(self):
        body = self.body()
        if len(body.terms) != 1:
            return False
        (_, mono, _), _ = next(iter(body.terms.items()))
        return all(self.ctx.even_symbol(k).invertible for k, e in mono)

    def __str__(self):
        from .expressions import to_text
        return to_text(self)

    def __repr__(self):
        return f"SuperScalar({self})"

    def __reduce__(self):
        return (loads_in_context, (self.ctx.name, dumps(self)))


# --- операции ядра -------------------------------------------------------

def _phase_scalar(ctx, phase):
    """Многочлен фазы как элемент алгебры"""
    return SuperScalar(ctx, {((), mono, ()): c for mono, c in phase})


def exp_nilpotent(x):
    """e^x для чётного x: формальная часть уходит в фазу, нильпотентная - в конечный ряд"""
    if x.parity() != Parity.EVEN:
        raise ParityMismatch(f"Exponent argument must be even, got {x.parity().name}")
    ctx = x.ctx
    phase = {}
    nil = {}
    for (w, m, p), c in x.terms.items():
        if w:
            nil[(w, m, p)] = c
        elif p:
            raise PhaseError(f"Nested exponential in exponent argument {x}")
        elif not m:
            raise ConstantPhaseError(f"Exponent argument has constant term {c}")
        else:
            phase[m] = c
    phase_key = tuple(sorted(phase.items(), key=lambda mc: mc[0]))
    result = SuperScalar(ctx, {((), (), phase_key): ONE})
    if not nil:
        return result
    nil = SuperScalar(ctx, nil)
    series = ctx.one
    power = ctx.one
    k = 0
    while True:
        k += 1
        power = power * nil
        if not power:
            break
        series = series + power.scale(QQ(1, math.factorial(k)))
    return result * series


def inverse(x):
    """Обратный элемент: тело - один терм из обратимых символов"""
    ctx = x.ctx
    body = x.body()
    if len(body.terms) != 1:
        raise NotInvertible(f"Body of {x} is not a single term")
    (_, mono, phase), c = next(iter(body.terms.items()))
    for k, _ in mono:
        symbol = ctx.even_symbol(k)
        if not symbol.invertible:
            raise NotInvertible(f"Symbol {symbol.name} is not invertible")
    u_inv = SuperScalar(ctx, {((), _mono_pow(mono, -1), _phase_neg(phase)): ONE / c})
    nil = x - body
    if not nil:
        return u_inv
    step = -(u_inv * nil)
    series = ctx.one
    power = ctx.one
    while True:
        power = power * step
        if not power:
            break
        series = series + power
    return u_inv * series


def partial_even(x, s):
    """Производная по чётному символу (правило произведения для монома и фазы)"""
    s = x.ctx[s]
    if s.is_odd:
        raise ParityMismatch(f"partial_even needs an even symbol, got {s.name}")
    k = s.index
    acc = {}
    for (w, m, p), c in x.terms.items():
        exps = dict(m)
        e = exps.get(k, 0)
        if e:
            key = (w, _mono_mul(m, ((k, -1),)), p)
            acc[key] = acc.get(key, ZERO) + c * e
        for pm, pc in p:
            pe = dict(pm).get(k, 0)
            if not pe:
                continue
            dmono = _mono_mul(pm, ((k, -1),))
            key = (w, _mono_mul(m, dmono), p)
            acc[key] = acc.get(key, ZERO) + c * pc * pe
    return SuperScalar(x.ctx, acc)


def partial_odd_left(x, s):
    """Левая производная по нечётному символу"""
    s = x.ctx[s]
    if not s.is_odd:
        raise ParityMismatch(f"partial_odd_left needs an odd symbol, got {s.name}")
    acc = {}
    for (w, m, p), c in x.terms.items():
        if s.index not in w:
            continue
        pos, rest = _word_remove(w, s.index)
        key = (rest, m, p)
        acc[key] = acc.get(key, ZERO) + (-c if pos % 2 else c)
    return SuperScalar(x.ctx, acc)


def partial_odd_right(x, s):
    """Правая производная по нечётному символу"""
    s = x.ctx[s]
    if not s.is_odd:
        raise ParityMismatch(f"partial_odd_right needs an odd symbol, got {s.name}")
    acc = {}
    for (w, m, p), c in x.terms.items():
        if s.index not in w:
            continue
        pos, rest = _word_remove(w, s.index)
        key = (rest, m, p)
        acc[key] = acc.get(key, ZERO) + (-c if (len(w) - 1 - pos) % 2 else c)
    return SuperScalar(x.ctx, acc)


def partial(x, s):
    """Левая производная по символу любой чётности"""
    s = x.ctx[s]
    return partial_odd_left(x, s) if s.is_odd else partial_even(x, s)


def berezin(x, s):
    """Интеграл Березина: правая производная, ∫ λ dλ = 1"""
    return partial_odd_right(x, s)


def berezin_multiple(x, symbols):
    """∫ x dλ₁…dλ_n с нормировкой ∫ λ_n⋯λ₁ dλ₁⋯dλ_n = 1"""
    for s in symbols:
        x = berezin(x, s)
    return x


def integrate_even(x, s):
    """Первообразная по чётному символу (символ не должен входить в фазы)"""
    s = x.ctx[s]
    if s.is_odd:
        raise ParityMismatch(f"integrate_even needs an even symbol, got {s.name}")
    k = s.index
    acc = {}
    for (w, m, p), c in x.terms.items():
        for pm, _ in p:
            if dict(pm).get(k):
                raise NonIntegrablePhase(f"Symbol {s.name} occurs inside a phase")
        e = dict(m).get(k, 0)
        if e == -1:
            raise NonIntegrablePhase(f"Antiderivative of {s.name}^-1 is not an exp-polynomial")
        key = (w, _mono_mul(m, ((k, 1),)), p)
        acc[key] = acc.get(key, ZERO) + c * QQ_I(QQ(1, e + 1), 0)
    return SuperScalar(x.ctx, acc)


def substitute(x, mapping):
    """Одновременная подстановка образов в символы (гомоморфизм супералгебры)"""
    ctx = x.ctx
    images = {}
    for symbol, image in mapping.items():
        symbol = ctx[symbol]
        image = ctx.coerce(image)
        parity = image.parity()
        if image and parity != symbol.parity:
            raise ParityMismatch(
                f"Image of {symbol.name} has parity {parity.name}, expected {symbol.parity.name}")
        images[symbol] = image
    if not images:
        return x
    even_map = {s.index: img for s, img in images.items() if not s.is_odd}
    odd_map = {s.index: img for s, img in images.items() if s.is_odd}

    power_cache = {}

    def even_power(k, e):
        key = (k, e)
        if key not in power_cache:
            power_cache[key] = even_map[k] ** e
        return power_cache[key]

    phase_cache = {}

    def phase_image(p):
        if p not in phase_cache:
            phase_cache[p] = exp_nilpotent(substitute(_phase_scalar(ctx, p), mapping))
        return phase_cache[p]

    result = {}
    pieces = []
    for (w, m, p), c in x.terms.items():
        touches_phase = any(k in even_map for pm, _ in p for k, _ in pm)
        touches = (touches_phase or any(k in even_map for k, _ in m)
                   or any(j in odd_map for j in w))
        if not touches:
            key = (w, m, p)
            result[key] = result.get(key, ZERO) + c
            continue
        kept_mono = tuple((k, e) for k, e in m if k not in even_map)
        term = SuperScalar(ctx, {((), kept_mono, () if touches_phase else p): c})
        for k, e in m:
            if k in even_map:
                term = term * even_power(k, e)
        if touches_phase:
            term = term * phase_image(p)
        for j in w:
            if j in odd_map:
                term = term * odd_map[j]
            else:
                term = term * SuperScalar(ctx, {((j,), (), ()): ONE})
        pieces.append(term)
    total = SuperScalar(ctx, result)
    for piece in pieces:
        total = total + piece
    return total


def set_zero(x, symbols):
    return substitute(x, {s: x.ctx.zero for s in symbols})


def split_by(x, variables):
    """Разложение x = Σ базис·коэффициент по выделенным переменным.

    Базис - слово из нечётных переменных (слева), моном и фаза из чётных.
    Фаза попадает в базис целиком, если содержит выделенную переменную.
    """
    ctx = x.ctx
    variables = [ctx[v] for v in variables]
    even_idx = {v.index for v in variables if not v.is_odd}
    odd_idx = {v.index for v in variables if v.is_odd}
    basis = {}
    for (w, m, p), c in x.terms.items():
        vw = tuple(j for j in w if j in odd_idx)
        rw = tuple(j for j in w if j not in odd_idx)
        sign, _ = _merge_words(vw, rw)
        vm = tuple((k, e) for k, e in m if k in even_idx)
        rm = tuple((k, e) for k, e in m if k not in even_idx)
        phase_var = any(k in even_idx for pm, _ in p for k, _ in pm)
        vp, rp = (p, ()) if phase_var else ((), p)
        bkey = (vw, vm, vp)
        bucket = basis.setdefault(bkey, {})
        ckey = (rw, rm, rp)
        bucket[ckey] = bucket.get(ckey, ZERO) + (c if sign > 0 else -c)
    return {bkey: SuperScalar(ctx, terms) for bkey, terms in basis.items()
            if any(terms.values())}


def basis_element(ctx, bkey):
    return SuperScalar(ctx, {bkey: ONE})


# --- сериализация ----------------------------------------------------------

def dumps(x):
    """S-выражение нормальной формы"""
    ctx = x.ctx
    parts = ['(scalar']
    for (w, m, p), c in x.sorted_terms():
        mono = ' '.join(f"({ctx.even_symbol(k).name} {e})" for k, e in m)
        phase = ' '.join(
            f"((q {coeff_to_str(pc)}) ({' '.join(f'({ctx.even_symbol(k).name} {e})' for k, e in pm)}))"
            for pm, pc in p)
        word = ' '.join(ctx.odd_symbol(j).name for j in w)
        parts.append(f" (term (q {coeff_to_str(c)}) ({mono}) (phase {phase}) (word {word}))"
                     .replace('(phase )', '(phase)').replace('(word )', '(word)'))
    return ''.join(parts) + ')'


def _tokenize(text):
    return text.replace('(', ' ( ').replace(')', ' ) ').split()


def _read(tokens):
    if not tokens:
        raise MalformedInput("Unexpected end of s-expression")
    token = tokens.pop(0)
    if token == '(':
        items = []
        while tokens and tokens[0] != ')':
            items.append(_read(tokens))
        if not tokens:
            raise MalformedInput("Unbalanced parentheses in s-expression")
        tokens.pop(0)
        return items
    if token == ')':
        raise MalformedInput("Unexpected ')' in s-expression")
    return token


def _read_q(node):
    if not (isinstance(node, list) and len(node) == 3 and node[0] == 'q'):
        raise MalformedInput(f"Bad coefficient node {node!r}")
    return QQ_I(QQ.from_sympy(sympify(node[1], rational=True)),
                QQ.from_sympy(sympify(node[2], rational=True)))


def _read_mono(ctx, node):
    exps = []
    for item in node:
        symbol = ctx[item[0]]
        if symbol.is_odd:
            raise ParityMismatch(f"Odd symbol {symbol.name} in monomial")
        exps.append((symbol.index, int(item[1])))
    return _mono_mul((), tuple(sorted(exps)))


def loads(text, ctx):
    tokens = _tokenize(text)
    tree = _read(tokens)
    if tokens or not isinstance(tree, list) or not tree or tree[0] != 'scalar':
        raise MalformedInput("Expected a single (scalar ...) form")
    terms = {}
    for node in tree[1:]:
        if not (isinstance(node, list) and len(node) == 5 and node[0] == 'term'):
            raise MalformedInput(f"Bad term node {node!r}")
        c = _read_q(node[1])
        mono = _read_mono(ctx, node[2])
        phase_node, word_node = node[3], node[4]
        if phase_node[0] != 'phase' or word_node[0] != 'word':
            raise MalformedInput(f"Bad term node {node!r}")
        phase = ()
        for pnode in phase_node[1:]:
            phase = _phase_add(phase, ((_read_mono(ctx, pnode[1]), _read_q(pnode[0])),))
        word = []
        for name in word_node[1:]:
            symbol = ctx[name]
            if not symbol.is_odd:
                raise ParityMismatch(f"Even symbol {name} in odd word")
            word.append(symbol.index)
        sign, w = 1, ()
        for j in word:
            s, w = _merge_words(w, (j,))
            sign *= s
        if not sign:
            continue
        key = (w, mono, phase)
        terms[key] = terms.get(key, ZERO) + (c if sign > 0 else -c)
    return SuperScalar(ctx, terms)


_CONTEXTS = {}


def register_context(ctx):
    _CONTEXTS[ctx.name] = ctx
    return ctx


def loads_in_context(name, text):
    try:
        ctx = _CONTEXTS[name]
    except KeyError:
        raise ContextMismatch(f"Context {name} is not registered in this process")
    return loads(text, ctx)
