"""Текстовый фронтенд ядра: разбор выражений через sympy и печать (текст, LaTeX)"""
import logging

import sympy
from sympy.parsing.sympy_parser import parse_expr, standard_transformations
from sympy.polys.domains import QQ_I

from .exceptions import MalformedInput, SuperAlgebraError
from .symkernel import SuperScalar, exp_nilpotent

logger = logging.getLogger(__name__)

RESERVED_NAMES = frozenset({'E', 'I', 'S', 'N', 'O', 'Q'})


def sympy_symbol(symbol):
    """sympy-символ для образующей: нечётные некоммутативны"""
    return sympy.Symbol(symbol.name, commutative=not symbol.is_odd)


def to_sympy(x):
    """Преобразование SuperScalar в выражение sympy (слова в порядке контекста)"""
    ctx = x.ctx
    summands = []
    for (word, mono, phase), c in x.sorted_terms():
        factor = QQ_I.to_sympy(c)
        for k, e in mono:
            factor *= sympy_symbol(ctx.even_symbol(k)) ** e
        if phase:
            exponent = sympy.Add(*[
                QQ_I.to_sympy(pc) * sympy.Mul(*[sympy_symbol(ctx.even_symbol(k)) ** e for k, e in pm])
                for pm, pc in phase])
            factor *= sympy.exp(exponent)
        if word:
            factor = sympy.Mul(factor, *[sympy_symbol(ctx.odd_symbol(j)) for j in word])
        summands.append(factor)
    return sympy.Add(*summands) if summands else sympy.Integer(0)


def to_text(x):
    return sympy.sstr(to_sympy(x))


def _symbol_names(ctx):
    return {sympy_symbol(s): s.latex for s in ctx if s.latex}


def latex(x):
    return sympy.latex(to_sympy(x), symbol_names=_symbol_names(x.ctx))


def local_namespace(ctx, params=None, extra=None):
    """Словарь имён для parse_expr: все символы контекста, I, exp и параметры"""
    namespace = {s.name: sympy_symbol(s) for s in ctx}
    namespace.update({'I': sympy.I, 'exp': sympy.exp})
    for name, value in (params or {}).items():
        namespace[name] = sympy.sympify(value, rational=True) if not isinstance(value, SuperScalar) \
            else sympy.Symbol(name, commutative=value.parity() == 0)
    namespace.update(extra or {})
    return namespace


class _Builder:
    """Обход дерева sympy в произвольной супералгебре"""

    def __init__(self, leaf, number, exp):
        self.leaf = leaf
        self.number = number
        self.exp = exp

    def build(self, expr):
        if isinstance(expr, sympy.Float):
            raise MalformedInput(f"Floating point literal {expr} is not allowed")
        if expr.is_number and not expr.free_symbols:
            if expr.atoms(sympy.Float):
                raise MalformedInput(f"Floating point literal in {expr}")
            if isinstance(expr, sympy.exp) or expr.func == sympy.exp:
                raise MalformedInput(f"Constant exponential {expr} is not an exp-polynomial")
            try:
                return self.number(QQ_I.from_sympy(expr))
            except Exception as e:
                raise MalformedInput(f"Not a Gaussian rational: {expr} ({e})")
        if isinstance(expr, sympy.Symbol):
            return self.leaf(expr.name)
        if isinstance(expr, sympy.Add):
            args = [self.build(a) for a in expr.args]
            total = args[0]
            for a in args[1:]:
                total = total + a
            return total
        if isinstance(expr, sympy.Mul):
            commutative, ordered = expr.args_cnc()
            factors = [self.build(a) for a in commutative + ordered]
            product = factors[0]
            for f in factors[1:]:
                product = product * f
            return product
        if isinstance(expr, sympy.exp):
            return self.exp(self.build(expr.args[0]))
        if isinstance(expr, sympy.Pow):
            base, exponent = expr.args
            if base == sympy.E:
                return self.exp(self.build(exponent))
            if not exponent.is_Integer:
                raise MalformedInput(f"Only integer exponents are supported: {expr}")
            return self.build(base) ** int(exponent)
        raise MalformedInput(f"Unsupported expression node {type(expr).__name__}: {expr}")


def from_sympy(expr, ctx, params=None):
    params = params or {}

    def leaf(name):
        if name in params and isinstance(params[name], SuperScalar):
            return params[name]
        if name not in ctx:
            raise MalformedInput(f"Unknown symbol {name!r}")
        return ctx.scalar(name)

    builder = _Builder(leaf, ctx.const, exp_nilpotent)
    return builder.build(expr)


def _parse_tree(text, namespace):
    try:
        return parse_expr(str(text), local_dict=namespace,
                          transformations=standard_transformations, evaluate=True)
    except SuperAlgebraError:
        raise
    except Exception as e:
        logger.error(f"Cannot parse expression {text!r}: {e}")
        raise MalformedInput(f"Cannot parse {text!r}: {e}")


def parse(text, ctx, params=None):
    """Разбор строки в нормальную форму.

    ``params`` подставляет значения параметров (например ``eps`` -> ±1) или
    готовые элементы алгебры.
    """
    if isinstance(text, (int, SuperScalar)):
        return ctx.coerce(text)
    tree = _parse_tree(text, local_namespace(ctx, params))
    return from_sympy(tree, ctx, params)


def parse_form(text, chart, params=None):
    """Разбор дифференциальной формы; дифференциалы записываются как ``d<координата>``"""
    ctx = chart.ctx
    differentials = {f"d{z.name}": sympy.Symbol(f"d{z.name}", commutative=False)
                     for z in chart.coordinates}
    tree = _parse_tree(text, local_namespace(ctx, params, differentials))
    params = params or {}

    def leaf(name):
        if name in differentials:
            return chart.differential(name[1:])
        if name in params and isinstance(params[name], SuperScalar):
            return chart.function(params[name])
        if name not in ctx:
            raise MalformedInput(f"Unknown symbol {name!r}")
        return chart.function(ctx.scalar(name))

    def exp(form):
        return chart.function(exp_nilpotent(form.as_function()))

    def number(c):
        return chart.function(ctx.const(c))

    return _Builder(leaf, number, exp).build(tree)
