"""Сравнение мод регулярного представления с представлениями орбит"""
import logging
from itertools import combinations

from .certificates import expect_equal, expect_true, run_check, run_checks
from .exceptions import MalformedInput, VerificationFailure
from .expressions import parse
from .liegroup import standard_group
from .loaders import displays
from .orbits import find_polarization, generic_orbit
from .quantize import RepFormula, induced_rep
from .regrep import PM, FourierModeSpec
from .symkernel import inverse, split_by, substitute

logger = logging.getLogger(__name__)

ROWS = ('point', 'odd22', 'even22', 'mixed33')
HEISENBERG_DIRECTIONS = ('ah1', 'ah2', 'bh')


def _row_display(row):
    try:
        return displays()['comparison'][row]
    except KeyError:
        raise MalformedInput(f"Unknown comparison row {row!r}")


class IdentificationMap:
    """Метки мод через координаты базовой точки орбиты"""

    def __init__(self, ctx, identify, align=None, constraints=None):
        self.ctx = ctx
        self.identify = {ctx[name]: parse(str(text), ctx) for name, text in identify.items()}
        self.align = {ctx[name]: ctx[target] for name, target in (align or {}).items()}
        self.constraints = {ctx[name]: ctx.const(value) for name, value in (constraints or {}).items()}
        for symbol, image in self.identify.items():
            if image and image.parity() != symbol.parity:
                raise MalformedInput(f"Identification of {symbol.name} changes parity")
        for symbol, target in self.align.items():
            if symbol.parity != target.parity:
                raise MalformedInput(f"Alignment {symbol.name} -> {target.name} changes parity")

    @classmethod
    def for_row(cls, row, ctx=None):
        data = _row_display(row)
        ctx = ctx or standard_group().ctx
        return cls(ctx, data['identify'], data.get('align'), data.get('constraints'))

    def mapping(self):
        mapping = dict(self.identify)
        mapping.update({s: self.ctx.scalar(t) for s, t in self.align.items()})
        return mapping

    def printed_signs(self):
        """Вариант с отрицательными нечётными отождествлениями"""
        flipped = IdentificationMap(self.ctx, {}, constraints={})
        flipped.identify = {s: (-v if s.is_odd else v) for s, v in self.identify.items()}
        flipped.align = dict(self.align)
        flipped.constraints = dict(self.constraints)
        return flipped

    def apply(self, formula):
        """RepFormula моды в переменных и метках орбиты"""
        mapping = self.mapping()
        shift = {}
        for name, value in formula.shift.items():
            target = self.align.get(self.ctx[name], self.ctx[name])
            shift[target.name] = substitute(value, mapping)
        variables = {name: self.ctx.scalar(name) for name in shift}
        return RepFormula(self.ctx, variables, shift, substitute(formula.multiplier, mapping))

    def constrain(self, formula):
        if not self.constraints:
            return formula
        return RepFormula(formula.ctx, formula.variables,
                          {k: substitute(v, self.constraints) for k, v in formula.shift.items()},
                          substitute(formula.multiplier, self.constraints))

    def odd_images(self):
        return {s.name: str(v) for s, v in self.identify.items() if s.is_odd}

    def as_dict(self):
        return {
            'identify': {s.name: str(v) for s, v in self.identify.items()},
            'align': {s.name: t.name for s, t in self.align.items()},
            'constraints': {s.name: str(v) for s, v in self.constraints.items()},
        }


def mode_spec(row, eps=1, ctx=None):
    labels = dict(_row_display(row)['mode'])
    tier = labels.pop('tier')
    if tier == PM:
        labels['eps'] = eps
    return FourierModeSpec(tier, ctx=ctx or standard_group().ctx, **labels)


def mode_formula(spec):
    """Действие на моде как RepFormula: сдвиг переменных и множитель"""
    ctx = spec.ctx
    if spec.tier == PM:
        hat5 = ctx.scalar('alphah5') + ctx.scalar('alphah6').scale(spec.eps)
        shift = {'a1': ctx.scalar('a1') - ctx.scalar('ah1'), 'xi': ctx.scalar('xi') - hat5}
        multiplier = spec.pm_action(ctx.one)
    else:
        shift = spec.shift()
        multiplier = spec.mode_action(ctx.one)
    return RepFormula(ctx, {name: ctx.scalar(name) for name in shift}, shift, multiplier)


def orbit_formula(row, eps=None):
    data = _row_display(row)
    orbit = generic_orbit(data['orbit'])
    polarization = find_polarization(orbit, data['polarization'], eps)
    return induced_rep(orbit, polarization), polarization


def _row_label(row, eps):
    return row if eps is None else f"{row}[eps={eps:+d}]"


def _first_difference(left, right):
    for name in sorted(set(left.shift) | set(right.shift)):
        a, b = left.shift.get(name), right.shift.get(name)
        if a is None or b is None or a != b:
            return f"shift of {name}: {a} vs {b}"
    if left.multiplier != right.multiplier:
        ratio = left.multiplier * inverse(right.multiplier)
        return f"multiplier: {left.multiplier} vs {right.multiplier}; ratio {ratio}"
    return ''


def expect_same_formula(left, right, what):
    if left == right:
        return
    expect_true(False, what, _first_difference(left, right))


def compare(row, eps=None, suite='compare'):
    """Равенство действия на моде и формулы представления орбиты после отождествления"""
    if row not in ROWS:
        raise MalformedInput(f"Unknown comparison row {row!r}")
    data = _row_display(row)
    if data.get('eps') and eps is None:
        raise MalformedInput(f"Row {row} needs eps = +1 or -1")
    ctx = standard_group().ctx
    label = _row_label(row, eps)
    identification = IdentificationMap.for_row(row, ctx)
    state = {}

    def formulas():
        if 'orbit' not in state:
            spec = mode_spec(row, eps or 1, ctx)
            rep, polarization = orbit_formula(row, eps)
            state['mode'] = identification.apply(mode_formula(spec))
            state['orbit'] = identification.constrain(rep)
            state['polarization'] = polarization
        return state['mode'], state['orbit']

    def identified():
        mode, orbit = formulas()
        expect_same_formula(mode, orbit, f"{label}: mode action equals the orbit representation")
        return f"odd labels {identification.odd_images()} are multiples of kappa"

    def reshifted():
        mode, orbit = formulas()
        entries = displays()['solutions'][state['polarization'].name].get('reshift', [])
        for entry in entries:
            left, right = mode, orbit
            for var, amount in entry.get('shifts', {}).items():
                amount = parse(str(amount), ctx)
                left, right = left.reshift(var, amount), right.reshift(var, amount)
            expect_same_formula(left, right, f"{label}: equality after the reshift {entry['shifts']}")

    return run_checks(suite, f"identify.{label}", [('formula', identified), ('reshift', reshifted)])


def printed_sign_mutant(row, eps=None, suite='compare'):
    """Отождествление λ ↦ −x̄°κ обязано провалиться"""
    ctx = standard_group().ctx
    identification = IdentificationMap.for_row(row, ctx).printed_signs()
    label = _row_label(row, eps)

    def check():
        mode = identification.apply(mode_formula(mode_spec(row, eps or 1, ctx)))
        rep, _ = orbit_formula(row, eps)
        expect_same_formula(mode, identification.constrain(rep), f"{label}: printed odd signs")

    return run_check(suite, f"mutant.{label}", check, expected_failure=True)


# --- подгруппа Гейзенберга -------------------------------------------------------

def _restriction(group):
    return {b.copies[1]: group.ctx.zero for b in group.basis if b.copies[1] not in HEISENBERG_DIRECTIONS}


def restricted_law(group=None):
    """Закон умножения на подгруппе, где отличны от нуля только a¹, a², b"""
    group = group or standard_group()
    ctx = group.ctx
    keep = {b.copies[0] for b in group.basis if b.copies[1] in HEISENBERG_DIRECTIONS}
    zero_plain = {b.copies[0]: ctx.zero for b in group.basis if b.copies[0] not in keep}
    left = group.substitute_point(group.point(1), _restriction(group))
    right = group.substitute_point(group.point(0), zero_plain)
    return group.translation_map(group.multiply(left, right))


def heisenberg_multiplicity(spec):
    """(центральный характер вдоль b̂, число копий неприводимого представления подгруппы).

    Подгруппа не сдвигает нечётные переменные моды, поэтому каждое нечётное
    слово задаёт инвариантное слагаемое функций от a¹. Число копий равно
    числу слов, чьё слагаемое действие подгруппы переводит в себя.
    """
    group = standard_group()
    ctx = spec.ctx
    formula = mode_formula(spec)
    restricted = formula.renamed(_restriction(group))
    odd = [name for name in formula.shift if ctx[name].is_odd]
    for name in odd:
        if restricted.shift[name] != ctx.scalar(name):
            raise VerificationFailure(f"Subgroup moves the odd variable {name}")
    if restricted.multiplier.depends_on(*odd):
        raise VerificationFailure(f"Subgroup multiplier mixes odd components: {restricted.multiplier}")
    character = substitute(restricted.multiplier, {'ah1': ctx.zero, 'ah2': ctx.zero} | {
        name: ctx.zero for name in formula.shift})
    if character == ctx.one:
        return character, 0
    sample = ctx.scalar('c0') + ctx.scalar('c1') * ctx.scalar('a1')
    summands = 0
    for k in range(len(odd) + 1):
        for word in combinations(odd, k):
            basis = ctx.one
            for name in word:
                basis = basis * ctx.scalar(name)
            support = {bkey[0] for bkey in split_by(restricted.apply(basis * sample), odd)}
            if support != {tuple(sorted(ctx[name].index for name in word))}:
                raise VerificationFailure(f"Word {'·'.join(word) or '1'} does not span an invariant summand",
                                          witness=str(support))
            summands += 1
    logger.debug(f"Heisenberg restriction of {spec.tier}: character {character}, {summands} summands")
    return character, summands


def heisenberg_checks(suite='compare'):
    """Четыре, две и ноль копий представления подгруппы Гейзенберга"""
    ctx = standard_group().ctx
    data = displays()['heisenberg_restriction']
    specs = {
        'mode': FourierModeSpec(ctx=ctx),
        'pm': FourierModeSpec(PM, lambda0=0, ctx=ctx),
        'lambda6': FourierModeSpec('lambda6', l0=0, lambda6='lambda6', ctx=ctx),
    }
    central = parse('exp(-I*l0*bh)', ctx)
    certificates = []
    for key, spec in specs.items():
        def check(key=key, spec=spec):
            character, copies = heisenberg_multiplicity(spec)
            expect_equal(copies, data['copies'][key], f"{key}: number of copies")
            expect_equal(character, central if copies else ctx.one, f"{key}: central character")
            return f"{copies} copies, character {character}"
        certificates.append(run_check(suite, f"heisenberg.{key}", check))

    def law():
        value = restricted_law()
        expect_equal(value['b'], parse(data['law'], ctx), "restricted multiplication law")
        expect_equal(value['a1'], parse('ah1 + a1', ctx), "a1 is additive")
        expect_equal(value['a2'], parse('ah2 + a2', ctx), "a2 is additive")

    def trivial():
        character, copies = heisenberg_multiplicity(FourierModeSpec(l0=0, ctx=ctx))
        expect_equal(character, ctx.one, "l0 = 0 gives the trivial character")
        expect_equal(copies, 0, "no copies for the trivial character")

    certificates.append(run_check(suite, 'heisenberg.law', law))
    certificates.append(run_check(suite, 'heisenberg.trivial', trivial))
    return certificates


def comparison_rows():
    """Пары (строка, ε) всех сравнений"""
    rows = []
    for row in ROWS:
        for eps in _row_display(row).get('eps') or [None]:
            rows.append((row, eps))
    return rows


def compare_certificates(suite='compare'):
    certificates = []
    for row, eps in comparison_rows():
        certificates.append(compare(row, eps, suite))
        certificates.append(printed_sign_mutant(row, eps, suite))
    certificates += heisenberg_checks(suite)
    return certificates


def comparison_report():
    """Блок отчёта: отождествления и мультипликаторы мод"""
    ctx = standard_group().ctx
    block = []
    for row, eps in comparison_rows():
        spec = mode_spec(row, eps or 1, ctx)
        block.append({
            'row': _row_label(row, eps),
            'mode': spec.as_dict(),
            'identification': IdentificationMap.for_row(row, ctx).as_dict(),
            'formula': mode_formula(spec).as_dict(),
        })
    return block
