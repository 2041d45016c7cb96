"""Реестр соглашений о знаках.

Три независимых переключателя: положение дифференциала в d, вид
свёртки ι(X) и знак фундаментального векторного поля. Стандартный набор
единственный проходит проверки орбит и квантования.
"""
from dataclasses import dataclass, replace
from itertools import product

D_LEFT = 'left'
D_RIGHT = 'right'
CONTRACTION_GRADED = 'graded'
CONTRACTION_UNGRADED = 'ungraded'


@dataclass(frozen=True)
class Conventions:
    d_placement: str = D_LEFT
    contraction: str = CONTRACTION_GRADED
    fundamental_sign: int = -1

    @property
    def label(self):
        sign = '-' if self.fundamental_sign < 0 else '+'
        return f"d={self.d_placement}, iota={self.contraction}, fundamental={sign}"

    def with_(self, **changes):
        return replace(self, **changes)

    def as_dict(self):
        return {
            'd_placement': self.d_placement,
            'contraction': self.contraction,
            'fundamental_sign': self.fundamental_sign,
        }


STANDARD = Conventions()


def all_combinations():
    """Все 8 комбинаций переключателей"""
    return [Conventions(d, c, s) for d, c, s in product(
        (D_LEFT, D_RIGHT), (CONTRACTION_GRADED, CONTRACTION_UNGRADED), (-1, 1))]
