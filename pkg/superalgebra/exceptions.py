"""Исключения движка супералгебры."""


class SuperAlgebraError(Exception):
    """Базовое исключение всех проверок и вычислений"""


class ContextMismatch(SuperAlgebraError):
    """Операнды принадлежат разным контекстам символов"""


class ParityMismatch(SuperAlgebraError):
    """Нарушена чётность (образ подстановки, аргумент экспоненты и т.п.)"""


class NotInvertible(SuperAlgebraError):
    """Элемент не является обратимым"""


class PhaseError(SuperAlgebraError):
    """Аргумент экспоненты вне допустимого класса"""


class ConstantPhaseError(PhaseError):
    """Фаза с ненулевым постоянным членом"""


class NonIntegrablePhase(PhaseError):
    """Первообразная выходит за класс экспонент-полиномов"""


class ChartMismatch(SuperAlgebraError):
    """Форма и векторное поле заданы на разных картах"""


class SolverError(SuperAlgebraError):
    """Ошибка решения линейной системы"""


class NonUnitPivot(SolverError):
    """Ни один ведущий коэффициент не обратим"""


class Inconsistent(SolverError):
    """Система несовместна"""

    def __init__(self, message, equation=None):
        super().__init__(message)
        self.equation = equation


class Underdetermined(SolverError):
    """Система имеет свободные неизвестные"""

    def __init__(self, message, free=()):
        super().__init__(message)
        self.free = tuple(free)


class MembershipError(SuperAlgebraError):
    """Элемент не принадлежит подпространству"""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class VerificationFailure(SuperAlgebraError):
    """Проверка тождества не прошла"""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class MalformedInput(SuperAlgebraError):
    """Некорректные входные данные (файл точки, фикстура, выражение)"""
