"""Сертификаты проверок и вспомогательные утверждения"""
import logging
from dataclasses import asdict, dataclass, field

from .exceptions import SuperAlgebraError, VerificationFailure

logger = logging.getLogger(__name__)


@dataclass
class Certificate:
    """Результат одной проверки: имя, статус, пояснение и свидетель ошибки"""
    suite: str
    name: str
    passed: bool
    detail: str = ''
    witness: str = ''
    expected_failure: bool = False
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        """Проверка, которая обязана провалиться, засчитывается при провале"""
        return self.passed != self.expected_failure

    def as_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        return cls(**data)


def _text(value):
    if value is None:
        return ''
    return str(value)


def expect_equal(actual, expected, what=''):
    """VerificationFailure со свидетелем - разностью, если значения различны"""
    if actual == expected:
        return
    try:
        difference = actual - expected
    except Exception:
        difference = None
    witness = f"{what}: got {actual}; expected {expected}"
    if difference is not None:
        witness += f"; difference {difference}"
    raise VerificationFailure(f"{what} mismatch", witness=witness)


def expect_true(condition, what, witness=None):
    if not condition:
        raise VerificationFailure(f"{what} does not hold", witness=_text(witness) or what)


def _attempt(check):
    """(прошла ли, пояснение, свидетель)"""
    try:
        detail = check()
    except VerificationFailure as e:
        return False, str(e), _text(e.witness)
    except SuperAlgebraError as e:
        return False, f"{type(e).__name__}: {e}", _text(getattr(e, 'witness', '')) or str(e)
    return True, _text(detail) if detail is not True else '', ''


def _logged(certificate):
    suite, name = certificate.suite, certificate.name
    if certificate.ok:
        logger.info(f"[{suite}] {name}: {'pass' if certificate.passed else 'fails as expected'}")
    else:
        logger.warning(f"[{suite}] {name}: FAILED {certificate.detail}")
    return certificate


def all_ok(certificates):
    return all(c.ok for c in certificates)


def run_check(suite, name, check, expected_failure=False):
    """Выполнение одной проверки с превращением исключений в сертификат"""
    passed, detail, witness = _attempt(check)
    return _logged(Certificate(suite, name, passed, detail=detail, witness=witness,
                               expected_failure=expected_failure))


def run_checks(suite, name, parts, expected_failure=False):
    """Составная проверка: части вида (имя, функция) выполняются все, без остановки на первой ошибке"""
    checks = []
    for part, check in parts:
        passed, detail, witness = _attempt(check)
        checks.append({'name': part, 'passed': passed, 'witness': witness or detail})
    failed = [c for c in checks if not c['passed']]
    detail = ', '.join(f"{c['name']} failed" for c in failed)
    witness = '; '.join(f"{c['name']}: {c['witness']}" for c in failed)
    return _logged(Certificate(suite, name, not failed, detail=detail, witness=witness,
                               expected_failure=expected_failure, checks=checks))
