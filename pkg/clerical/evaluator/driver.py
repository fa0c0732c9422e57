# ========================================================= #
import dataclasses
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional
from .evaluator import EvalConfig, Machine, Outcome, UNIT, Value
from ..enums import DiagnosticReason, OutcomeKind
from ..exceptions import ConfigurationError, NotTightEnough
from ..numerics import Interval, int_to_text, to_decimal
from ..numerics.dyadic import check_precision
from ..typechecker.typechecker import TypedProgram
# ========================================================= #


DEFAULT_DIGITS = 20
DEFAULT_START_PRECISION = 60
DEFAULT_PRECISION_CAP = 10 ** 6


def get_logger():
    return logging.getLogger(__name__)


# ========================================================= #


@dataclass(frozen=True)
class Diagnostic:
    """Why a run gave up, and at which precision"""
    reason: DiagnosticReason
    precision: int
    message: str = ''

    def __str__(self):
        _text = f'{self.reason.value} at {self.precision} bits'
        return f'{_text}: {self.message}' if self.message else _text


@dataclass
class RunReport:
    """
    Result of :func:`run_with_restarts`. Exactly one of ``output`` and ``diagnostic`` is set.
    """
    output: Optional[str] = None
    diagnostic: Optional[Diagnostic] = None
    schedule: List[int] = field(default_factory=list)
    value: Value = None

    @property
    def ok(self) -> bool:
        return self.diagnostic is None

    @property
    def precision(self) -> Optional[int]:
        """The precision of the last attempt"""
        return self.schedule[-1] if self.schedule else None

    def to_dict(self) -> dict:
        if self.ok:
            return {'result': self.output, 'precision': self.precision, 'attempts': len(self.schedule)}

        return {'error': self.diagnostic.reason.value, 'precision': self.precision, 'attempts': len(self.schedule)}


# ========================================================= #


def next_precision(p: int) -> int:
    """The precision schedule: ``p -> ceil(1.25 p) + 32``"""
    return math.ceil(p * 5 / 4) + 32


def format_value(value: Value, digits: int = DEFAULT_DIGITS) -> str:
    """
    Canonical text of a runtime value.

    :param value: the value
    :param digits: fractional digits for reals
    :return: ``()``, ``true``/``false``, a decimal integer or a decimal real
    :raises NotTightEnough: for an interval too wide for ``digits``
    """
    if value is UNIT:
        return '()'

    if isinstance(value, bool):
        return 'true' if value else 'false'

    if isinstance(value, int):
        return int_to_text(value)

    if isinstance(value, Interval):
        return to_decimal(value, digits)

    raise TypeError(f'Not a runtime value: {value!r}')


def run_with_restarts(program: TypedProgram, digits: int = DEFAULT_DIGITS, base_cfg: EvalConfig = None,
                      start_precision: int = DEFAULT_START_PRECISION,
                      precision_cap: int = DEFAULT_PRECISION_CAP) -> RunReport:
    """
    Run a program, restarting with more precision whenever a comparison could not be decided or the result is too
    wide to print with ``digits`` digits.

    :param program: an elaborated program
    :param digits: fractional digits of a real result
    :param base_cfg: configuration for every attempt. Its precision is replaced by the schedule
    :param start_precision: first precision of the schedule. Defaults to 60 bits
    :param precision_cap: the schedule stops before exceeding this. Defaults to 10^6 bits
    :return: a :class:`RunReport`
    """
    if isinstance(digits, bool) or not isinstance(digits, int) or digits < 1:
        raise ConfigurationError(f'digits must be a positive integer. Got: {digits!r}')

    check_precision(start_precision)
    if precision_cap < start_precision:
        raise ConfigurationError(f'Precision cap {precision_cap} is below the start precision {start_precision}')

    base_cfg, _report, _p = base_cfg or EvalConfig(), RunReport(), start_precision
    _reason = ''

    while True:
        _report.schedule.append(_p)
        _outcome: Outcome = Machine(program.env, dataclasses.replace(base_cfg, precision=_p)).outcome(program.main)

        if _outcome.kind is OutcomeKind.DONE:
            try:
                _report.output, _report.value = format_value(_outcome.value, digits), _outcome.value
                return _report
            except NotTightEnough as exc:
                _reason = str(exc)

        elif _outcome.kind is OutcomeKind.PRECISION_LOSS:
            _reason = _outcome.message

        else:
            _kind = (DiagnosticReason.DEADLOCK if _outcome.kind is OutcomeKind.DEADLOCK else
                     DiagnosticReason.FUEL_EXHAUSTED)
            _report.diagnostic = Diagnostic(_kind, _p, _outcome.message)
            get_logger().warning(f'Giving up: {_report.diagnostic}')
            return _report

        _next = next_precision(_p)

        if _next > precision_cap:
            _report.diagnostic = Diagnostic(DiagnosticReason.PRECISION_CAP, _p, _reason)
            get_logger().warning(f'Giving up: {_report.diagnostic}')
            return _report

        get_logger().info(f'Restarting at {_next} bits ({_reason})')
        _p = _next


# ========================================================= #
