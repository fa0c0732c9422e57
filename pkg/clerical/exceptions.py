# ========================================================= #
from typing import List, Optional
from .enums import Judgement
# ========================================================= #


class ClericalError(Exception):
    """
    Base class for every user facing error of the toolchain. Internal faults are NOT subclasses of this.
    """


class ParseError(ClericalError, ValueError):
    """
    Raised by the lexer and the parser. Carries the source span of the offending token and the set of token
    descriptions that would have been accepted there.
    """

    def __init__(self, span, message: str, expected: Optional[List[str]] = None):
        if not message:
            raise ValueError('ParseError requires a non empty message')

        self.span, self.message, self.expected = span, message, list(expected or [])

        super().__init__(str(self))

    def __str__(self):
        _text = f'{self.span}: {self.message}' if self.span else self.message

        if self.expected:
            _text += f' (expected one of: {", ".join(self.expected)})'

        return _text


class TypeCheckError(ClericalError, ValueError):
    """
    Raised when no typing rule applies. ``judgement`` tells whether the read-only or the read-write judgement was
    being derived.
    """

    def __init__(self, span, message: str, judgement: Judgement = Judgement.RO):
        if not message:
            raise ValueError('TypeCheckError requires a non empty message')

        self.span, self.message, self.judgement = span, message, judgement

        super().__init__(str(self))

    def __str__(self):
        _where = f'{self.span}: ' if self.span else ''

        return f'{_where}{self.message} [{self.judgement.value}]'


class ConfigurationError(ClericalError, ValueError):
    """An option or parameter value is out of range, eg a non positive digit count or a precision cap below the start"""


class FragmentViolation(ClericalError):
    """The powerdomain oracle was asked to denote a construct outside its finite fragment (eg a limit)"""


# Evaluation signals. These are control flow, not user errors.

class Inconclusive(ArithmeticError):
    """An interval operation could not be decided at the current working precision"""


class PrecisionLoss(Inconclusive):
    """A real comparison inside the evaluator could not be decided. Restartable with more precision."""


class NotTightEnough(Inconclusive):
    """The result interval is too wide to be printed with the requested number of digits"""


class Deadlock(Exception):
    """Every guard of a case terminated and none of them was true"""


class FuelExhausted(Exception):
    """The configured loop-turn budget was exceeded"""


# ========================================================= #
