# ========================================================= #
import enum
# ========================================================= #


# Base Types - Syntax
class BaseType(enum.Enum):
    """
    The four base types of the language. Used by the typechecker, the evaluator and the oracle. The value is the
    keyword used for the type in concrete syntax.
    """
    UNIT = 'unit'
    BOOLEAN = 'bool'
    INTEGER = 'int'
    REAL = 'real'

    def __str__(self):
        return _TYPE_LETTERS[self]


_TYPE_LETTERS = {BaseType.UNIT: 'U', BaseType.BOOLEAN: 'B', BaseType.INTEGER: 'Z', BaseType.REAL: 'R'}


# Arithmetic Operators - Syntax
class ArithOp(enum.Enum):
    """
    Arithmetic operators. The same three are shared by integer and real nodes; the typechecker decides which node kind
    an overloaded surface operator becomes.
    """
    ADD = '+'
    SUB = '-'
    MUL = '*'


# Comparison Operators - Syntax
class CompareOp(enum.Enum):
    """Comparison operators of the surface syntax. ``=`` exists on integers only."""
    LT = '<'
    EQ = '='


# Token Kinds - Parser
class TokenKind(enum.Enum):
    """Lexical token categories produced by :func:`clerical.parser.lexer.tokenize`"""
    KEYWORD = 'keyword'
    IDENT = 'identifier'
    INT = 'integer literal'
    SYMBOL = 'symbol'
    EOF = 'end of input'


# Interval Comparison - Numerics
class Comparison(enum.Enum):
    """
    Result of :func:`clerical.numerics.interval.iv_compare`. ``INCONCLUSIVE`` means the two intervals overlap at the
    current working precision.
    """
    LT = 'lt'
    GT = 'gt'
    INCONCLUSIVE = 'inconclusive'


# Rounding Direction - Numerics
class RoundingDirection(enum.Enum):
    """Direction for :func:`clerical.numerics.dyadic.round_dir`"""
    DOWN = 'down'
    UP = 'up'


# Judgement form - Typechecker
class Judgement(enum.Enum):
    """Which typing judgement was being attempted when a :class:`TypeCheckError` was raised"""
    RO = 'ro'
    RW = 'rw'


# Outcome Kinds - Evaluator
class OutcomeKind(enum.Enum):
    """
    Kinds of :class:`clerical.evaluator.evaluator.Outcome`. Only ``PRECISION_LOSS`` is restartable.
    """
    DONE = 'done'
    PRECISION_LOSS = 'precision-loss'
    DEADLOCK = 'deadlock'
    FUEL_EXHAUSTED = 'fuel-exhausted'


# Guard States - Evaluator
class GuardState(enum.Enum):
    """Terminal (and running) states of a guard inside the case scheduler"""
    RUNNING = 'running'
    TRUE = 'true'
    FALSE = 'false'
    INCONCLUSIVE = 'inconclusive'
    DEADLOCKED = 'deadlocked'


# Diagnostic Reasons - Restart Driver
class DiagnosticReason(enum.Enum):
    """Why :func:`clerical.evaluator.driver.run_with_restarts` gave up"""
    DEADLOCK = 'deadlock'
    FUEL_EXHAUSTED = 'fuel exhausted'
    PRECISION_CAP = 'precision cap reached'


# Exit Codes - CLI
class ExitCode(enum.IntEnum):
    """
    Process exit codes of the ``clerical`` command. Every termination path maps to exactly one of these.
    """
    OK = 0
    INTERNAL_FAULT = 1
    STATIC_ERROR = 2
    FRAGMENT_VIOLATION = 3
    DEADLOCK = 4
    FUEL_EXHAUSTED = 5
    PRECISION_CAP = 6
    CORPUS_FAILURE = 7


# Corpus Entry Kinds - Corpus
class CorpusKind(enum.Enum):
    """
    ``FRAGMENT`` entries can be checked against the powerdomain oracle, ``REAL`` entries use limits and are only
    checked against exact rational references.
    """
    FRAGMENT = 'fragment'
    REAL = 'real'


# ========================================================= #
