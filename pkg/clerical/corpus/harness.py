# ========================================================= #
import itertools
import logging
import os
import random
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, List, Optional, Sequence, Tuple
from ..enums import CorpusKind, DiagnosticReason
from ..exceptions import ConfigurationError
from ..evaluator import EvalConfig, RunReport, UNIT, run_with_restarts
from ..numerics import int_to_text, text_to_int
from ..oracle import PowerSet, denote_program, format_frag_value
from ..parser import parse_program, parse_expr
from ..serialization import to_json
from ..syntax import Expr, Program, inline_call
from ..typechecker import elaborate
# ========================================================= #


CORPUS_DIR = os.path.dirname(os.path.abspath(__file__))

SOFT_CMP_INDEX = 3
ORACLE_FUEL = 8
FRAGMENT_FUEL = 2000

# Diverging arguments for the derived operators
_BOTTOM_BOOL = '(while true do skip end ; true)'
_BOTTOM_INT = '(while true do skip end ; 0)'


def get_logger():
    return logging.getLogger(__name__)


# ========================================================= #


@dataclass(frozen=True)
class Failure:
    inputs: str
    output: str
    expected: str

    def __str__(self):
        return f'inputs {self.inputs}: got {self.output}, expected {self.expected}'


@dataclass
class PropertyReport:
    """Outcome of :func:`check_entry`. It passes iff there are no failures"""
    name: str
    samples: int = 0
    failures: List[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {'name': self.name, 'passed': self.passed, 'samples': self.samples}

    def __str__(self):
        if self.passed:
            return f'{self.name}: pass ({self.samples} samples)'

        _lines = [f'{self.name}: FAIL ({len(self.failures)} of {self.samples} samples)']
        _lines.extend(f'    {failure}' for failure in self.failures)

        return '\n'.join(_lines)


@dataclass(frozen=True)
class CorpusEntry:
    """
    One corpus program and the property it is checked against.

    :param name: entry name, also the ``.cl`` file name
    :param kind: whether the program is checked against the exact oracle or against a real valued reference
    :param function: the function under test, ``None`` when the main expression itself is the subject
    :param sampling: human readable description of the inputs
    :param plan: ``(rng, trials) -> list of input tuples``
    :param check: ``(entry, program, inputs, digits) -> Failure or None``
    """
    name: str
    kind: CorpusKind
    function: Optional[str]
    sampling: str
    plan: Callable[[random.Random, int], List[Tuple]]
    check: Callable[['CorpusEntry', Program, Tuple, int], Optional[Failure]]

    @property
    def path(self) -> str:
        return os.path.join(CORPUS_DIR, f'{self.name}.cl')

    def source(self) -> str:
        with open(self.path, encoding='utf-8') as f:
            return f.read()

    def program(self) -> Program:
        return parse_program(self.source(), self.path)


# ========================================================= #


def real_literal(x: Fraction) -> str:
    """Source text of a rational real constant"""
    if x.denominator == 1:
        return f'real({int_to_text(x.numerator)})'

    return f'real({int_to_text(x.numerator)}) * inv(real({int_to_text(x.denominator)}))'


def fragment_literal(value, bottom: str) -> str:
    """Source text of a fragment value. ``None`` stands for a diverging argument"""
    if value is None:
        return bottom

    return format_frag_value(value)


def show_inputs(inputs: Sequence) -> str:
    return '(' + ', '.join('⊥' if item is None else format_frag_value(item) for item in inputs) + ')'


def with_main(program: Program, main: Expr):
    return elaborate(Program(program.env, main))


def call_main(entry: CorpusEntry, args: Sequence[str]) -> Expr:
    return parse_expr(f'{entry.function}({", ".join(args)})', entry.path)


def inlined_main(entry: CorpusEntry, program: Program, args: Sequence[str]) -> Expr:
    return inline_call(program.function(entry.function), [parse_expr(arg, entry.path) for arg in args])


def pi_digits() -> Iterator[int]:
    """Decimal digits of pi, from an integer spigot: 3, 1, 4, 1, 5, ..."""
    def _compose(a, b):
        aq, ar, as_, at = a
        bq, br, bs, bt = b
        return aq * bq, aq * br + ar * bt, as_ * bq + at * bs, as_ * br + at * bt

    def _extract(z, j):
        q, r, s, t = z
        return (q * j + r) // (s * j + t)

    _z = (1, 0, 0, 1)
    _terms = ((k, 4 * k + 2, 0, 2 * k + 1) for k in itertools.count(1))

    while True:
        _y = _extract(_z, 3)

        while _y != _extract(_z, 4):
            _z = _compose(_z, next(_terms))
            _y = _extract(_z, 3)

        _z = _compose((10, -10 * _y, 0, 1), _z)
        yield _y


def pi_reference(digits: int) -> Fraction:
    """Pi truncated to ``digits`` fractional digits"""
    _digits = list(itertools.islice(pi_digits(), digits + 1))

    return Fraction(text_to_int(''.join(map(str, _digits))), 10 ** digits)


def sin_partial_sum(x: Fraction, j: int) -> Tuple[Fraction, Fraction]:
    """
    The state of the sine loop after ``j`` turns.

    :return: ``(S, t)``: the sum of the first ``j + 1`` series terms and the term after them
    """
    _sum, _term = x, -x ** 3 / 6

    for _j in range(1, j + 1):
        _sum += _term
        _term = -_term * x * x / ((2 * _j + 2) * (2 * _j + 3))

    return _sum, _term


def sin_reference(x: Fraction, tolerance: Fraction) -> Tuple[Fraction, Fraction]:
    """
    A partial sum of the sine series and a bound on its error.

    :param x: the argument
    :param tolerance: the error bound must be below this
    :return: ``(S, bound)`` with ``|sin(x) - S| <= bound < tolerance``
    """
    _sum, _term, _j = x, -x ** 3 / 6, 0

    # the alternating tail is bounded by its first term once terms decrease
    while abs(_term) >= tolerance or x * x >= (2 * _j + 4) * (2 * _j + 5):
        _j += 1
        _sum += _term
        _term = -_term * x * x / ((2 * _j + 2) * (2 * _j + 3))

    return _sum, abs(_term)


# ========================================================= #


def _decimal_failure(inputs: str, report: RunReport, reference: Fraction, slack: Fraction,
                     digits: int) -> Optional[Failure]:
    _bound = Fraction(1, 10 ** digits)

    if not report.ok:
        return Failure(inputs, str(report.diagnostic), f'within 10^-{digits} of {float(reference)}')

    if abs(Fraction(report.output) - reference) >= _bound + slack:
        return Failure(inputs, report.output, f'within 10^-{digits} of {float(reference)}')

    return None


def _check_abs(entry, program, inputs, digits):
    x, = inputs
    _report = run_with_restarts(with_main(program, call_main(entry, [real_literal(x)])), digits)

    return _decimal_failure(show_inputs(inputs), _report, abs(x), Fraction(0), digits)


def _check_sin(entry, program, inputs, digits):
    x, = inputs
    _reference, _error = sin_reference(x, Fraction(1, 10 ** (digits + 6)))
    _report = run_with_restarts(with_main(program, call_main(entry, [real_literal(x)])), digits)

    return _decimal_failure(show_inputs(inputs), _report, _reference, _error, digits)


def _check_pi(entry, program, inputs, digits):
    _report = run_with_restarts(with_main(program, call_main(entry, [])), digits)

    return _decimal_failure('()', _report, pi_reference(digits + 10), Fraction(1, 10 ** (digits + 10)), digits)


def _interpreter_failure(inputs: str, report: RunReport, expected: PowerSet) -> Optional[Failure]:
    """The interpreter must produce one of the possible values, or fail to terminate only when that is possible"""
    if report.ok:
        if report.output not in {format_frag_value(value) for value in expected.values}:
            return Failure(inputs, report.output, f'one of {expected}')

        return None

    if report.diagnostic.reason is DiagnosticReason.PRECISION_CAP or not expected.bottom:
        return Failure(inputs, str(report.diagnostic), f'one of {expected}')

    return None


def _soft_cmp_expected(x: Fraction, y: Fraction, n: int) -> PowerSet:
    _eps = Fraction(1, 2 ** n)

    if x <= y - _eps:
        return PowerSet.of(True)

    if x >= y + _eps:
        return PowerSet.of(False)

    return PowerSet.of(True, False)


def _check_soft_cmp(entry, program, inputs, digits):
    x, y, n = inputs
    _typed = with_main(program, call_main(entry, [real_literal(x), real_literal(y), str(n)]))
    _expected = _soft_cmp_expected(x, y, n)
    _denotation = denote_program(_typed, ORACLE_FUEL)

    if _denotation != _expected:
        return Failure(show_inputs(inputs), f'denotation {_denotation}', str(_expected))

    return _interpreter_failure(show_inputs(inputs), run_with_restarts(_typed, digits), _expected)


def _table_check(table: Callable[..., PowerSet], bottom: str):
    """
    Check of a derived operator on deterministic inputs: the oracle must reproduce ``table`` exactly and the
    interpreter must agree with the oracle.
    """
    def _check(entry, program, inputs, digits):
        if entry.function is None:
            _main = program.main
        else:
            _main = inlined_main(entry, program, [fragment_literal(value, bottom) for value in inputs])

        _typed, _expected = with_main(program, _main), table(*inputs)
        _denotation = denote_program(_typed, ORACLE_FUEL)

        if _denotation != _expected:
            return Failure(show_inputs(inputs), f'denotation {_denotation}', str(_expected))

        # a fresh scheduling order per input
        _seed = zlib.crc32(show_inputs(inputs).encode('utf-8'))
        _config = EvalConfig(fuel=FRAGMENT_FUEL, scheduler_seed=_seed)

        return _interpreter_failure(show_inputs(inputs), run_with_restarts(_typed, base_cfg=_config), _expected)

    return _check


def _lifted(*values) -> PowerSet:
    """Values with ``None`` read as nontermination"""
    _present = [value for value in values if value is not None]

    return PowerSet(frozenset(_present), len(_present) < len(values))


def _choice_table(a, b) -> PowerSet:
    return _lifted(a, b)


def _amb_table(a, b) -> PowerSet:
    if a is None and b is None:
        return PowerSet.of(bottom=True)

    return PowerSet.of(*[value for value in (a, b) if value is not None])


def _neg_table(b) -> PowerSet:
    return _lifted(None if b is None else not b)


def _strict_or_table(a, b) -> PowerSet:
    return _lifted(None if a is None or b is None else a or b)


def _parallel_or_table(a, b) -> PowerSet:
    if a is True or b is True:
        return PowerSet.of(True)

    if a is False and b is False:
        return PowerSet.of(False)

    return PowerSet.of(bottom=True)


# ========================================================= #


def _rational_plan(low: int, high: int, closed: bool):
    def _plan(rng: random.Random, trials: int) -> List[Tuple]:
        _inputs = []

        for _ in range(trials):
            _q = rng.choice([1, 3, 7, 64, 100, 1000, 4096])
            _lo, _hi = (low * _q, high * _q) if closed else (low * _q + 1, high * _q - 1)
            _inputs.append((Fraction(rng.randint(_lo, _hi), _q),))

        return _inputs

    return _plan


def _once(rng, trials):
    return [()]


def _soft_cmp_grid(rng, trials):
    return [(1 + Fraction(i, 1000), Fraction(1), SOFT_CMP_INDEX) for i in range(-250, 250)]


def _table_plan(*domains):
    def _plan(rng, trials):
        return list(itertools.product(*domains))

    return _plan


_BOOLS = (True, False, None)
_INTS = (0, 1, None)


def load_corpus() -> List[CorpusEntry]:
    """
    The shipped example programs with their properties. Every entry is parsed and type checked here.

    :return: list of :class:`CorpusEntry`
    :raises ParseError: when a corpus file does not parse
    :raises TypeCheckError: when a corpus file does not type check
    """
    _entries = [
        CorpusEntry('abs', CorpusKind.REAL, 'abs', 'random rationals in [-10, 10]', _rational_plan(-10, 10, True),
                    _check_abs),
        CorpusEntry('sin', CorpusKind.REAL, 'sin', 'random rationals in (3, 4)', _rational_plan(3, 4, False),
                    _check_sin),
        CorpusEntry('pi', CorpusKind.REAL, 'pi', 'a single run', _once, _check_pi),
        CorpusEntry('soft_cmp', CorpusKind.REAL, 'soft_lt',
                    f'y = 1, x = 1 + i/1000 for -250 <= i < 250, n = {SOFT_CMP_INDEX}', _soft_cmp_grid,
                    _check_soft_cmp),
        CorpusEntry('binary_choice', CorpusKind.FRAGMENT, 'choose', 'every pair over {0, 1, ⊥}',
                    _table_plan(_INTS, _INTS), _table_check(_choice_table, _BOTTOM_INT)),
        CorpusEntry('amb', CorpusKind.FRAGMENT, 'amb', 'every pair over {0, 1, ⊥}', _table_plan(_INTS, _INTS),
                    _table_check(_amb_table, _BOTTOM_INT)),
        CorpusEntry('neg', CorpusKind.FRAGMENT, 'neg', 'true, false and ⊥', _table_plan(_BOOLS),
                    _table_check(_neg_table, _BOTTOM_BOOL)),
        CorpusEntry('strict_or', CorpusKind.FRAGMENT, 'strict_or', 'every pair over {true, false, ⊥}',
                    _table_plan(_BOOLS, _BOOLS), _table_check(_strict_or_table, _BOTTOM_BOOL)),
        CorpusEntry('parallel_or', CorpusKind.FRAGMENT, 'parallel_or', 'every pair over {true, false, ⊥}',
                    _table_plan(_BOOLS, _BOOLS), _table_check(_parallel_or_table, _BOTTOM_BOOL)),
        CorpusEntry('nonmono_diverge', CorpusKind.FRAGMENT, None, 'the main expression', _once,
                    _table_check(lambda: PowerSet.of(UNIT), _BOTTOM_BOOL)),
        CorpusEntry('nonmono_true', CorpusKind.FRAGMENT, None, 'the main expression', _once,
                    _table_check(lambda: PowerSet.of(UNIT, bottom=True), _BOTTOM_BOOL)),
    ]

    for _entry in _entries:
        elaborate(_entry.program())

    return _entries


def check_entry(entry: CorpusEntry, trials: int = 100, digits: int = 12, seed: int = 0) -> PropertyReport:
    """
    Sample inputs for an entry, run each through the interpreter (and the oracle for fragment properties) and
    collect the samples that violate the property. Table and grid plans always run in full.

    :param entry: the :class:`CorpusEntry`
    :param trials: number of random samples. Must be at least 1
    :param digits: fractional digits asked of real results
    :param seed: seed of the input sampler
    :return: a :class:`PropertyReport`
    """
    if trials < 1:
        raise ConfigurationError(f'trials must be at least 1. Got: {trials}')

    _program, _report = entry.program(), PropertyReport(entry.name)

    for _inputs in entry.plan(random.Random(seed), trials):
        _report.samples += 1

        try:
            _failure = entry.check(entry, _program, _inputs, digits)
        except Exception as exc:
            get_logger().exception(f'{entry.name}: sample {show_inputs(_inputs)} raised')
            _failure = Failure(show_inputs(_inputs), f'{type(exc).__name__}: {exc}', 'no exception')

        if _failure is not None:
            _report.failures.append(_failure)

    get_logger().info(str(_report).splitlines()[0])

    return _report


def run_corpus(trials: int = 100, digits: int = 12, names: Sequence[str] = None,
               seed: int = 0) -> List[PropertyReport]:
    """
    Check every corpus entry, or the ones named.

    :param trials: random samples per entry
    :param digits: fractional digits asked of real results
    :param names: entry names to check. Defaults to all
    :param seed: seed of the input samplers
    :return: one :class:`PropertyReport` per entry, in corpus order
    """
    _entries = load_corpus()

    if names:
        _unknown = set(names) - {entry.name for entry in _entries}
        if _unknown:
            raise ConfigurationError(f'Unknown corpus entries: {", ".join(sorted(_unknown))}')

        _entries = [entry for entry in _entries if entry.name in names]

    return [check_entry(entry, trials, digits, seed) for entry in _entries]


def write_summary(reports: Sequence[PropertyReport], path: str):
    """Write one JSON line per report: name, passed, samples"""
    with open(path, 'w', encoding='utf-8') as f:
        for _report in reports:
            f.write(to_json(_report.to_dict()) + '\n')


# ========================================================= #
