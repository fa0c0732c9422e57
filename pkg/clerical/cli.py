# ========================================================= #
import argparse
import logging
import sys
from typing import List, Optional
from . import __version__
from .corpus import run_corpus, write_summary
from .enums import DiagnosticReason, ExitCode
from .evaluator import (EvalConfig, run_with_restarts, DEFAULT_DIGITS, DEFAULT_START_PRECISION,
                        DEFAULT_PRECISION_CAP)
from .exceptions import ConfigurationError, ParseError, TypeCheckError, FragmentViolation
from .oracle import denote_program, DEFAULT_FUEL
from .parser import parse_program
from .serialization import to_json
from .syntax import pretty_print_program
from .typechecker import elaborate
# ========================================================= #


DEFAULT_GUARD_BUDGET = 256
DEFAULT_TRIALS = 20
DEFAULT_CORPUS_DIGITS = 12

_DIAGNOSTIC_EXIT_CODES = {DiagnosticReason.DEADLOCK: ExitCode.DEADLOCK,
                          DiagnosticReason.FUEL_EXHAUSTED: ExitCode.FUEL_EXHAUSTED,
                          DiagnosticReason.PRECISION_CAP: ExitCode.PRECISION_CAP}


def get_logger():
    return logging.getLogger(__name__)


# ========================================================= #


def _at_least(minimum: int):
    def _parse(text: str) -> int:
        try:
            _value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f'expected an integer, got {text!r}')

        if _value < minimum:
            raise argparse.ArgumentTypeError(f'must be at least {minimum}, got {_value}')

        return _value

    return _parse


def build_parser() -> argparse.ArgumentParser:
    _parser = argparse.ArgumentParser(prog='clerical', description='Interpreter for the Clerical exact real language')
    _parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    _parser.add_argument('-v', '--verbose', action='count', default=0,
                         help='log restarts with -v, scheduling decisions with -vv')

    _commands = _parser.add_subparsers(dest='command', required=True)

    _run = _commands.add_parser('run', help='evaluate a program, restarting at higher precision as needed')
    _run.add_argument('file')
    _run.add_argument('--digits', type=_at_least(1), default=DEFAULT_DIGITS,
                      help=f'fractional digits of a real result (default: {DEFAULT_DIGITS})')
    _run.add_argument('--precision', type=_at_least(2), default=DEFAULT_START_PRECISION,
                      help=f'first working precision in bits (default: {DEFAULT_START_PRECISION})')
    _run.add_argument('--max-precision', type=_at_least(2), default=DEFAULT_PRECISION_CAP,
                      help=f'give up before exceeding this precision (default: {DEFAULT_PRECISION_CAP})')
    _run.add_argument('--fuel', type=_at_least(1), default=None, help='maximum number of loop turns per attempt')
    _run.add_argument('--seed', type=int, default=None, help='shuffle the guard order of every case with this seed')
    _run.add_argument('--guard-budget', type=_at_least(1), default=DEFAULT_GUARD_BUDGET,
                      help=f'evaluation steps per guard slice (default: {DEFAULT_GUARD_BUDGET})')
    _run.add_argument('--json', action='store_true', help='print a JSON object instead of the bare result')

    _check = _commands.add_parser('check', help='type check a program and print the type of its main expression')
    _check.add_argument('file')

    _denote = _commands.add_parser('denote', help='print the exact denotation of a program without limits')
    _denote.add_argument('file')
    _denote.add_argument('--fuel', type=_at_least(0), default=DEFAULT_FUEL,
                         help=f'unrollings of every while loop (default: {DEFAULT_FUEL})')
    _denote.add_argument('--chain', action='store_true', help='print every approximant from fuel 0 up to --fuel')

    _parse = _commands.add_parser('parse', help='parse a program and print it back')
    _parse.add_argument('file')

    _corpus = _commands.add_parser('corpus', help='check the example programs against their properties')
    _corpus.add_argument('names', nargs='*', help='entries to check (default: all)')
    _corpus.add_argument('--trials', type=_at_least(1), default=DEFAULT_TRIALS,
                         help=f'random samples per entry (default: {DEFAULT_TRIALS})')
    _corpus.add_argument('--digits', type=_at_least(1), default=DEFAULT_CORPUS_DIGITS,
                         help=f'fractional digits of real results (default: {DEFAULT_CORPUS_DIGITS})')
    _corpus.add_argument('--summary', default=None, help='also write one JSON line per entry to this file')

    return _parser


def configure_logging(verbosity: int):
    _level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=_level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')


# ========================================================= #


def _read(path: str) -> bytes:
    with open(path, 'rb') as f:
        return f.read()


def _load(path: str):
    return elaborate(parse_program(_read(path), path))


def _cmd_run(args) -> int:
    _program = _load(args.file)
    _config = EvalConfig(guard_step_budget=args.guard_budget, fuel=args.fuel, scheduler_seed=args.seed)
    _report = run_with_restarts(_program, args.digits, _config, args.precision, args.max_precision)

    if args.json:
        print(to_json(_report.to_dict()))
    elif _report.ok:
        print(_report.output)

    if _report.ok:
        return ExitCode.OK

    print(f'{args.file}: {_report.diagnostic}', file=sys.stderr)
    return _DIAGNOSTIC_EXIT_CODES[_report.diagnostic.reason]


def _cmd_check(args) -> int:
    print(f'TYPE: {_load(args.file).main_type.value}')
    return ExitCode.OK


def _cmd_denote(args) -> int:
    _program = _load(args.file)

    if args.chain:
        for _fuel in range(args.fuel + 1):
            print(f'{_fuel}: {denote_program(_program, _fuel)}')
    else:
        print(denote_program(_program, args.fuel))

    return ExitCode.OK


def _cmd_parse(args) -> int:
    print(pretty_print_program(parse_program(_read(args.file), args.file)))
    return ExitCode.OK


def _cmd_corpus(args) -> int:
    _reports = run_corpus(args.trials, args.digits, args.names)

    for _report in _reports:
        print(_report)

    if args.summary:
        write_summary(_reports, args.summary)

    return ExitCode.OK if all(report.passed for report in _reports) else ExitCode.CORPUS_FAILURE


_COMMANDS = {'run': _cmd_run, 'check': _cmd_check, 'denote': _cmd_denote, 'parse': _cmd_parse,
             'corpus': _cmd_corpus}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Entry point of the ``clerical`` command.

    :param argv: arguments without the program name. Defaults to ``sys.argv[1:]``
    :return: the process exit code, see :class:`clerical.enums.ExitCode`
    """
    _args = build_parser().parse_args(argv)
    configure_logging(_args.verbose)

    try:
        return int(_COMMANDS[_args.command](_args))

    except (ParseError, TypeCheckError) as exc:
        print(f'{type(exc).__name__}: {exc}', file=sys.stderr)
        return ExitCode.STATIC_ERROR

    except FragmentViolation as exc:
        print(f'FragmentViolation: {exc}', file=sys.stderr)
        return ExitCode.FRAGMENT_VIOLATION

    except OSError as exc:
        print(f'Cannot access {exc.filename or "file"}: {exc.strerror or exc}', file=sys.stderr)
        return ExitCode.STATIC_ERROR

    except ConfigurationError as exc:
        print(f'Invalid arguments: {exc}', file=sys.stderr)
        return ExitCode.STATIC_ERROR

    except Exception:
        get_logger().exception('Internal fault')
        return ExitCode.INTERNAL_FAULT


if __name__ == '__main__':
    sys.exit(main())


# ========================================================= #
