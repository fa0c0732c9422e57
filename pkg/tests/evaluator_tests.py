# ========================================================= #
import unittest
from fractions import Fraction
from clerical.enums import BaseType, DiagnosticReason, OutcomeKind
from clerical.exceptions import NotTightEnough
from clerical.evaluator import (EvalConfig, Machine, UNIT, evaluate, run_case, eval_limit, run_with_restarts,
                                format_value, next_precision)
from clerical.numerics import Dyadic, Interval
from clerical.parser import parse_program, parse_expr
from clerical.syntax import Context
from clerical.typechecker import RwContext, elaborate, elaborate_expr
# ========================================================= #


Z = BaseType.INTEGER


def compile_program(source: str):
    return elaborate(parse_program(source))


def run(source: str, digits: int = 10, config: EvalConfig = None, **kwargs):
    return run_with_restarts(compile_program(source), digits, config, **kwargs)


def typed(source: str, ro=(), rw=()):
    return elaborate_expr((), RwContext(Context.of(*ro), Context.of(*rw)), parse_expr(source))


# ========================================================= #


class TestConfig(unittest.TestCase):
    def test_defaults(self):
        _config = EvalConfig()

        self.assertEqual((_config.precision, _config.guard_step_budget, _config.fuel), (60, 256, None))
        self.assertEqual((_config.limit_index_offset, _config.limit_headroom), (2, 32))

    def test_validation(self):
        for _kwargs in ({'precision': 1}, {'precision': True}, {'guard_step_budget': 0}, {'fuel': 0},
                        {'limit_headroom': -1}):
            with self.subTest(**_kwargs):
                with self.assertRaises(ValueError):
                    EvalConfig(**_kwargs)


# ========================================================= #


class TestMachine(unittest.TestCase):
    def test_values(self):
        self.assertEqual(run('do 1 + 2 * 3').output, '7')
        self.assertEqual(run('do 2 - 5').output, '-3')
        self.assertEqual(run('do 3 = 3').output, 'true')
        self.assertEqual(run('do skip').output, '()')
        self.assertEqual(run('do real(1) * inv(real(3))', digits=5).output, '0.33333')
        self.assertEqual(run('do 2 ^ (-3)', digits=4).output, '0.1250')

    def test_state(self):
        self.assertEqual(run('do var x := 0 in while x < 10 do x := x + 1 end ; x').output, '10')
        self.assertEqual(run('do var x := 1 in (var x := 5 in x := x + 1) ; x').output, '1')
        self.assertEqual(run('do var x := 2 in if x < 3 then x := x * x else skip end ; x').output, '4')

    def test_functions(self):
        _source = 'let sq(x : int) : int := x * x\nlet f(a : int, b : int) : int := sq(a) + b\ndo f(3, 1)'

        self.assertEqual(run(_source).output, '10')

    def test_final_store(self):
        _c = typed('x := x + 1 ; var y := x in y := 0', rw=[('x', Z)])
        _outcome = evaluate(EvalConfig(), (), [41], _c)

        self.assertIs(_outcome.kind, OutcomeKind.DONE)
        self.assertIs(_outcome.value, UNIT)
        self.assertEqual(_outcome.store, (42,))

    def test_store_is_copied(self):
        _store = [1]
        evaluate(EvalConfig(), (), _store, typed('x := 7', rw=[('x', Z)]))

        self.assertEqual(_store, [1])

    def test_fuel(self):
        _outcome = evaluate(EvalConfig(fuel=10), (), [], typed('while true do skip end'))

        self.assertIs(_outcome.kind, OutcomeKind.FUEL_EXHAUSTED)

        _machine = Machine((), EvalConfig(fuel=10))
        self.assertEqual(_machine.run(typed('var i := 0 in while i < 10 do i := i + 1 end ; i'), []), 10)
        self.assertEqual(_machine.turns, 10)
        self.assertGreater(_machine.steps, 10)

    def test_arguments_are_evaluated_first(self):
        _report = run('let f(a : int) : int := 1 do f(case false => 1 end)')

        self.assertFalse(_report.ok)
        self.assertIs(_report.diagnostic.reason, DiagnosticReason.DEADLOCK)


# ========================================================= #


class TestGuardedChoice(unittest.TestCase):
    def test_first_true_guard_wins_without_seed(self):
        self.assertEqual(run('do case true => 0 | true => 1 end').output, '0')

    def test_seed_changes_the_choice(self):
        _program = compile_program('do case true => 0 | true => 1 end')
        _outputs = {run_with_restarts(_program, 1, EvalConfig(scheduler_seed=seed)).output for seed in range(50)}

        self.assertEqual(_outputs, {'0', '1'})

    def test_diverging_guard_does_not_block(self):
        _program = compile_program('do case (while true do skip end ; true) => 1 | true => 2 end')

        for _seed in range(20):
            with self.subTest(seed=_seed):
                _report = run_with_restarts(_program, 1, EvalConfig(scheduler_seed=_seed))
                self.assertEqual(_report.output, '2')

    def test_false_guards_deadlock(self):
        _report = run('do case false => 1 | 1 < 0 => 2 end')

        self.assertIs(_report.diagnostic.reason, DiagnosticReason.DEADLOCK)
        self.assertEqual(_report.to_dict(), {'error': 'deadlock', 'precision': 60, 'attempts': 1})

    def test_inconclusive_guard_is_skipped(self):
        self.assertEqual(run('do case real(1) < real(1) => 1 | true => 2 end').output, '2')

    def test_round_robin_slices(self):
        _source = ('do case (var i := 0 in while i < 100 do i := i + 1 end ; false) => 1 '
                   '| (var j := 0 in while j < 50 do j := j + 1 end ; true) => 2 end')
        _machine = Machine((), EvalConfig(guard_step_budget=10), record_slices=True)

        self.assertEqual(_machine.run(compile_program(_source).main, []), 2)
        self.assertGreater(len(_machine.slices), 2)

        _rounds = {}
        for _case_id, _round, _branch, _steps in _machine.slices:
            self.assertEqual(_case_id, 0)
            self.assertLessEqual(_steps, 10)
            _rounds.setdefault(_round, []).append(_branch)

        self.assertEqual(sorted(_rounds), list(range(1, len(_rounds) + 1)))
        self.assertTrue(all(branches == [0, 1] for branches in _rounds.values()))

    def test_run_case(self):
        _ro = [('x', Z)]
        _branches = [(typed('x < 0', _ro), typed('0 - x', _ro)), (typed('0 < x + 1', _ro), typed('x', _ro))]

        self.assertEqual(run_case(EvalConfig(), (), [5], _branches).value, 5)
        self.assertEqual(run_case(EvalConfig(), (), [-5], _branches[:1]).value, 5)
        self.assertIs(run_case(EvalConfig(), (), [5], _branches[:1]).kind, OutcomeKind.DEADLOCK)


# ========================================================= #


class TestLimits(unittest.TestCase):
    def test_index_and_widening(self):
        _body = typed('2 ^ (-n)', ro=[('n', Z)])
        _outcome = eval_limit(EvalConfig(precision=20), (), [], 'n', _body)

        # index 22, the body value 2^-22 widened by 2^-22
        self.assertEqual(_outcome.value, Interval(Dyadic(0), Dyadic(1, -21)))

    def test_deadlock_inside_limit_is_restartable(self):
        _outcome = evaluate(EvalConfig(), (), [], typed('lim n. case false => real(0) end'))

        self.assertIs(_outcome.kind, OutcomeKind.PRECISION_LOSS)

    def test_absolute_value(self):
        _abs = 'let abs(x : real) : real := lim n. case x < 2 ^ (-n - 1) => -x | -2 ^ (-n - 1) < x => x end\n'

        self.assertEqual(run(_abs + 'do abs(real(-3) * inv(real(2)))', digits=5).output, '1.50000')
        self.assertEqual(run(_abs + 'do abs(real(7))', digits=3).output, '7.000')

        _program = compile_program(_abs + 'do abs(real(0))')
        _zero = Machine(_program.env).run(_program.main, [])

        self.assertTrue(_zero.contains(0))
        self.assertLessEqual(_zero.width(), Dyadic(1, -60))


# ========================================================= #


class TestRestarts(unittest.TestCase):
    def test_next_precision(self):
        self.assertEqual(next_precision(60), 107)
        self.assertEqual(next_precision(107), 166)
        self.assertEqual(next_precision(166), 240)

    def test_restart_decides_comparison(self):
        _report = run('do real(1) < real(1) + 2 ^ (-100)')

        self.assertEqual(_report.output, 'true')
        self.assertEqual(_report.schedule, [60, 107])
        self.assertEqual(_report.to_dict(), {'result': 'true', 'precision': 107, 'attempts': 2})

    def test_restart_for_digits(self):
        _report = run('do inv(real(3))', digits=40)

        self.assertEqual(_report.output, '0.' + '3' * 40)
        self.assertEqual(_report.schedule, [60, 107, 166])

    def test_precision_cap(self):
        _report = run('do real(1) < real(1)', precision_cap=200)

        self.assertFalse(_report.ok)
        self.assertIs(_report.diagnostic.reason, DiagnosticReason.PRECISION_CAP)
        self.assertEqual(_report.schedule, [60, 107, 166])
        self.assertEqual(_report.diagnostic.precision, 166)
        self.assertTrue(str(_report.diagnostic).startswith('precision cap reached at 166 bits'))

    def test_fuel_is_not_restarted(self):
        _report = run('do while true do skip end', config=EvalConfig(fuel=5))

        self.assertIs(_report.diagnostic.reason, DiagnosticReason.FUEL_EXHAUSTED)
        self.assertEqual(_report.schedule, [60])

    def test_bad_arguments(self):
        _program = compile_program('do skip')

        with self.assertRaises(ValueError):
            run_with_restarts(_program, 0)

        with self.assertRaises(ValueError):
            run_with_restarts(_program, 5, start_precision=100, precision_cap=50)


class TestFormatValue(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(format_value(UNIT), '()')
        self.assertEqual(format_value(True), 'true')
        self.assertEqual(format_value(False), 'false')
        self.assertEqual(format_value(-5), '-5')
        self.assertEqual(format_value(Interval.point(Dyadic(3, -1)), 2), '1.50')

    def test_errors(self):
        with self.assertRaises(NotTightEnough):
            format_value(Interval(Dyadic(0), Dyadic(1)), 3)

        with self.assertRaises(TypeError):
            format_value(Fraction(1, 2))

    def test_large_integers(self):
        self.assertEqual(format_value(10 ** 5000), '1' + '0' * 5000)
        self.assertEqual(format_value(-(10 ** 5000) + 1), '-' + '9' * 5000)


# ========================================================= #


class TestDeterminism(unittest.TestCase):
    SOURCES = [
        'do case (var i := 0 in while i < 30 do i := i + 1 end ; true) => 1 | true => 2 '
        '| (while true do skip end ; true) => 3 end',
        'do var x := real(2) in (var k := 0 in while k < 5 do x := x * inv(real(3)) + real(1) ; k := k + 1 end) ; x',
        'let abs(x : real) : real := lim n. case x < 2 ^ (-n - 1) => -x | -2 ^ (-n - 1) < x => x end '
        'do abs(real(-1) * inv(real(3)))',
        'do case real(1) < real(1) => 0 | false => 1 end',
    ]

    def test_reruns_are_identical(self):
        for _source in self.SOURCES:
            _program = compile_program(_source)

            for _config in (EvalConfig(), EvalConfig(scheduler_seed=7, guard_step_budget=5),
                            EvalConfig(precision=107, scheduler_seed=0)):
                with self.subTest(source=_source, config=_config):
                    _first = Machine(_program.env, _config, record_slices=True)
                    _second = Machine(_program.env, _config, record_slices=True)

                    self.assertEqual(_first.outcome(_program.main), _second.outcome(_program.main))
                    self.assertEqual((_first.steps, _first.turns), (_second.steps, _second.turns))
                    self.assertEqual(_first.slices, _second.slices)

    def test_reports_are_identical(self):
        _program = compile_program(self.SOURCES[2])
        _config = EvalConfig(scheduler_seed=3)

        self.assertEqual(run_with_restarts(_program, 20, _config), run_with_restarts(_program, 20, _config))


class TestLargePrograms(unittest.TestCase):
    def test_long_sequence(self):
        _report = run('do var x := 0 in ' + ' ; '.join(['x := x + 1'] * 500) + ' ; x')

        self.assertEqual(_report.output, '500')

    def test_long_sum(self):
        self.assertEqual(run('do ' + ' + '.join(['1'] * 180)).output, '180')

    def test_large_integers(self):
        _report = run('do var x := 10 in (var i := 0 in while i < 14 do x := x * x ; i := i + 1 end) ; x')

        self.assertEqual(_report.output, '1' + '0' * 16384)

    def test_large_real(self):
        _report = run('do real(' + '1' + '0' * 5000 + ') * inv(real(3))', digits=3)

        self.assertEqual(_report.output, '3' * 5000 + '.333')


# ========================================================= #


if __name__ == '__main__':
    unittest.main()
