# ========================================================= #
import unittest
import dataclasses
import itertools
import json
import os
import tempfile
from fractions import Fraction
from clerical.corpus import (load_corpus, check_entry, run_corpus, write_summary, pi_digits, pi_reference,
                             sin_partial_sum, sin_reference, real_literal, PropertyReport)
from clerical.corpus import harness
from clerical.enums import CorpusKind
from clerical.evaluator import run_with_restarts
from clerical.numerics import Interval
from clerical.oracle import PowerSet
from clerical.parser import parse_expr
# ========================================================= #


def entry(name: str):
    return next(item for item in load_corpus() if item.name == name)


def assertPassed(test: unittest.TestCase, report: PropertyReport, samples: int):
    test.assertTrue(report.passed, str(report))
    test.assertEqual(report.samples, samples)


# ========================================================= #


class TestReferences(unittest.TestCase):
    def test_pi_digits(self):
        self.assertEqual(list(itertools.islice(pi_digits(), 12)), [3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8])
        self.assertEqual(pi_reference(5), Fraction(314159, 100000))

    def test_sin_partial_sums(self):
        _x = Fraction(1, 2)

        self.assertEqual(sin_partial_sum(_x, 0), (_x, -_x ** 3 / 6))
        self.assertEqual(sin_partial_sum(_x, 1), (_x - _x ** 3 / 6, _x ** 5 / 120))

    def test_sin_reference_bound(self):
        # sin(1/2) = 0.479425538604203
        _value, _bound = sin_reference(Fraction(1, 2), Fraction(1, 10 ** 16))

        self.assertLess(_bound, Fraction(1, 10 ** 16))
        self.assertLess(abs(_value - Fraction('0.479425538604203')), Fraction(1, 10 ** 14))

        # large arguments: the loop must go past the growing terms
        _value, _bound = sin_reference(Fraction(4), Fraction(1, 10 ** 6))
        self.assertLess(abs(_value - Fraction('-0.7568024953079282')), Fraction(1, 10 ** 6))

    def test_real_literal(self):
        self.assertEqual(real_literal(Fraction(3)), 'real(3)')
        self.assertEqual(real_literal(Fraction(-7, 4)), 'real(-7) * inv(real(4))')
        self.assertIsNotNone(parse_expr(real_literal(Fraction(-7, 4))))


# ========================================================= #


class TestLoadCorpus(unittest.TestCase):
    def test_entries(self):
        _entries = load_corpus()

        self.assertEqual([item.name for item in _entries],
                         ['abs', 'sin', 'pi', 'soft_cmp', 'binary_choice', 'amb', 'neg', 'strict_or', 'parallel_or',
                          'nonmono_diverge', 'nonmono_true'])
        self.assertTrue(all(os.path.exists(item.path) for item in _entries))
        self.assertEqual({item.kind for item in _entries}, {CorpusKind.REAL, CorpusKind.FRAGMENT})

    def test_functions_exist(self):
        for _entry in load_corpus():
            if _entry.function is not None:
                with self.subTest(entry=_entry.name):
                    self.assertEqual(_entry.program().function(_entry.function).name, _entry.function)


# ========================================================= #


class TestRealEntries(unittest.TestCase):
    def test_abs(self):
        assertPassed(self, check_entry(entry('abs'), trials=200, digits=12), 200)

    def test_sin(self):
        assertPassed(self, check_entry(entry('sin'), trials=50, digits=12), 50)

    def test_pi(self):
        assertPassed(self, check_entry(entry('pi'), digits=30), 1)

    def test_pi_digits_are_printed_exactly(self):
        _program = harness.with_main(entry('pi').program(), parse_expr('pi()'))
        _report = run_with_restarts(_program, 30)

        self.assertEqual(_report.output, '3.141592653589793238462643383279')

    def test_soft_comparison_grid(self):
        assertPassed(self, check_entry(entry('soft_cmp')), 500)

    def test_restart_schedule_increases(self):
        _runs = [('pi', [], 30), ('abs', [Fraction(0)], 20), ('abs', [Fraction(-7, 3)], 25),
                 ('sin', [Fraction(1, 3)], 15), ('sin', [Fraction(7, 2)], 25)]

        for _name, _args, _digits in _runs:
            with self.subTest(entry=_name, args=_args, digits=_digits):
                _entry = entry(_name)
                _main = harness.call_main(_entry, [real_literal(arg) for arg in _args])
                _report = run_with_restarts(harness.with_main(_entry.program(), _main), _digits)

                self.assertTrue(_report.ok, str(_report.diagnostic))
                self.assertTrue(all(a < b for a, b in zip(_report.schedule, _report.schedule[1:])))
                self.assertIsInstance(_report.value, Interval)
                self.assertLess(_report.value.width().to_fraction(), Fraction(1, 10 ** _digits))


class TestFragmentEntries(unittest.TestCase):
    def test_tables(self):
        for _name, _samples in (('binary_choice', 9), ('amb', 9), ('neg', 3), ('strict_or', 9), ('parallel_or', 9),
                                ('nonmono_diverge', 1), ('nonmono_true', 1)):
            with self.subTest(entry=_name):
                assertPassed(self, check_entry(entry(_name), trials=1), _samples)

    def test_wrong_table_fails(self):
        _wrong = dataclasses.replace(entry('neg'), check=harness._table_check(lambda b: PowerSet.of(True),
                                                                                 harness._BOTTOM_BOOL))
        _report = check_entry(_wrong)

        self.assertFalse(_report.passed)
        self.assertEqual(len(_report.failures), 2)
        self.assertIn('FAIL', str(_report))

    def test_exceptions_become_failures(self):
        _broken = dataclasses.replace(entry('pi'), check=lambda *args: 1 // 0)

        with self.assertLogs('clerical.corpus.harness', level='ERROR'):
            _report = check_entry(_broken)

        self.assertEqual(len(_report.failures), 1)
        self.assertIn('ZeroDivisionError', _report.failures[0].output)


# ========================================================= #


class TestRunCorpus(unittest.TestCase):
    def test_selected_entries(self):
        _reports = run_corpus(trials=2, names=['neg', 'abs'])

        self.assertEqual([report.name for report in _reports], ['abs', 'neg'])
        self.assertTrue(all(report.passed for report in _reports))

    def test_bad_arguments(self):
        with self.assertRaises(ValueError):
            run_corpus(names=['nope'])

        with self.assertRaises(ValueError):
            check_entry(entry('abs'), trials=0)

    def test_summary_file(self):
        _reports = [PropertyReport('a', 3), PropertyReport('b', 1, [harness.Failure('()', 'x', 'y')])]

        with tempfile.TemporaryDirectory() as tmp:
            _path = os.path.join(tmp, 'summary.jsonl')
            write_summary(_reports, _path)

            with open(_path, encoding='utf-8') as f:
                _lines = [json.loads(line) for line in f]

        self.assertEqual(_lines, [{'name': 'a', 'passed': True, 'samples': 3},
                                  {'name': 'b', 'passed': False, 'samples': 1}])


# ========================================================= #


if __name__ == '__main__':
    unittest.main()
