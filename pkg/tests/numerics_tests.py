# ========================================================= #
import unittest
import random
from fractions import Fraction
import clerical
from clerical.enums import Comparison, RoundingDirection
from clerical.exceptions import Inconclusive, NotTightEnough
from clerical.numerics import (Dyadic, Interval, round_dir, recip_dir, check_precision, iv_add, iv_sub, iv_mul,
                               iv_recip, iv_pow2, iv_compare, iv_widen, to_decimal, int_to_text, text_to_int)
# ========================================================= #


def random_dyadic(rng: random.Random, bits: int = 80) -> Dyadic:
    return Dyadic(rng.randint(-2 ** bits, 2 ** bits), rng.randint(-100, 20))


def random_interval(rng: random.Random) -> Interval:
    _a, _b = random_dyadic(rng), random_dyadic(rng)

    if rng.random() < 0.2:
        return Interval.point(_a)

    return Interval(min(_a, _b), max(_a, _b))


def endpoints(a: Interval):
    return a.lo.to_fraction(), a.hi.to_fraction()


# ========================================================= #


class TestDyadic(unittest.TestCase):
    def test_canonical_form(self):
        self.assertEqual(Dyadic(12, 0), Dyadic(3, 2))
        self.assertEqual((Dyadic(12, 0).mantissa, Dyadic(12, 0).exponent), (3, 2))
        self.assertEqual((Dyadic(0, 17).mantissa, Dyadic(0, 17).exponent), (0, 0))
        self.assertEqual(Dyadic(-8, -3), Dyadic(-1, 0))

    def test_conversions(self):
        self.assertEqual(Dyadic(3, -2).to_fraction(), Fraction(3, 4))
        self.assertEqual(Dyadic(5, 3).to_fraction(), Fraction(40))
        self.assertEqual(Dyadic.from_int(-7).to_fraction(), Fraction(-7))
        self.assertEqual(str(Dyadic(3, -2)), '3/4')
        self.assertEqual(repr(Dyadic(3, -2)), 'Dyadic(3, -2)')

    def test_exact_arithmetic(self):
        _a, _b = Dyadic(3, -2), Dyadic(5, 1)

        self.assertEqual((_a + _b).to_fraction(), Fraction(43, 4))
        self.assertEqual((_a - _b).to_fraction(), Fraction(-37, 4))
        self.assertEqual((_a * _b).to_fraction(), Fraction(30, 4))
        self.assertEqual((-_a).to_fraction(), Fraction(-3, 4))
        self.assertEqual(abs(Dyadic(-3, 1)), Dyadic(6, 0))

    def test_ordering(self):
        self.assertLess(Dyadic(1, -1), Dyadic(1, 0))
        self.assertLess(Dyadic(-3, 4), Dyadic(1, -10))
        self.assertGreater(Dyadic(3, 0), 2)
        self.assertEqual(Dyadic(1, -1), Fraction(1, 2))
        self.assertEqual(min(Dyadic(5, 0), Dyadic(9, -1)), Dyadic(9, -1))

    def test_immutable(self):
        with self.assertRaises(AttributeError):
            Dyadic(1, 0).mantissa = 2

    def test_hash_matches_equality(self):
        self.assertEqual(hash(Dyadic(4, 0)), hash(Dyadic(1, 2)))
        self.assertEqual(len({Dyadic(4, 0), Dyadic(1, 2), Dyadic(2, 1)}), 1)

    def test_exponent_overflow(self):
        with self.assertRaises(OverflowError):
            Dyadic(1, 2 ** 63)


class TestRounding(unittest.TestCase):
    def test_round_down_and_up(self):
        # 7/16 = 0.0111b, two bits
        _x = Dyadic(7, -4)

        self.assertEqual(round_dir(_x, 2, RoundingDirection.DOWN), Dyadic(3, -3))
        self.assertEqual(round_dir(_x, 2, RoundingDirection.UP), Dyadic(1, -1))
        self.assertEqual(round_dir(_x, 2, 'up'), Dyadic(1, -1))

    def test_round_negative(self):
        _x = Dyadic(-7, -4)

        self.assertEqual(round_dir(_x, 2, 'down'), Dyadic(-1, -1))
        self.assertEqual(round_dir(_x, 2, 'up'), Dyadic(-3, -3))

    def test_round_exact_is_identity(self):
        for _x in (Dyadic(0), Dyadic(3, 5), Dyadic(-1, -40)):
            self.assertEqual(round_dir(_x, 2, 'down'), _x)
            self.assertEqual(round_dir(_x, 2, 'up'), _x)

    def test_bad_arguments(self):
        with self.assertRaises(ValueError):
            round_dir(Dyadic(1), 1, 'down')

        with self.assertRaises(ValueError):
            round_dir(Dyadic(1), 10, 'sideways')

        with self.assertRaises(ValueError):
            check_precision(True)

        self.assertEqual(check_precision(60), 60)

    def test_round_bracket_randomized(self):
        _rng = random.Random(7)

        for _ in range(2000):
            _x, _p = random_dyadic(_rng, 200), _rng.randint(2, 120)
            _down, _up = round_dir(_x, _p, 'down'), round_dir(_x, _p, 'up')

            self.assertTrue(_down <= _x <= _up)
            self.assertLessEqual(_down.bits(), _p)
            self.assertLessEqual(_up.bits(), _p)

    def test_reciprocal(self):
        _third_down, _third_up = recip_dir(Dyadic(3), 20, 'down'), recip_dir(Dyadic(3), 20, 'up')

        self.assertLess(_third_down.to_fraction(), Fraction(1, 3))
        self.assertGreater(_third_up.to_fraction(), Fraction(1, 3))
        self.assertLess(_third_up.to_fraction() - _third_down.to_fraction(), Fraction(1, 2 ** 20))
        self.assertEqual(recip_dir(Dyadic(1, 3), 10, 'down'), Dyadic(1, -3))

        with self.assertRaises(ZeroDivisionError):
            recip_dir(Dyadic(0), 10, 'up')

    def test_reciprocal_randomized(self):
        _rng = random.Random(11)

        for _ in range(2000):
            _x = random_dyadic(_rng, 100)
            if _x.is_zero():
                continue

            _p = _rng.randint(2, 100)
            _exact = 1 / _x.to_fraction()

            self.assertLessEqual(recip_dir(_x, _p, 'down').to_fraction(), _exact)
            self.assertGreaterEqual(recip_dir(_x, _p, 'up').to_fraction(), _exact)


# ========================================================= #


class TestInterval(unittest.TestCase):
    def test_construction(self):
        _a = Interval(Dyadic(1), Dyadic(3))

        self.assertTrue(_a.contains(2))
        self.assertTrue(_a.contains(Fraction(3)))
        self.assertFalse(_a.contains(Fraction(7, 2)))
        self.assertEqual(_a.width(), Dyadic(2))
        self.assertEqual(_a.midpoint(), 2)
        self.assertTrue(Interval.point(5).is_point())

        with self.assertRaises(ValueError):
            Interval(Dyadic(3), Dyadic(1))

    def test_operations(self):
        _a, _b = Interval(Dyadic(1), Dyadic(2)), Interval(Dyadic(-3), Dyadic(1, -1))

        self.assertEqual(iv_add(_a, _b, 60), Interval(Dyadic(-2), Dyadic(5, -1)))
        self.assertEqual(iv_sub(_a, _b, 60), Interval(Dyadic(1, -1), Dyadic(5)))
        self.assertEqual(iv_mul(_a, _b, 60), Interval(Dyadic(-6), Dyadic(1)))
        self.assertEqual(iv_pow2(-3, 60), Interval.point(Dyadic(1, -3)))

    def test_reciprocal(self):
        _r = iv_recip(Interval(Dyadic(2), Dyadic(4)), 30)

        self.assertTrue(_r.contains(Fraction(1, 3)))
        self.assertEqual(endpoints(_r), (Fraction(1, 4), Fraction(1, 2)))

        _neg = iv_recip(Interval(Dyadic(-3), Dyadic(-1)), 30)
        self.assertTrue(_neg.contains(Fraction(-1, 2)))

        with self.assertRaises(Inconclusive):
            iv_recip(Interval(Dyadic(-1), Dyadic(1)), 30)

        with self.assertRaises(Inconclusive):
            iv_recip(Interval.point(0), 30)

    def test_compare(self):
        _a, _b = Interval(Dyadic(1), Dyadic(2)), Interval(Dyadic(3), Dyadic(4))

        self.assertIs(iv_compare(_a, _b), Comparison.LT)
        self.assertIs(iv_compare(_b, _a), Comparison.GT)
        self.assertIs(iv_compare(_a, Interval(Dyadic(2), Dyadic(3))), Comparison.INCONCLUSIVE)
        self.assertIs(iv_compare(Interval.point(1), Interval.point(1)), Comparison.INCONCLUSIVE)

    def test_widen(self):
        self.assertEqual(iv_widen(Interval.point(1), Dyadic(1, -2)), Interval(Dyadic(3, -2), Dyadic(5, -2)))

        with self.assertRaises(ValueError):
            iv_widen(Interval.point(1), Dyadic(-1))

    def test_soundness_randomized(self):
        _rng = random.Random(2024)
        _ops = [(iv_add, lambda x, y: x + y), (iv_sub, lambda x, y: x - y), (iv_mul, lambda x, y: x * y)]

        for _ in range(10000):
            _a, _b, _p = random_interval(_rng), random_interval(_rng), _rng.randint(2, 128)
            _kind = _rng.randrange(4)

            if _kind < 3:
                _op, _exact = _ops[_kind]
                _x = _rng.choice(endpoints(_a) + (_a.midpoint(),))
                _y = _rng.choice(endpoints(_b) + (_b.midpoint(),))

                self.assertTrue(_op(_a, _b, _p).contains(_exact(_x, _y)))
            else:
                try:
                    _result = iv_recip(_a, _p)
                except Inconclusive:
                    self.assertTrue(_a.contains(0))
                    continue

                _x = _rng.choice(endpoints(_a) + (_a.midpoint(),))
                self.assertTrue(_result.contains(1 / _x))

    def test_refinement_randomized(self):
        _rng = random.Random(7)
        _bound = Dyadic(4)

        for _ in range(2000):
            # magnitudes in [1/2, 1) keep every result below 2
            _x = Dyadic(_rng.randint(2 ** 59, 2 ** 60 - 1) * _rng.choice((-1, 1)), -60)
            _y = Dyadic(_rng.randint(2 ** 59, 2 ** 60 - 1) * _rng.choice((-1, 1)), -60)
            _a, _b = Interval.point(_x), Interval.point(_y)
            _p1 = _rng.randint(2, 50)
            _p2 = _p1 + _rng.randint(0, 40)
            _slack = _bound * Dyadic(1, -_p1)

            for _op in (iv_add, iv_sub, iv_mul):
                self.assertLessEqual(_op(_a, _b, _p2).width(), _op(_a, _b, _p1).width() + _slack)

            self.assertLessEqual(iv_recip(_a, _p2).width(), iv_recip(_a, _p1).width() + _slack)

    def test_compare_randomized(self):
        _rng = random.Random(11)
        _swapped = {Comparison.LT: Comparison.GT, Comparison.GT: Comparison.LT,
                    Comparison.INCONCLUSIVE: Comparison.INCONCLUSIVE}

        for _ in range(5000):
            _a, _b = random_interval(_rng), random_interval(_rng)

            if _rng.random() < 0.1:
                _b = Interval(_a.hi, max(_a.hi, _b.hi))

            _result = iv_compare(_a, _b)
            self.assertIs(iv_compare(_b, _a), _swapped[_result])

            _overlap = _a.lo <= _b.hi and _b.lo <= _a.hi
            self.assertEqual(_result is Comparison.INCONCLUSIVE, _overlap)

            if _result is Comparison.LT:
                self.assertLess(_a.hi, _b.lo)

    def test_decisions_never_flip_with_precision(self):
        def enclose(q: Fraction, p: int) -> Interval:
            return iv_mul(Interval.point(q.numerator), iv_recip(Interval.point(q.denominator), p), p)

        _rng = random.Random(5)

        for _ in range(300):
            _q1 = Fraction(_rng.randint(-100, 100), _rng.randint(1, 50))
            _q2 = _q1 if _rng.random() < 0.1 else Fraction(_rng.randint(-100, 100), _rng.randint(1, 50))
            _exact = Comparison.LT if _q1 < _q2 else Comparison.GT if _q1 > _q2 else Comparison.INCONCLUSIVE
            _decisions = [iv_compare(enclose(_q1, _p), enclose(_q2, _p)) for _p in range(2, 160)]

            # a decision, once reached, is the exact one
            for _decision in _decisions:
                self.assertIn(_decision, (_exact, Comparison.INCONCLUSIVE))

            # and high precision settles it for good
            self.assertEqual(set(_decisions[60:]), {_exact})


class TestToDecimal(unittest.TestCase):
    def test_point_values(self):
        self.assertEqual(to_decimal(Interval.point(Dyadic(3, -1)), 3), '1.500')
        self.assertEqual(to_decimal(Interval.point(Dyadic(-3, -1)), 1), '-1.5')
        self.assertEqual(to_decimal(Interval.point(0), 2), '0.00')
        self.assertEqual(to_decimal(Interval.point(Dyadic(1, -3)), 4), '0.1250')

    def test_truncated_digits_when_endpoints_agree(self):
        # [0.12345, 0.12346] scaled by 10^4 truncates to 1234 at both ends
        _a = Interval(Dyadic(12345 * 2 ** 40 // 10 ** 5, -40), Dyadic(12346 * 2 ** 40 // 10 ** 5, -40))

        self.assertEqual(to_decimal(_a, 4), '0.1234')

    def test_midpoint_when_digits_straddle(self):
        # [0.0999, 0.1001]: truncations differ, width below 10^-3
        _lo, _hi = Fraction(999, 10000), Fraction(1001, 10000)
        _a = Interval(Dyadic(_lo.numerator * 2 ** 60 // _lo.denominator, -60),
                      Dyadic(-(-_hi.numerator * 2 ** 60 // _hi.denominator), -60))

        self.assertEqual(to_decimal(_a, 3), '0.100')

    def test_too_wide(self):
        with self.assertRaises(NotTightEnough):
            to_decimal(Interval(Dyadic(0), Dyadic(1, -2)), 1)

        with self.assertRaises(ValueError):
            to_decimal(Interval.point(1), 0)

    def test_digit_guarantee_randomized(self):
        _rng = random.Random(99)

        for _ in range(1000):
            _digits = _rng.randint(1, 15)
            _center = random_dyadic(_rng, 60)
            _a = iv_widen(Interval.point(_center), Dyadic(1, -_rng.randint(4, 80)))

            try:
                _text = to_decimal(_a, _digits)
            except NotTightEnough:
                continue

            _value = Fraction(_text)
            for _x in endpoints(_a):
                self.assertLess(abs(_x - _value), Fraction(1, 10 ** _digits))


class TestDigits(unittest.TestCase):
    def test_large_integers_print(self):
        self.assertEqual(int_to_text(10 ** 5000), '1' + '0' * 5000)
        self.assertEqual(int_to_text(10 ** 5000 + 1), '1' + '0' * 4999 + '1')
        self.assertEqual(int_to_text(-(10 ** 9000)), '-1' + '0' * 9000)
        self.assertEqual(text_to_int(int_to_text(3 ** 20000)), 3 ** 20000)

    def test_large_integers_parse(self):
        self.assertEqual(text_to_int('9' * 5000), 10 ** 5000 - 1)
        self.assertEqual(text_to_int('-1' + '0' * 8000), -(10 ** 8000))
        self.assertEqual(text_to_int('0' * 6000 + '7'), 7)

    def test_small_integers_match_str(self):
        _rng = random.Random(3)

        for _ in range(500):
            _value = _rng.randint(-10 ** 30, 10 ** 30)
            self.assertEqual(int_to_text(_value), str(_value))
            self.assertEqual(text_to_int(str(_value)), _value)

    def test_invalid_text(self):
        for _text in ('', '-', '12a', '1.5', '+3', '\u0663'):
            with self.assertRaises(ValueError):
                text_to_int(_text)

    def test_wide_interval_message(self):
        with self.assertRaises(NotTightEnough) as _ctx:
            to_decimal(Interval(Dyadic(0), Dyadic(1, 2000)), 3)

        self.assertIn('2^2001', str(_ctx.exception))

    def test_huge_interval_prints(self):
        self.assertEqual(to_decimal(Interval.point(10 ** 5000), 2), '1' + '0' * 5000 + '.00')


class TestPublicApi(unittest.TestCase):
    def test_version(self):
        self.assertTrue(clerical.__version__)


# ========================================================= #


if __name__ == '__main__':
    unittest.main()
