# ========================================================= #
import math
from fractions import Fraction
from typing import Union
from .digits import int_to_text
from .dyadic import Dyadic, round_dir, recip_dir, check_precision
from ..enums import RoundingDirection, Comparison
from ..exceptions import ConfigurationError, Inconclusive, NotTightEnough
# ========================================================= #


DOWN, UP = RoundingDirection.DOWN, RoundingDirection.UP


# ========================================================= #


class Interval:
    """
    A closed interval ``[lo, hi]`` with dyadic endpoints. This is how the evaluator represents a value of type real:
    the exact value is somewhere inside. Immutable.
    """
    __slots__ = ('lo', 'hi')

    def __init__(self, lo: Dyadic, hi: Dyadic):
        if hi < lo:
            raise ValueError(f'Interval endpoints out of order: [{lo}, {hi}]')

        object.__setattr__(self, 'lo', lo)
        object.__setattr__(self, 'hi', hi)

    def __setattr__(self, key, value):
        raise AttributeError('Intervals are immutable')

    @classmethod
    def point(cls, value: Union[Dyadic, int]) -> 'Interval':
        """
        The degenerate interval ``[value, value]``

        :param value: a :class:`Dyadic` or an integer
        :return: a point interval
        """
        if not isinstance(value, Dyadic):
            value = Dyadic.from_int(value)

        return cls(value, value)

    def contains(self, value: Union[Fraction, int, Dyadic]) -> bool:
        """
        Whether an exact real number lies inside this interval.

        :param value: a ``Fraction``, an ``int`` or a :class:`Dyadic`
        :return: ``True`` iff ``lo <= value <= hi``
        """
        if isinstance(value, Dyadic):
            value = value.to_fraction()

        return self.lo.to_fraction() <= value <= self.hi.to_fraction()

    def width(self) -> Dyadic:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo.to_fraction() + self.hi.to_fraction()) / 2

    def is_point(self) -> bool:
        return self.lo == self.hi

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented

        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return f'Interval({self.lo!r}, {self.hi!r})'

    def __str__(self):
        return f'[{self.lo}, {self.hi}]'


# ========================================================= #


def _outward(lo: Dyadic, hi: Dyadic, p: int) -> Interval:
    return Interval(round_dir(lo, p, DOWN), round_dir(hi, p, UP))


def iv_add(a: Interval, b: Interval, p: int) -> Interval:
    """
    Interval sum, outward rounded at precision ``p``

    :param a: left operand
    :param b: right operand
    :param p: working precision in bits
    :return: an interval containing ``x + y`` for every ``x`` in a and ``y`` in b
    """
    return _outward(a.lo + b.lo, a.hi + b.hi, p)


def iv_sub(a: Interval, b: Interval, p: int) -> Interval:
    """
    Interval difference, outward rounded at precision ``p``

    :param a: left operand
    :param b: right operand
    :param p: working precision in bits
    :return: an interval containing ``x - y`` for every ``x`` in a and ``y`` in b
    """
    return _outward(a.lo - b.hi, a.hi - b.lo, p)


def iv_mul(a: Interval, b: Interval, p: int) -> Interval:
    """
    Interval product using the min and max of the four endpoint products, outward rounded at precision ``p``

    :param a: left operand
    :param b: right operand
    :param p: working precision in bits
    :return: an interval containing ``x * y`` for every ``x`` in a and ``y`` in b
    """
    _products = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)

    return _outward(min(_products), max(_products), p)


def iv_recip(a: Interval, p: int) -> Interval:
    """
    Interval reciprocal. Only defined when the interval excludes zero.

    :param a: the operand
    :param p: working precision in bits
    :return: ``[1/hi, 1/lo]`` outward rounded
    :raises Inconclusive: when ``a`` contains zero, ie the sign of the operand is not known at this precision
    """
    check_precision(p)

    if not (a.lo.sign() > 0 or a.hi.sign() < 0):
        raise Inconclusive(f'Reciprocal of an interval containing zero: {a}')

    return Interval(recip_dir(a.hi, p, DOWN), recip_dir(a.lo, p, UP))


def iv_pow2(n: int, p: int) -> Interval:
    """
    The point interval ``[2^n, 2^n]``. A power of two has a single mantissa bit so it is exact at every precision.

    :param n: the exponent, any integer
    :param p: working precision in bits
    :return: a point interval
    """
    check_precision(p)

    return Interval.point(Dyadic(1, n))


def iv_compare(a: Interval, b: Interval) -> Comparison:
    """
    Compare two intervals.

    :param a: left operand
    :param b: right operand
    :return: ``Comparison.LT`` if every element of a is below every element of b, ``Comparison.GT`` for the
             reverse, ``Comparison.INCONCLUSIVE`` when they overlap
    """
    if a.hi < b.lo:
        return Comparison.LT

    if b.hi < a.lo:
        return Comparison.GT

    return Comparison.INCONCLUSIVE


def iv_widen(a: Interval, eps: Dyadic) -> Interval:
    """
    Widen an interval by ``eps`` on both sides, exactly.

    :param a: the interval
    :param eps: a non negative slack
    :return: ``[a.lo - eps, a.hi + eps]``
    """
    if eps.sign() < 0:
        raise ValueError(f'Widening slack must be non negative. Got: {eps}')

    return Interval(a.lo - eps, a.hi + eps)


# ========================================================= #


def _format_scaled(scaled: int, digits: int) -> str:
    _sign = '-' if scaled < 0 else ''
    _text = int_to_text(abs(scaled)).rjust(digits + 1, '0')

    return f'{_sign}{_text[:-digits]}.{_text[-digits:]}'


def to_decimal(a: Interval, digits: int) -> str:
    """
    Print an interval as a decimal number with exactly ``digits`` fractional digits. Every real ``r`` in the interval
    is guaranteed to satisfy ``|r - value(result)| < 10^-digits``.

    When both endpoints truncate to the same digits those digits are returned, so a tight enclosure of pi prints as the
    leading digits of pi. Otherwise the midpoint is rounded to the nearest digit string.

    :param a: the interval to print
    :param digits: number of digits after the decimal point. ``>= 1``
    :return: the decimal text, eg ``-1.50000``
    :raises NotTightEnough: when the interval is at least ``10^-digits`` wide
    """
    if isinstance(digits, bool) or not isinstance(digits, int) or digits < 1:
        raise ConfigurationError(f'Number of digits must be a positive integer. Got: {digits!r}')

    _scale = 10 ** digits
    _lo, _hi = a.lo.to_fraction() * _scale, a.hi.to_fraction() * _scale

    if _hi - _lo >= 1:
        _width = a.width()
        raise NotTightEnough(f'Interval of width below 2^{_width.bits() + _width.exponent} cannot be printed with '
                             f'{digits} digits')

    if math.trunc(_lo) == math.trunc(_hi):
        return _format_scaled(math.trunc(_lo), digits)

    return _format_scaled(round((_lo + _hi) / 2), digits)


# ========================================================= #
