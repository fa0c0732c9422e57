# ========================================================= #
import functools
from fractions import Fraction
from typing import Union
from .digits import int_to_text
from ..enums import RoundingDirection
from ..exceptions import ConfigurationError
# ========================================================= #


# Exponents outside this range are treated as a fatal fault
MAX_EXPONENT = 2 ** 62

MIN_PRECISION = 2


# ========================================================= #


def check_precision(p: int) -> int:
    """
    Validate a working precision (number of mantissa bits).

    :param p: the precision in bits. Must be an integer ``>= 2``
    :return: the same precision, so the call can be used inline
    """
    if isinstance(p, bool) or not isinstance(p, int):
        raise ConfigurationError(f'Precision must be an integer number of bits. Got: {p!r}')

    if p < MIN_PRECISION:
        raise ConfigurationError(f'Precision must be at least {MIN_PRECISION} bits. Got: {p}')

    return p


@functools.total_ordering
class Dyadic:
    """
    An exact binary number ``mantissa * 2 ** exponent``. Always kept in canonical form: the mantissa is odd, or it is
    zero and then the exponent is zero as well. Instances are immutable.
    """
    __slots__ = ('mantissa', 'exponent')

    def __init__(self, mantissa: int = 0, exponent: int = 0):
        if mantissa == 0:
            exponent = 0
        else:
            _zeros = (mantissa & -mantissa).bit_length() - 1
            mantissa, exponent = mantissa >> _zeros, exponent + _zeros

        if not -MAX_EXPONENT <= exponent <= MAX_EXPONENT:
            raise OverflowError(f'Dyadic exponent out of range: {exponent}')

        object.__setattr__(self, 'mantissa', mantissa)
        object.__setattr__(self, 'exponent', exponent)

    def __setattr__(self, key, value):
        raise AttributeError('Dyadic numbers are immutable')

    # Conversions
    @classmethod
    def from_int(cls, value: int) -> 'Dyadic':
        return cls(int(value), 0)

    def to_fraction(self) -> Fraction:
        """Exact rational value of this number"""
        if self.exponent >= 0:
            return Fraction(self.mantissa << self.exponent)

        return Fraction(self.mantissa, 1 << -self.exponent)

    def bits(self) -> int:
        """Number of significant bits of the mantissa"""
        return abs(self.mantissa).bit_length()

    def sign(self) -> int:
        return (self.mantissa > 0) - (self.mantissa < 0)

    def is_zero(self) -> bool:
        return self.mantissa == 0

    # Arithmetic. All of it is exact.
    def __add__(self, other: 'Dyadic') -> 'Dyadic':
        if not isinstance(other, Dyadic):
            return NotImplemented

        _e = min(self.exponent, other.exponent)

        return Dyadic((self.mantissa << (self.exponent - _e)) + (other.mantissa << (other.exponent - _e)), _e)

    def __sub__(self, other: 'Dyadic') -> 'Dyadic':
        if not isinstance(other, Dyadic):
            return NotImplemented

        return self + (-other)

    def __mul__(self, other: 'Dyadic') -> 'Dyadic':
        if not isinstance(other, Dyadic):
            return NotImplemented

        return Dyadic(self.mantissa * other.mantissa, self.exponent + other.exponent)

    def __neg__(self) -> 'Dyadic':
        return Dyadic(-self.mantissa, self.exponent)

    def __abs__(self) -> 'Dyadic':
        return Dyadic(abs(self.mantissa), self.exponent)

    # Ordering
    def _compare(self, other: 'Dyadic') -> int:
        if self.exponent == other.exponent:
            _a, _b = self.mantissa, other.mantissa
        elif self.exponent > other.exponent:
            _a, _b = self.mantissa << (self.exponent - other.exponent), other.mantissa
        else:
            _a, _b = self.mantissa, other.mantissa << (other.exponent - self.exponent)

        return (_a > _b) - (_a < _b)

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.mantissa == other.mantissa and self.exponent == other.exponent

        if isinstance(other, (int, Fraction)):
            return self.to_fraction() == other

        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, Dyadic):
            return self._compare(other) < 0

        if isinstance(other, (int, Fraction)):
            return self.to_fraction() < other

        return NotImplemented

    def __hash__(self):
        return hash(self.to_fraction())

    def __repr__(self):
        return f'Dyadic({int_to_text(self.mantissa)}, {self.exponent})'

    def __str__(self):
        _x = self.to_fraction()
        _text = int_to_text(_x.numerator)

        return _text if _x.denominator == 1 else f'{_text}/{int_to_text(_x.denominator)}'


# ========================================================= #


def _direction(direction: Union[RoundingDirection, str]) -> RoundingDirection:
    try:
        return RoundingDirection(direction)
    except ValueError:
        raise ConfigurationError(f'Invalid rounding direction: {direction!r}. Use a RoundingDirection enum or one of '
                                 f'{[d.value for d in RoundingDirection]}')


def round_dir(x: Dyadic, p: int, direction: Union[RoundingDirection, str]) -> Dyadic:
    """
    Round a dyadic number to at most ``p`` mantissa bits in the given direction.

    :param x: the number to round
    :param p: working precision in bits
    :param direction: :class:`clerical.enums.RoundingDirection` (``down`` or ``up``)
    :return: the largest p-bit number ``<= x`` (down) or the smallest p-bit number ``>= x`` (up). ``x`` itself when it
             already fits.
    """
    check_precision(p)
    direction = _direction(direction)

    _shift = x.bits() - p

    if _shift <= 0:
        return x

    if direction is RoundingDirection.DOWN:
        return Dyadic(x.mantissa >> _shift, x.exponent + _shift)

    return Dyadic(-((-x.mantissa) >> _shift), x.exponent + _shift)


def recip_dir(x: Dyadic, p: int, direction: Union[RoundingDirection, str]) -> Dyadic:
    """
    Directed reciprocal of a non zero dyadic number, rounded to ``p`` bits.

    :param x: a non zero number
    :param p: working precision in bits
    :param direction: rounding direction
    :return: a p-bit number below (down) or above (up) the exact value ``1 / x``
    """
    check_precision(p)
    direction = _direction(direction)

    if x.is_zero():
        raise ZeroDivisionError('Reciprocal of zero')

    # 2^k / m carries at least p + 1 significant bits
    _k = p + x.bits()

    if direction is RoundingDirection.DOWN:
        _q = (1 << _k) // x.mantissa
    else:
        _q = -((-(1 << _k)) // x.mantissa)

    return round_dir(Dyadic(_q, -_k - x.exponent), p, direction)


# ========================================================= #
