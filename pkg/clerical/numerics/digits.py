# ========================================================= #
import math
# ========================================================= #


# Recent interpreters refuse str <-> int conversions beyond a few thousand digits. Both helpers split the number
# until every piece is under that limit, so Clerical integers print and parse at any size.

_LOG10_2 = math.log10(2)


def int_to_text(value: int) -> str:
    """
    Decimal text of an integer of any magnitude.

    :param value: the integer
    :return: the same text ``str(value)`` gives on an interpreter without a digit limit
    """
    if value < 0:
        return '-' + int_to_text(-value)

    try:
        return str(value)
    except ValueError:
        pass

    # at least half of the digits, so the high part is never zero
    _half = int(value.bit_length() * _LOG10_2) // 2
    _high, _low = divmod(value, 10 ** _half)

    return int_to_text(_high) + int_to_text(_low).rjust(_half, '0')


def text_to_int(text: str) -> int:
    """
    Parse decimal digits, with an optional leading ``-``, into an integer of any magnitude.

    :param text: the digits
    :return: the integer
    :raises ValueError: when ``text`` is not a decimal integer
    """
    _negative = text.startswith('-')
    _digits = text[1:] if _negative else text

    if not _digits or not _digits.isascii() or not _digits.isdigit():
        raise ValueError(f'Not a decimal integer: {text[:20]!r}')

    try:
        _value = int(_digits)
    except ValueError:
        _half = len(_digits) // 2
        _value = text_to_int(_digits[:-_half]) * 10 ** _half + text_to_int(_digits[-_half:])

    return -_value if _negative else _value


# ========================================================= #
