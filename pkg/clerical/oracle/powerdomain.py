# ========================================================= #
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, FrozenSet, Iterable, Sequence
from ..evaluator.evaluator import UNIT
from ..numerics import int_to_text
# ========================================================= #


BOTTOM_TEXT = '⊥'


# ========================================================= #


@dataclass(frozen=True)
class PowerSet:
    """
    An element of the powerdomain of nondeterministic outcomes: either the error set, or a finite set of values
    together with a flag telling whether nontermination (bottom) is possible. A non error set is never empty.

    Build them with :meth:`of`, :meth:`error` and :data:`BOTTOM` rather than the constructor.
    """
    values: FrozenSet = frozenset()
    bottom: bool = False
    is_error: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'values', frozenset(self.values))

        if self.is_error and (self.values or self.bottom):
            raise ValueError('The error set has no members')

        if not self.is_error and not self.values and not self.bottom:
            raise ValueError('A non error powerdomain element needs at least one member')

    @classmethod
    def of(cls, *values, bottom: bool = False) -> 'PowerSet':
        return cls(frozenset(values), bottom)

    @classmethod
    def error(cls) -> 'PowerSet':
        return cls(frozenset(), False, True)

    def __contains__(self, item):
        return item in self.values

    def without_bottom(self) -> 'PowerSet':
        """The same set minus bottom. Only defined when some value remains."""
        return PowerSet(self.values)

    def map(self, fn: Callable[[Any], Any]) -> 'PowerSet':
        if self.is_error:
            return self

        return PowerSet(frozenset(fn(value) for value in self.values), self.bottom)

    def format(self) -> str:
        """
        Canonical text: ``error`` or ``{v1, v2, ⊥}`` with values sorted by their own canonical text and bottom last.
        """
        if self.is_error:
            return 'error'

        _items = sorted(format_frag_value(value) for value in self.values)

        if self.bottom:
            _items.append(BOTTOM_TEXT)

        return '{' + ', '.join(_items) + '}'

    def __str__(self):
        return self.format()


BOTTOM = PowerSet(frozenset(), True)


# ========================================================= #


def format_frag_value(value: Any) -> str:
    """
    Canonical text of a fragment value: ``()``, ``true``/``false``, an integer, or a rational as ``p/q``. A
    ``(state, value)`` pair is shown as ``state -> value``.
    """
    if value is UNIT:
        return '()'

    if isinstance(value, bool):
        return 'true' if value else 'false'

    if isinstance(value, int):
        return int_to_text(value)

    if isinstance(value, Fraction):
        _numerator = int_to_text(value.numerator)
        return _numerator if value.denominator == 1 else f'{_numerator}/{int_to_text(value.denominator)}'

    if isinstance(value, tuple) and len(value) == 2 and isinstance(value[0], tuple):
        _state = ', '.join(format_frag_value(item) for item in value[0])
        return f'({_state}) -> {format_frag_value(value[1])}'

    raise TypeError(f'Not a fragment value: {value!r}')


# ========================================================= #


def pd_unit(x: Any) -> PowerSet:
    """The singleton ``{x}``"""
    return PowerSet(frozenset([x]))


def pd_bind(xs: PowerSet, f: Callable[[Any], PowerSet]) -> PowerSet:
    """
    Sequence a nondeterministic computation with a continuation. The result is the error set as soon as ``xs`` or the
    continuation at any of its values is the error set.

    :param xs: the first computation
    :param f: maps each value of ``xs`` to a powerdomain element
    :return: the union of ``f`` over the values of ``xs``, with bottom if ``xs`` or any ``f(x)`` has it
    """
    if xs.is_error:
        return xs

    _values, _bottom = set(), xs.bottom

    for x in xs.values:
        _result = f(x)

        if _result.is_error:
            return _result

        _values |= _result.values
        _bottom = _bottom or _result.bottom

    return PowerSet(frozenset(_values), _bottom)


def pd_strict_union(xs: PowerSet, ys: PowerSet) -> PowerSet:
    """Nondeterministic choice. Error absorbs everything."""
    if xs.is_error:
        return xs

    if ys.is_error:
        return ys

    return PowerSet(xs.values | ys.values, xs.bottom or ys.bottom)


def pd_union_all(sets: Iterable[PowerSet]) -> PowerSet:
    _result = None

    for _set in sets:
        _result = _set if _result is None else pd_strict_union(_result, _set)

    if _result is None:
        raise ValueError('Union of no sets')

    return _result


def pd_leq(xs: PowerSet, ys: PowerSet) -> bool:
    """
    The approximation order. ``xs <= ys`` iff they are equal, or ``xs`` contains bottom and ``ys`` is either the
    error set or contains every value of ``xs``.
    """
    if xs == ys:
        return True

    if not xs.bottom:
        return False

    return ys.is_error or xs.values <= ys.values


def pd_sup_chain(chain: Sequence[PowerSet]) -> PowerSet:
    """
    Supremum of a finite increasing chain.

    :param chain: elements with ``pd_leq(chain[i], chain[i + 1])``
    :return: the union if every element contains bottom, otherwise the first element without bottom
    :raises ValueError: when the chain is empty or not increasing
    """
    if not chain:
        raise ValueError('Supremum of an empty chain')

    for _index in range(len(chain) - 1):
        if not pd_leq(chain[_index], chain[_index + 1]):
            raise ValueError(f'Not a chain: element {_index} {chain[_index]} is not below {chain[_index + 1]}')

    for _element in chain:
        if not _element.bottom:
            return _element

    return pd_union_all(chain)


# ========================================================= #
