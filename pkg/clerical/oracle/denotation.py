# ========================================================= #
import logging
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Tuple
from .powerdomain import PowerSet, BOTTOM, pd_unit, pd_bind, pd_union_all
from ..enums import ArithOp, BaseType
from ..evaluator.evaluator import UNIT
from ..exceptions import ConfigurationError, FragmentViolation
from ..syntax.syntax import (Expr, Var, BoolLit, IntLit, Skip, Coerce, Pow2, IntOp, RealOp, Recip, IntEq, IntLt,
                             RealLt, Lim, Seq, NewVar, Assign, If, Case, While, Call, TopEnv)
from ..typechecker.typechecker import RwContext, TypedProgram
# ========================================================= #


DEFAULT_FUEL = 32

_ARITH = {ArithOp.ADD: lambda a, b: a + b, ArithOp.SUB: lambda a, b: a - b, ArithOp.MUL: lambda a, b: a * b}

_FRAG_TYPES = {BaseType.UNIT: type(UNIT), BaseType.BOOLEAN: bool, BaseType.INTEGER: int, BaseType.REAL: Fraction}


def get_logger():
    return logging.getLogger(__name__)


# ========================================================= #


class Denotation:
    """
    Exact denotational semantics of the finite fragment: no limits, reals are exact rationals, and every while loop
    is approximated by ``fuel`` unrollings starting from the everywhere-bottom function.

    Every method maps a typed expression and a state (a tuple of values laid out like the expression's typing scope)
    to a :class:`PowerSet` of ``(state, value)`` pairs.
    """

    def __init__(self, env: TopEnv, fuel: int = DEFAULT_FUEL):
        if fuel < 0:
            raise ConfigurationError(f'Fuel must not be negative. Got: {fuel}')

        self.fuel = fuel
        self._functions = {fundef.name: fundef for fundef in env}
        # keyed on (id of the loop node, state, k). Nodes live as long as the caller's tree
        self._unrolled = {}

    def values(self, e: Expr, rho: Tuple) -> PowerSet:
        """Denotation of ``e`` in a pure position: just the values"""
        return self.sem(e, rho).map(lambda pair: pair[1])

    def _constant(self, rho, value) -> PowerSet:
        return pd_unit((rho, value))

    def _binary(self, e, rho, combine: Callable) -> PowerSet:
        return pd_bind(self.values(e.left, rho),
                       lambda a: pd_bind(self.values(e.right, rho), lambda b: combine(a, b)))

    def sem(self, e: Expr, rho: Tuple) -> PowerSet:
        """
        Denotation of a typed expression at a state.

        :param e: the typed expression
        :param rho: the state
        :return: a :class:`PowerSet` of ``(final state, value)``
        :raises FragmentViolation: on a construct outside the fragment
        """
        if isinstance(e, Var):
            return self._constant(rho, rho[e.slot])

        if isinstance(e, (BoolLit, IntLit)):
            return self._constant(rho, e.value)

        if isinstance(e, Skip):
            return self._constant(rho, UNIT)

        if isinstance(e, Coerce):
            return self.values(e.expr, rho).map(lambda k: (rho, Fraction(k)))

        if isinstance(e, Pow2):
            return self.values(e.expr, rho).map(lambda k: (rho, Fraction(2) ** k))

        if isinstance(e, (IntOp, RealOp)):
            _op = _ARITH[e.op]
            return self._binary(e, rho, lambda a, b: pd_unit((rho, _op(a, b))))

        if isinstance(e, Recip):
            return pd_bind(self.values(e.expr, rho), lambda x: BOTTOM if x == 0 else pd_unit((rho, 1 / x)))

        if isinstance(e, IntEq):
            return self._binary(e, rho, lambda a, b: pd_unit((rho, a == b)))

        if isinstance(e, IntLt):
            return self._binary(e, rho, lambda a, b: pd_unit((rho, a < b)))

        if isinstance(e, RealLt):
            # comparing equal reals never terminates
            return self._binary(e, rho, lambda a, b: BOTTOM if a == b else pd_unit((rho, a < b)))

        if isinstance(e, Lim):
            raise FragmentViolation(f'{e.span or "<unknown>"}: limits have no finite denotation')

        if isinstance(e, Seq):
            _result = self.sem(e.first, rho)

            while isinstance(e.second, Seq):
                e = e.second
                _result = pd_bind(_result, lambda pair, c=e.first: self.sem(c, pair[0]))

            return pd_bind(_result, lambda pair, c=e.second: self.sem(c, pair[0]))

        if isinstance(e, NewVar):
            _depth = len(rho)
            return pd_bind(self.values(e.init, rho),
                           lambda v: self.sem(e.body, rho + (v,)).map(lambda pair: (pair[0][:_depth], pair[1])))

        if isinstance(e, Assign):
            return self.values(e.expr, rho).map(lambda v: (rho[:e.slot] + (v,) + rho[e.slot + 1:], UNIT))

        if isinstance(e, If):
            return pd_bind(self.values(e.cond, rho), lambda b: self.sem(e.then if b else e.orelse, rho))

        if isinstance(e, Case):
            return self._case(e, rho)

        if isinstance(e, While):
            return self.unroll(e, rho, self.fuel)

        if isinstance(e, Call):
            return self._call(e, rho)

        raise FragmentViolation(f'No denotation for {type(e).__name__} nodes, elaborate the program first')

    def _case(self, e: Case, rho: Tuple) -> PowerSet:
        _guards = [self.values(guard, rho) for guard, _ in e.branches]

        if any(guard.is_error for guard in _guards):
            return PowerSet.error()

        _bodies = []
        for _guard, (_, _body) in zip(_guards, e.branches):
            if True in _guard.values:
                _result = self.sem(_body, rho)

                if _result.is_error:
                    return _result

                _bodies.append(_result)

        # bottom unless some guard is certainly true
        _bottom = all(guard != pd_unit(True) for guard in _guards)

        if not _bodies:
            return BOTTOM

        _union = pd_union_all(_bodies)

        return PowerSet(_union.values, _union.bottom or _bottom)

    def unroll(self, e: While, rho: Tuple, k: int) -> PowerSet:
        """
        The k-th approximant of a while loop at a state: the loop functional applied ``k`` times to the
        everywhere-bottom function.
        """
        if k == 0:
            return BOTTOM

        _key = (id(e), rho, k)
        if _key in self._unrolled:
            return self._unrolled[_key]

        def _turn(b):
            if not b:
                return pd_unit((rho, UNIT))

            return pd_bind(self.sem(e.body, rho), lambda pair: self.unroll(e, pair[0], k - 1))

        self._unrolled[_key] = _result = pd_bind(self.values(e.cond, rho), _turn)

        return _result

    def _call(self, e: Call, rho: Tuple) -> PowerSet:
        _body = self._functions[e.name].body

        def _pair(index: int, args: Tuple) -> PowerSet:
            if index == len(e.args):
                return self.values(_body, args).map(lambda v: (rho, v))

            return pd_bind(self.values(e.args[index], rho), lambda v: _pair(index + 1, args + (v,)))

        return _pair(0, ())


# ========================================================= #


def _check_state(ctx: RwContext, state: Tuple):
    _types = ctx.ro.types() + ctx.rw.types()

    if len(state) != len(_types):
        raise ValueError(f'State has {len(state)} values but the context has {len(_types)} variables')

    for _value, _ty in zip(state, _types):
        if type(_value) is not _FRAG_TYPES[_ty]:
            raise ValueError(f'State value {_value!r} does not have type {_ty}')


def denote(env: TopEnv, ctx: RwContext, e: Expr, fuel: int = DEFAULT_FUEL) -> Callable[[Tuple], PowerSet]:
    """
    The denotation of a typed expression as a function of the input state.

    :param env: the elaborated top level environment
    :param ctx: the read-write context ``e`` was elaborated in
    :param e: the typed expression (see :func:`clerical.typechecker.elaborate_expr`)
    :param fuel: unrollings per while loop
    :return: a function from states (tuples of fragment values in ``ro + rw`` order) to a :class:`PowerSet` of
             ``(state, value)`` pairs. Only the ``rw`` part of a result state can differ from the input.
    """
    _denotation = Denotation(env, fuel)

    def _at(state: Tuple) -> PowerSet:
        state = tuple(state)
        _check_state(ctx, state)
        return _denotation.sem(e, state)

    return _at


def denote_program(program: TypedProgram, fuel: int = DEFAULT_FUEL) -> PowerSet:
    """
    Denotation of a closed program's main expression in the empty state.

    :param program: the elaborated program
    :param fuel: unrollings per while loop
    :return: a :class:`PowerSet` of values
    :raises FragmentViolation: when the program uses a limit
    """
    _result = Denotation(program.env, fuel).values(program.main, ())
    get_logger().debug(f'Denotation at fuel {fuel}: {_result}')

    return _result


def while_chain(env: TopEnv, ctx: RwContext, e: Expr, c: Expr, k: int,
                samples: Iterable[Tuple]) -> List[Dict[Tuple, PowerSet]]:
    """
    The approximation chain of ``while e do c end``, evaluated on sample states.

    :param env: the elaborated top level environment
    :param ctx: the read-write context of the loop
    :param e: the typed loop condition
    :param c: the typed loop body
    :param k: the last approximant to compute
    :param samples: input states
    :return: ``k + 1`` dicts, entry ``n`` mapping each sample state to its n-th approximant
    """
    _samples = [tuple(state) for state in samples]
    for _state in _samples:
        _check_state(ctx, _state)

    _denotation, _loop = Denotation(env, k), While(e, c, ty=BaseType.UNIT)

    return [{_state: _denotation.unroll(_loop, _state, n) for _state in _samples} for n in range(k + 1)]


# ========================================================= #
