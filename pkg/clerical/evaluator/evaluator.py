# ========================================================= #
import itertools
import logging
import math
import random
from dataclasses import dataclass
from typing import Any, Generator, List, Optional, Sequence, Tuple
from ..enums import ArithOp, Comparison, GuardState, OutcomeKind
from ..exceptions import ConfigurationError, Inconclusive, PrecisionLoss, Deadlock, FuelExhausted
from ..numerics import Dyadic, Interval, iv_add, iv_sub, iv_mul, iv_recip, iv_pow2, iv_compare, iv_widen
from ..numerics.dyadic import check_precision
from ..syntax.syntax import (Expr, Var, BoolLit, IntLit, Skip, Coerce, Pow2, IntOp, RealOp, Recip, IntEq, IntLt,
                             RealLt, Lim, Seq, NewVar, Assign, If, Case, While, Call, TopEnv)
# ========================================================= #


def get_logger():
    return logging.getLogger(__name__)


class _Unit:
    """The only value of type unit"""
    __slots__ = ()

    def __repr__(self):
        return '()'


UNIT = _Unit()

# A runtime value is UNIT, a bool, an int or an Interval
Value = Any

_INT_OPS = {ArithOp.ADD: lambda a, b: a + b, ArithOp.SUB: lambda a, b: a - b, ArithOp.MUL: lambda a, b: a * b}
_REAL_OPS = {ArithOp.ADD: iv_add, ArithOp.SUB: iv_sub, ArithOp.MUL: iv_mul}


# ========================================================= #


@dataclass(frozen=True)
class EvalConfig:
    """
    Knobs of one evaluation attempt.

    :param precision: working precision in bits for real arithmetic. Defaults to 60
    :param guard_step_budget: evaluation steps a guard may take per scheduling round. Defaults to 256
    :param fuel: maximum number of while loop turns in one attempt. ``None`` (the default) means unbounded
    :param limit_index_offset: a limit binds its index to ``precision + limit_index_offset``. Defaults to 2
    :param limit_headroom: extra bits given to the body of a limit on top of its index. Defaults to 32
    :param scheduler_seed: when set, every case polls its guards in an order shuffled by this seed
    """
    precision: int = 60
    guard_step_budget: int = 256
    fuel: Optional[int] = None
    limit_index_offset: int = 2
    limit_headroom: int = 32
    scheduler_seed: Optional[int] = None

    def __post_init__(self):
        check_precision(self.precision)

        if self.guard_step_budget < 1:
            raise ConfigurationError(f'guard_step_budget must be positive. Got: {self.guard_step_budget}')

        if self.fuel is not None and self.fuel < 1:
            raise ConfigurationError(f'fuel must be positive when given. Got: {self.fuel}')

        if self.limit_index_offset < 0 or self.limit_headroom < 0:
            raise ConfigurationError('limit_index_offset and limit_headroom must not be negative')


@dataclass(frozen=True)
class Outcome:
    """
    Result of one evaluation attempt. ``value`` and ``store`` are only meaningful when ``kind`` is
    ``OutcomeKind.DONE``.
    """
    kind: OutcomeKind
    value: Value = None
    store: Tuple = ()
    message: str = ''

    @property
    def is_done(self) -> bool:
        return self.kind is OutcomeKind.DONE


# ========================================================= #


class Machine:
    """
    Evaluates typed expressions at a fixed configuration. Every evaluation handler is a generator: it yields when the
    step clock passes the deadline of the innermost running guard, which is how a case statement interleaves its
    guards. Outside of any guard the deadline is infinite and nothing ever yields.

    :param env: the elaborated top level environment
    :param config: an :class:`EvalConfig`
    :param record_slices: keep a ``(case id, round, branch, steps)`` record of every guard slice in ``self.slices``
    """

    def __init__(self, env: TopEnv, config: EvalConfig = None, record_slices: bool = False):
        self.config = config or EvalConfig()
        self._functions = {fundef.name: fundef for fundef in env}
        self._clock, self._turns = 0, 0
        self._deadlines = [math.inf]
        self._case_ids = itertools.count()
        self._random = random.Random(self.config.scheduler_seed) if self.config.scheduler_seed is not None else None
        self.slices = [] if record_slices else None

        self._handlers = {Var: self._var, BoolLit: self._literal, IntLit: self._literal, Skip: self._skip,
                          Coerce: self._coerce, Pow2: self._pow2, IntOp: self._int_op, RealOp: self._real_op,
                          Recip: self._recip, IntEq: self._int_eq, IntLt: self._int_lt, RealLt: self._real_lt,
                          Lim: self._lim, Seq: self._seq, NewVar: self._new_var, Assign: self._assign, If: self._if,
                          Case: self._case, While: self._while, Call: self._call}

    @property
    def steps(self) -> int:
        """Evaluation steps taken so far"""
        return self._clock

    @property
    def turns(self) -> int:
        """While loop turns taken so far"""
        return self._turns

    # Driving
    def run(self, node: Expr, store: List[Value], precision: Optional[int] = None) -> Value:
        """
        Evaluate a node to completion. Evaluation signals propagate as exceptions.

        :param node: a typed expression
        :param store: the mutable store, laid out like the typing scope of ``node``
        :param precision: working precision. Defaults to the configured one
        :return: the value
        """
        _gen = self.eval(node, store, precision or self.config.precision)

        try:
            next(_gen)
        except StopIteration as stop:
            return stop.value

        _gen.close()
        raise RuntimeError('Evaluation suspended outside of any guard')

    def outcome(self, node: Expr, store: Sequence[Value] = ()) -> Outcome:
        """
        Evaluate a node on a copy of ``store`` and package the result.

        :param node: a typed expression
        :param store: the initial store
        :return: an :class:`Outcome`
        """
        _store = list(store)

        try:
            _value = self.run(node, _store)
        except Inconclusive as exc:
            return Outcome(OutcomeKind.PRECISION_LOSS, message=str(exc))
        except Deadlock as exc:
            return Outcome(OutcomeKind.DEADLOCK, message=str(exc))
        except FuelExhausted as exc:
            return Outcome(OutcomeKind.FUEL_EXHAUSTED, message=str(exc))

        return Outcome(OutcomeKind.DONE, _value, tuple(_store))

    def eval(self, node: Expr, store: List[Value], p: int) -> Generator:
        self._clock += 1

        if self._clock >= self._deadlines[-1]:
            yield

        return (yield from self._handlers[type(node)](node, store, p))

    # Constants, variables, arithmetic
    def _var(self, node: Var, store, p):
        return store[node.slot]
        yield

    def _literal(self, node, store, p):
        return node.value
        yield

    def _skip(self, node, store, p):
        return UNIT
        yield

    def _coerce(self, node: Coerce, store, p):
        _k = yield from self.eval(node.expr, store, p)
        return Interval.point(Dyadic.from_int(_k))

    def _pow2(self, node: Pow2, store, p):
        _k = yield from self.eval(node.expr, store, p)
        return iv_pow2(_k, p)

    def _int_op(self, node: IntOp, store, p):
        _a = yield from self.eval(node.left, store, p)
        _b = yield from self.eval(node.right, store, p)
        return _INT_OPS[node.op](_a, _b)

    def _real_op(self, node: RealOp, store, p):
        _a = yield from self.eval(node.left, store, p)
        _b = yield from self.eval(node.right, store, p)
        return _REAL_OPS[node.op](_a, _b, p)

    def _recip(self, node: Recip, store, p):
        _a = yield from self.eval(node.expr, store, p)

        try:
            return iv_recip(_a, p)
        except Inconclusive as exc:
            raise PrecisionLoss(str(exc)) from exc

    def _int_eq(self, node: IntEq, store, p):
        _a = yield from self.eval(node.left, store, p)
        _b = yield from self.eval(node.right, store, p)
        return _a == _b

    def _int_lt(self, node: IntLt, store, p):
        _a = yield from self.eval(node.left, store, p)
        _b = yield from self.eval(node.right, store, p)
        return _a < _b

    def _real_lt(self, node: RealLt, store, p):
        _a = yield from self.eval(node.left, store, p)
        _b = yield from self.eval(node.right, store, p)
        _result = iv_compare(_a, _b)

        if _result is Comparison.INCONCLUSIVE:
            raise PrecisionLoss(f'Cannot decide {_a} < {_b} at {p} bits')

        return _result is Comparison.LT

    def _lim(self, node: Lim, store, p):
        return (yield from self.eval_limit(node.body, store, p))

    def eval_limit(self, body: Expr, store: List[Value], p: int):
        """
        Evaluate ``lim n. body``: bind the index to ``p + limit_index_offset``, run the body with ``limit_headroom``
        extra bits and widen the result by ``2^-n``.
        """
        _n = p + self.config.limit_index_offset
        _base = len(store)
        store.append(_n)

        try:
            _approx = yield from self.eval(body, store, _n + self.config.limit_headroom)
        except Deadlock as exc:
            # a higher index can unstick the guards
            raise PrecisionLoss(f'Deadlock inside a limit at index {_n}') from exc
        finally:
            del store[_base:]

        return iv_widen(_approx, Dyadic(1, -_n))

    # State
    def _seq(self, node: Seq, store, p):
        while isinstance(node, Seq):
            yield from self.eval(node.first, store, p)
            node = node.second

        return (yield from self.eval(node, store, p))

    def _new_var(self, node: NewVar, store, p):
        _init = yield from self.eval(node.init, store, p)
        _base = len(store)
        store.append(_init)

        try:
            return (yield from self.eval(node.body, store, p))
        finally:
            del store[_base:]

    def _assign(self, node: Assign, store, p):
        store[node.slot] = yield from self.eval(node.expr, store, p)
        return UNIT

    # Control
    def _if(self, node: If, store, p):
        _cond = yield from self.eval(node.cond, store, p)
        return (yield from self.eval(node.then if _cond else node.orelse, store, p))

    def _while(self, node: While, store, p):
        while (yield from self.eval(node.cond, store, p)):
            self._turns += 1

            if self.config.fuel is not None and self._turns > self.config.fuel:
                raise FuelExhausted(f'Exceeded {self.config.fuel} loop turns')

            yield from self.eval(node.body, store, p)

        return UNIT

    def _call(self, node: Call, store, p):
        _args = []
        for _arg in node.args:
            _args.append((yield from self.eval(_arg, store, p)))

        # the body sees its arguments only
        return (yield from self.eval(self._functions[node.name].body, _args, p))

    # Guarded choice
    def _advance(self, guard: Generator):
        """
        Run one guard for one slice. Returns its state afterwards. When the slice of an enclosing guard runs out at the
        same time, suspends upwards first and carries on with a fresh slice once resumed.
        """
        while True:
            _outer = self._deadlines[-1]
            self._deadlines.append(min(_outer, self._clock + self.config.guard_step_budget))

            try:
                next(guard)
            except StopIteration as stop:
                return GuardState.TRUE if stop.value else GuardState.FALSE
            except Inconclusive:
                return GuardState.INCONCLUSIVE
            except Deadlock:
                return GuardState.DEADLOCKED
            finally:
                self._deadlines.pop()

            if self._clock < _outer:
                return GuardState.RUNNING

            yield

    def _case(self, node: Case, store, p):
        _case_id = next(self._case_ids)
        _order = list(range(len(node.branches)))

        if self._random is not None:
            self._random.shuffle(_order)

        # guards are pure, each one runs on its own copy of the store
        _guards = {index: self.eval(node.branches[index][0], list(store), p) for index in _order}
        _states = dict.fromkeys(_order, GuardState.RUNNING)
        _round, _winner = 0, None

        try:
            while _winner is None:
                _live = [index for index in _order if _states[index] is GuardState.RUNNING]

                if not _live:
                    break

                _round += 1

                for _index in _live:
                    _before = self._clock
                    _states[_index] = yield from self._advance(_guards[_index])

                    if self.slices is not None:
                        self.slices.append((_case_id, _round, _index, self._clock - _before))

                    if _states[_index] is GuardState.TRUE:
                        _winner = _index
                        break

        finally:
            for _guard in _guards.values():
                _guard.close()

        if _winner is None:
            if GuardState.INCONCLUSIVE in _states.values():
                raise PrecisionLoss(f'No guard of case #{_case_id} could be decided at {p} bits')

            get_logger().debug(f'Case #{_case_id}: every guard is false')
            raise Deadlock(f'Every guard of the case at {node.span or "<unknown>"} is false')

        get_logger().debug(f'Case #{_case_id}: branch {_winner} committed in round {_round}')

        return (yield from self.eval(node.branches[_winner][1], store, p))


# ========================================================= #


def evaluate(config: EvalConfig, env: TopEnv, store: Sequence[Value], c: Expr) -> Outcome:
    """
    Evaluate a typed expression once, at the configured precision.

    :param config: the :class:`EvalConfig`
    :param env: the elaborated top level environment
    :param store: initial values of the variables in scope of ``c``, in slot order
    :param c: the typed expression
    :return: an :class:`Outcome`. Its ``store`` is the final store.
    """
    return Machine(env, config).outcome(c, store)


def run_case(config: EvalConfig, env: TopEnv, store: Sequence[Value], branches) -> Outcome:
    """
    Evaluate a guarded choice given as a sequence of typed ``(guard, body)`` pairs.

    :param config: the :class:`EvalConfig`
    :param env: the elaborated top level environment
    :param store: the store the guards read and the chosen body runs on
    :param branches: the typed branches, at least one
    :return: an :class:`Outcome`
    """
    _branches = tuple(branches)

    return Machine(env, config).outcome(Case(_branches, ty=_branches[0][1].ty if _branches else None), store)


def eval_limit(config: EvalConfig, env: TopEnv, store: Sequence[Value], binder: str, body: Expr) -> Outcome:
    """
    Evaluate ``lim binder. body`` with the index tied to the working precision.

    :param config: the :class:`EvalConfig`
    :param env: the elaborated top level environment
    :param store: values of the variables in scope of the limit. The binder gets the next slot
    :param binder: the index variable name
    :param body: the typed body
    :return: an :class:`Outcome` whose value is an interval
    """
    return Machine(env, config).outcome(Lim(binder, body), store)


# ========================================================= #
