# ========================================================= #
import dataclasses
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple
from ..enums import BaseType, ArithOp, CompareOp, Judgement
from ..exceptions import TypeCheckError
from ..syntax.syntax import (Context, Expr, Var, BoolLit, IntLit, Skip, Coerce, Pow2, IntOp, RealOp, Recip, IntEq,
                             IntLt, RealLt, Lim, Seq, NewVar, Assign, If, Case, While, Call, BinOp, Compare, Neg,
                             FunDef, TopEnv, Program)
# ========================================================= #


U, B, Z, R = BaseType.UNIT, BaseType.BOOLEAN, BaseType.INTEGER, BaseType.REAL


def get_logger():
    return logging.getLogger(__name__)


# ========================================================= #


@dataclass(frozen=True)
class RwContext:
    """
    A read-write typing context: ``ro`` holds the read-only variables and ``rw`` the writable ones. Names are pairwise
    distinct across both.
    """
    ro: Context = Context()
    rw: Context = Context()

    def __post_init__(self):
        _names = self.ro.names() + self.rw.names()

        if len(set(_names)) != len(_names):
            raise ValueError(f'Read-only and read-write contexts share names: {list(_names)}')


@dataclass(frozen=True)
class TypedProgram(Program):
    """
    A program after elaboration. Every node carries its type in ``ty``, every operator is resolved to its integer or
    real form and every variable knows its store slot.
    """

    @property
    def main_type(self) -> BaseType:
        return self.main.ty


# ========================================================= #


class _Checker:
    """
    One pass of elaboration. ``scope`` is the flat list of bindings visible at a node, outermost first, which is also
    the layout of the evaluator's store. Bindings at index ``boundary`` and above are writable.
    """

    def __init__(self, functions: Sequence[FunDef], all_names: Sequence[str] = (), current: Optional[str] = None):
        self._functions = {fundef.name: fundef for fundef in functions}
        self._all_names, self._current = tuple(all_names), current

    # Helpers
    @staticmethod
    def _fail(node: Expr, message: str, scope: List, boundary: int):
        _judgement = Judgement.RO if boundary >= len(scope) else Judgement.RW
        raise TypeCheckError(node.span, message, _judgement)

    @staticmethod
    def _resolve(name: str, scope: List) -> Optional[int]:
        for _slot in range(len(scope) - 1, -1, -1):
            if scope[_slot][0] == name:
                return _slot

        return None

    def pure(self, node: Expr, scope: List) -> Expr:
        """Check a sub-expression in a pure position: every visible variable becomes read-only"""
        return self.check(node, scope, len(scope))

    def expect(self, node: Expr, scope: List, boundary: int, ty: BaseType, what: str) -> Expr:
        _typed = self.check(node, scope, boundary)

        if _typed.ty is not ty:
            self._fail(node, f'{what} must have type {ty}, found {_typed.ty}', scope, boundary)

        return _typed

    def _arith(self, node: Expr, op: ArithOp, left: Expr, right: Expr, scope: List) -> Expr:
        _left, _right = self.pure(left, scope), self.pure(right, scope)

        if _left.ty is Z and _right.ty is Z:
            return IntOp(op, _left, _right, span=node.span, ty=Z)

        if _left.ty is R and _right.ty is R:
            return RealOp(op, _left, _right, span=node.span, ty=R)

        self._fail(node, f"Operator '{op.value}' needs two integers or two reals, found {_left.ty} and {_right.ty}",
                   scope, len(scope))

    def _compare(self, node: Expr, op: CompareOp, left: Expr, right: Expr, scope: List) -> Expr:
        _left, _right = self.pure(left, scope), self.pure(right, scope)

        if _left.ty is not _right.ty or _left.ty not in (Z, R):
            self._fail(node, f"Operator '{op.value}' needs two integers or two reals, found {_left.ty} and "
                             f"{_right.ty}", scope, len(scope))

        if op is CompareOp.EQ:
            if _left.ty is R:
                self._fail(node, 'Equality is not decidable on reals, use a soft comparison', scope, len(scope))

            return IntEq(_left, _right, span=node.span, ty=B)

        _kind = IntLt if _left.ty is Z else RealLt
        return _kind(_left, _right, span=node.span, ty=B)

    # The rules
    def check(self, node: Expr, scope: List, boundary: int) -> Expr:
        """
        Derive the read-write judgement for ``node``. With ``boundary == len(scope)`` this is the read-only
        judgement.

        :return: the elaborated node
        """
        if isinstance(node, Var):
            _slot = self._resolve(node.name, scope)

            if _slot is None:
                self._fail(node, f'Unbound variable {node.name!r}', scope, boundary)

            return Var(node.name, span=node.span, ty=scope[_slot][1], slot=_slot, writable=_slot >= boundary)

        if isinstance(node, BoolLit):
            return dataclasses.replace(node, ty=B)

        if isinstance(node, IntLit):
            return dataclasses.replace(node, ty=Z)

        if isinstance(node, Skip):
            return dataclasses.replace(node, ty=U)

        if isinstance(node, Coerce):
            return Coerce(self.expect(node.expr, scope, len(scope), Z, 'Argument of real()'), span=node.span, ty=R)

        if isinstance(node, Pow2):
            return Pow2(self.expect(node.expr, scope, len(scope), Z, 'Exponent of 2 ^'), span=node.span, ty=R)

        if isinstance(node, Recip):
            return Recip(self.expect(node.expr, scope, len(scope), R, 'Argument of inv()'), span=node.span, ty=R)

        if isinstance(node, BinOp):
            return self._arith(node, node.op, node.left, node.right, scope)

        if isinstance(node, IntOp):
            _typed = self._arith(node, node.op, node.left, node.right, scope)
            if not isinstance(_typed, IntOp):
                self._fail(node, 'Integer operator applied to reals', scope, boundary)
            return _typed

        if isinstance(node, RealOp):
            _typed = self._arith(node, node.op, node.left, node.right, scope)
            if not isinstance(_typed, RealOp):
                self._fail(node, 'Real operator applied to integers', scope, boundary)
            return _typed

        if isinstance(node, Neg):
            _operand = self.pure(node.expr, scope)

            if _operand.ty is Z:
                return IntOp(ArithOp.SUB, IntLit(0, ty=Z), _operand, span=node.span, ty=Z)

            if _operand.ty is R:
                return RealOp(ArithOp.SUB, Coerce(IntLit(0, ty=Z), ty=R), _operand, span=node.span, ty=R)

            self._fail(node, f'Negation needs an integer or a real, found {_operand.ty}', scope, boundary)

        if isinstance(node, Compare):
            return self._compare(node, node.op, node.left, node.right, scope)

        if isinstance(node, (IntEq, IntLt, RealLt)):
            _op = CompareOp.EQ if isinstance(node, IntEq) else CompareOp.LT
            _typed = self._compare(node, _op, node.left, node.right, scope)
            if type(_typed) is not type(node):
                self._fail(node, f'{type(node).__name__} applied to operands of the wrong type', scope, boundary)
            return _typed

        if isinstance(node, Lim):
            # the body may only write to its own locals
            _inner = scope + [(node.binder, Z)]
            _body = self.expect(node.body, _inner, len(_inner), R, 'Body of lim')
            return Lim(node.binder, _body, span=node.span, ty=R)

        if isinstance(node, Seq):
            _links = []

            while isinstance(node, Seq):
                _links.append((node, self.expect(node.first, scope, boundary, U, 'Left side of ;')))
                node = node.second

            _typed = self.check(node, scope, boundary)
            for _link, _first in reversed(_links):
                _typed = Seq(_first, _typed, span=_link.span, ty=_typed.ty)

            return _typed

        if isinstance(node, NewVar):
            _init = self.pure(node.init, scope)
            _body = self.check(node.body, scope + [(node.binder, _init.ty)], boundary)
            return NewVar(node.binder, _init, _body, span=node.span, ty=_body.ty)

        if isinstance(node, Assign):
            _slot = self._resolve(node.name, scope)

            if _slot is None:
                self._fail(node, f'Assignment to unbound variable {node.name!r}', scope, boundary)

            if _slot < boundary:
                self._fail(node, f'Variable {node.name!r} is read-only here', scope, boundary)

            _value = self.expect(node.expr, scope, len(scope), scope[_slot][1], f'Value assigned to {node.name!r}')
            return Assign(node.name, _value, span=node.span, ty=U, slot=_slot)

        if isinstance(node, If):
            _cond = self.expect(node.cond, scope, len(scope), B, 'Condition of if')
            _then, _orelse = self.check(node.then, scope, boundary), self.check(node.orelse, scope, boundary)

            if _then.ty is not _orelse.ty:
                self._fail(node, f'Branches of if have different types: {_then.ty} and {_orelse.ty}', scope, boundary)

            return If(_cond, _then, _orelse, span=node.span, ty=_then.ty)

        if isinstance(node, Case):
            _branches = [(self.expect(guard, scope, len(scope), B, 'Case guard'), self.check(body, scope, boundary))
                         for guard, body in node.branches]
            _types = {body.ty for _, body in _branches}

            if len(_types) > 1:
                self._fail(node, f'Branches of case have different types: '
                                 f'{", ".join(str(body.ty) for _, body in _branches)}', scope, boundary)

            return Case(tuple(_branches), span=node.span, ty=_branches[0][1].ty)

        if isinstance(node, While):
            _cond = self.expect(node.cond, scope, len(scope), B, 'Condition of while')
            _body = self.expect(node.body, scope, boundary, U, 'Body of while')
            return While(_cond, _body, span=node.span, ty=U)

        if isinstance(node, Call):
            return self._call(node, scope, boundary)

        raise TypeError(f'Not an expression node: {node!r}')

    def _call(self, node: Call, scope: List, boundary: int) -> Expr:
        _fundef = self._functions.get(node.name)

        if _fundef is None:
            if node.name == self._current:
                self._fail(node, f'Function {node.name!r} may not call itself', scope, boundary)

            if node.name in self._all_names:
                self._fail(node, f'Function {node.name!r} is called before it is defined', scope, boundary)

            self._fail(node, f'Unknown function {node.name!r}', scope, boundary)

        _signature = f'{_fundef.name}({_fundef.params}) : {_fundef.return_type.value}'

        if len(node.args) != len(_fundef.params):
            self._fail(node, f'{_signature} expects {len(_fundef.params)} argument(s), got {len(node.args)}',
                       scope, boundary)

        _args = []
        for _index, (_arg, (_name, _ty)) in enumerate(zip(node.args, _fundef.params)):
            _typed = self.pure(_arg, scope)

            if _typed.ty is not _ty:
                self._fail(_arg, f'Argument {_index + 1} ({_name}) of {_signature} must have type {_ty}, found '
                                 f'{_typed.ty}', scope, boundary)

            _args.append(_typed)

        return Call(node.name, tuple(_args), span=node.span, ty=_fundef.return_type)


# ========================================================= #


def _scope(ctx: RwContext) -> Tuple[List, int]:
    return list(ctx.ro) + list(ctx.rw), len(ctx.ro)


def check_env(env: TopEnv) -> TopEnv:
    """
    Check a top level environment. Each function body must typecheck read-only against its parameters with the
    declared return type, and may only call functions defined before it.

    :param env: the function definitions, in order
    :return: the elaborated environment (same functions with typed bodies)
    :raises TypeCheckError: on redefinition, self call, forward call, unknown function or type mismatch
    """
    _all_names = [fundef.name for fundef in env]
    _checked = []

    for fundef in env:
        if any(previous.name == fundef.name for previous in _checked):
            raise TypeCheckError(fundef.span, f'Function {fundef.name!r} is already defined', Judgement.RO)

        _checker = _Checker(_checked, _all_names, fundef.name)
        _body = _checker.pure(fundef.body, list(fundef.params))

        if _body.ty is not fundef.return_type:
            raise TypeCheckError(fundef.body.span or fundef.span, f'Body of {fundef.name!r} has type {_body.ty} but '
                                                                  f'its signature says {fundef.return_type}',
                                 Judgement.RO)

        _checked.append(dataclasses.replace(fundef, body=_body))

    return tuple(_checked)


def check_ro(env: TopEnv, gamma: Context, e: Expr) -> BaseType:
    """
    Derive ``gamma |-ro e : type``.

    :param env: functions callable from ``e``. Assumed to be checked already
    :param gamma: the read-only context
    :param e: the expression
    :return: the type of ``e``
    :raises TypeCheckError: when no typing rule applies
    """
    return _Checker(env).pure(e, list(gamma)).ty


def check_rw(env: TopEnv, ctx: RwContext, c: Expr) -> BaseType:
    """
    Derive ``ro ; rw |-rw c : type``. Only variables of ``ctx.rw`` (and locals introduced inside ``c``) may be assigned.

    :param env: functions callable from ``c``
    :param ctx: the read-write context
    :param c: the expression
    :return: the type of ``c``
    :raises TypeCheckError: when no typing rule applies
    """
    return elaborate_expr(env, ctx, c).ty


def elaborate_expr(env: TopEnv, ctx: RwContext, e: Expr) -> Expr:
    """
    Like :func:`check_rw` but return the elaborated expression. Variable slots index the flat list ``ctx.ro + ctx.rw``.

    :param env: functions callable from ``e``
    :param ctx: the read-write context
    :param e: the expression
    :return: the typed expression
    """
    _scope_list, _boundary = _scope(ctx)

    return _Checker(env).check(e, _scope_list, _boundary)


def elaborate(program: Program) -> TypedProgram:
    """
    Typecheck a whole program: its environment, then its main expression read-only in the empty context.

    :param program: a parsed program
    :return: the :class:`TypedProgram`
    :raises TypeCheckError: on any typing error
    """
    _env = check_env(program.env)
    _main = _Checker(_env).pure(program.main, [])

    get_logger().debug(f'Elaborated program, main : {_main.ty}')

    return TypedProgram(_env, _main)


# ========================================================= #
