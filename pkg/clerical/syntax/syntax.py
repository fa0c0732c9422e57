# ========================================================= #
import dataclasses
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterator, Optional, Tuple
from ..enums import BaseType, ArithOp, CompareOp
from ..numerics.digits import int_to_text
# ========================================================= #


# Pretty printer precedence levels. Higher binds tighter.
SEQ, STMT, CMP, ADD, MUL, UNARY, ATOM = range(7)


# ========================================================= #


@dataclass(frozen=True)
class SourceSpan:
    """A region of a source file. Lines and columns are 1 based."""
    file: str
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __post_init__(self):
        if (self.end_line, self.end_col) < (self.start_line, self.start_col):
            raise ValueError(f'Span ends before it starts: {self.start_line}:{self.start_col} -> '
                             f'{self.end_line}:{self.end_col}')

    def to(self, other: 'SourceSpan') -> 'SourceSpan':
        """Span covering this one up to the end of ``other``"""
        return SourceSpan(self.file, self.start_line, self.start_col, other.end_line, other.end_col)

    def __str__(self):
        return f'{self.file}:{self.start_line}:{self.start_col}'


@dataclass(frozen=True)
class Context:
    """
    An ordered typing context: a sequence of ``(name, BaseType)`` bindings with pairwise distinct names.
    """
    bindings: Tuple[Tuple[str, BaseType], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'bindings', tuple((name, BaseType(ty)) for name, ty in self.bindings))

        _names = self.names()
        if len(set(_names)) != len(_names):
            raise ValueError(f'Context names must be pairwise distinct. Got: {list(_names)}')

    @classmethod
    def of(cls, *bindings) -> 'Context':
        return cls(tuple(bindings))

    def names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.bindings)

    def types(self) -> Tuple[BaseType, ...]:
        return tuple(ty for _, ty in self.bindings)

    def __iter__(self):
        return iter(self.bindings)

    def __len__(self):
        return len(self.bindings)

    def __str__(self):
        return ', '.join(f'{name} : {ty.value}' for name, ty in self.bindings)


# ========================================================= #


# Expression nodes. Spans and type annotations never take part in equality.
@dataclass(frozen=True)
class Expr:
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False, kw_only=True)
    ty: Optional[BaseType] = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Var(Expr):
    name: str
    slot: Optional[int] = field(default=None, compare=False, repr=False, kw_only=True)
    writable: bool = field(default=False, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class BoolLit(Expr):
    value: bool


@dataclass(frozen=True)
class IntLit(Expr):
    value: int


@dataclass(frozen=True)
class Skip(Expr):
    pass


@dataclass(frozen=True)
class Coerce(Expr):
    """``real(e)``"""
    expr: Expr


@dataclass(frozen=True)
class Pow2(Expr):
    """``2 ^ e``"""
    expr: Expr


@dataclass(frozen=True)
class IntOp(Expr):
    op: ArithOp
    left: Expr
    right: Expr


@dataclass(frozen=True)
class RealOp(Expr):
    op: ArithOp
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Recip(Expr):
    """``inv(e)``"""
    expr: Expr


@dataclass(frozen=True)
class IntEq(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class IntLt(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class RealLt(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Lim(Expr):
    binder: str
    body: Expr


@dataclass(frozen=True)
class Seq(Expr):
    first: Expr
    second: Expr


@dataclass(frozen=True)
class NewVar(Expr):
    binder: str
    init: Expr
    body: Expr


@dataclass(frozen=True)
class Assign(Expr):
    name: str
    expr: Expr
    slot: Optional[int] = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class If(Expr):
    cond: Expr
    then: Expr
    orelse: Expr


@dataclass(frozen=True)
class Case(Expr):
    branches: Tuple[Tuple[Expr, Expr], ...]

    def __post_init__(self):
        object.__setattr__(self, 'branches', tuple((guard, body) for guard, body in self.branches))

        if not self.branches:
            raise ValueError('A case expression needs at least one branch')


@dataclass(frozen=True)
class While(Expr):
    cond: Expr
    body: Expr


@dataclass(frozen=True)
class Call(Expr):
    name: str
    args: Tuple[Expr, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'args', tuple(self.args))


# Surface nodes. Produced by the parser, replaced by typed nodes during elaboration.
@dataclass(frozen=True)
class BinOp(Expr):
    op: ArithOp
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Compare(Expr):
    op: CompareOp
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Neg(Expr):
    expr: Expr


# ========================================================= #


@dataclass(frozen=True)
class FunDef:
    """
    A first order top level function. The body must typecheck read-only against ``params``.
    """
    name: str
    params: Context
    return_type: BaseType
    body: Expr
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


# A top level environment is an ordered tuple of function definitions
TopEnv = Tuple[FunDef, ...]


@dataclass(frozen=True)
class Program:
    env: TopEnv
    main: Expr

    def __post_init__(self):
        object.__setattr__(self, 'env', tuple(self.env))

    def function(self, name: str) -> FunDef:
        return lookup_function(self.env, name)


def lookup_function(env: TopEnv, name: str) -> FunDef:
    """
    Find a function of a top level environment by name

    :param env: the environment
    :param name: the function name
    :return: the :class:`FunDef`
    """
    for fundef in env:
        if fundef.name == name:
            return fundef

    raise KeyError(f'No function named {name!r}')


# ========================================================= #


def children(e: Expr) -> Iterator[Expr]:
    """Direct sub-expressions of a node, left to right"""
    for _field in dataclasses.fields(e):
        if not _field.compare:
            continue

        _value = getattr(e, _field.name)

        if isinstance(_value, Expr):
            yield _value

        elif isinstance(_value, tuple):
            for _item in _value:
                if isinstance(_item, Expr):
                    yield _item
                else:
                    yield from _item


def map_children(e: Expr, fn: Callable[[Expr], Expr]) -> Expr:
    """
    Rebuild a node with ``fn`` applied to each direct sub-expression. Span and annotations are kept.
    """
    _changes = {}

    for _field in dataclasses.fields(e):
        if not _field.compare:
            continue

        _value = getattr(e, _field.name)

        if isinstance(_value, Expr):
            _changes[_field.name] = fn(_value)

        elif isinstance(_value, tuple):
            _changes[_field.name] = tuple(fn(_item) if isinstance(_item, Expr) else tuple(fn(x) for x in _item)
                                          for _item in _value)

    return dataclasses.replace(e, **_changes) if _changes else e


def free_vars(e: Expr) -> FrozenSet[str]:
    """
    Identifiers occurring free in an expression. Assignment targets count as occurrences, function names do not.

    :param e: the expression
    :return: a frozenset of names
    """
    if isinstance(e, Var):
        return frozenset([e.name])

    if isinstance(e, Assign):
        return frozenset([e.name]) | free_vars(e.expr)

    if isinstance(e, Lim):
        return free_vars(e.body) - {e.binder}

    if isinstance(e, NewVar):
        return free_vars(e.init) | (free_vars(e.body) - {e.binder})

    if isinstance(e, Seq):
        _names = frozenset()

        while isinstance(e, Seq):
            _names |= free_vars(e.first)
            e = e.second

        return _names | free_vars(e)

    _names = frozenset()
    for _child in children(e):
        _names |= free_vars(_child)

    return _names


def substitute(e: Expr, mapping: Dict[str, Expr]) -> Expr:
    """
    Replace free occurrences of variables by expressions. A binder that rebinds a mapped name stops the substitution
    of that name underneath it.

    :param e: the expression to rewrite
    :param mapping: a dict from variable names to replacement expressions
    :return: the rewritten expression
    :raises ValueError: when a binder would capture a free variable of a replacement, or when an assignment target
                        would be replaced by something that is not a variable
    """
    if not mapping:
        return e

    if isinstance(e, Var):
        return mapping.get(e.name, e)

    if isinstance(e, Assign):
        _target = e.name

        if _target in mapping:
            if not isinstance(mapping[_target], Var):
                raise ValueError(f'Cannot substitute a non variable for the assignment target {_target!r}')

            _target = mapping[_target].name

        return dataclasses.replace(e, name=_target, expr=substitute(e.expr, mapping))

    if isinstance(e, (Lim, NewVar)):
        _inner = {name: value for name, value in mapping.items() if name != e.binder}
        _body = e.body

        if e.binder in _free_in_replacements(_inner, _body):
            raise ValueError(f'Substitution would capture variable {e.binder!r}')

        if isinstance(e, Lim):
            return dataclasses.replace(e, body=substitute(_body, _inner))

        return dataclasses.replace(e, init=substitute(e.init, mapping), body=substitute(_body, _inner))

    if isinstance(e, Seq):
        _links = []

        while isinstance(e, Seq):
            _links.append(e)
            e = e.second

        _result = substitute(e, mapping)
        for _link in reversed(_links):
            _result = dataclasses.replace(_link, first=substitute(_link.first, mapping), second=_result)

        return _result

    return map_children(e, lambda child: substitute(child, mapping))


def _free_in_replacements(mapping: Dict[str, Expr], body: Expr) -> FrozenSet[str]:
    _used = free_vars(body)
    _names = frozenset()

    for name, value in mapping.items():
        if name in _used:
            _names |= free_vars(value)

    return _names


def inline_call(fundef: FunDef, args) -> Expr:
    """
    Instantiate a function body with argument expressions, by substitution. Unlike a call, the arguments are not
    evaluated first, so a diverging argument only diverges where the body actually uses it.

    :param fundef: the function definition
    :param args: one expression per parameter
    :return: the instantiated body
    """
    args = tuple(args)

    if len(args) != len(fundef.params):
        raise ValueError(f'{fundef.name} expects {len(fundef.params)} arguments, got {len(args)}')

    return substitute(fundef.body, dict(zip(fundef.params.names(), args)))


# ========================================================= #


def _level(e: Expr) -> int:
    if isinstance(e, Seq):
        return SEQ

    if isinstance(e, (NewVar, Lim, Assign)):
        return STMT

    if isinstance(e, (Compare, IntEq, IntLt, RealLt)):
        return CMP

    if isinstance(e, (BinOp, IntOp, RealOp)):
        return MUL if e.op is ArithOp.MUL else ADD

    if isinstance(e, Neg) or (isinstance(e, IntLit) and e.value < 0):
        return UNARY

    return ATOM


def _at(e: Expr, level: int) -> str:
    _text = _print(e)

    return f'({_text})' if _level(e) < level else _text


def _print(e: Expr) -> str:
    if isinstance(e, Var):
        return e.name

    if isinstance(e, BoolLit):
        return 'true' if e.value else 'false'

    if isinstance(e, IntLit):
        return int_to_text(e.value)

    if isinstance(e, Skip):
        return 'skip'

    if isinstance(e, Coerce):
        return f'real({_print(e.expr)})'

    if isinstance(e, Recip):
        return f'inv({_print(e.expr)})'

    if isinstance(e, Pow2):
        return f'2 ^ {_at(e.expr, UNARY)}'

    if isinstance(e, Neg):
        _operand = f'({_print(e.expr)})' if isinstance(e.expr, IntLit) else _at(e.expr, UNARY)
        return f'-{_operand}'

    if isinstance(e, (BinOp, IntOp, RealOp)):
        _lvl = _level(e)
        return f'{_at(e.left, _lvl)} {e.op.value} {_at(e.right, _lvl + 1)}'

    if isinstance(e, (Compare, IntEq, IntLt, RealLt)):
        _symbol = e.op.value if isinstance(e, Compare) else ('=' if isinstance(e, IntEq) else '<')
        return f'{_at(e.left, ADD)} {_symbol} {_at(e.right, ADD)}'

    if isinstance(e, Lim):
        return f'lim {e.binder}. {_print(e.body)}'

    if isinstance(e, NewVar):
        return f'var {e.binder} := {_print(e.init)} in {_print(e.body)}'

    if isinstance(e, Assign):
        return f'{e.name} := {_at(e.expr, CMP)}'

    if isinstance(e, Seq):
        _parts = []

        while isinstance(e, Seq):
            # a var or lim body would swallow the rest of the sequence
            _parts.append(f'({_print(e.first)})' if isinstance(e.first, (NewVar, Lim, Seq)) else _print(e.first))
            e = e.second

        _parts.append(_print(e))
        return ' ; '.join(_parts)

    if isinstance(e, If):
        return f'if {_print(e.cond)} then {_print(e.then)} else {_print(e.orelse)} end'

    if isinstance(e, Case):
        _arms = ' | '.join(f'{_print(guard)} => {_print(body)}' for guard, body in e.branches)
        return f'case {_arms} end'

    if isinstance(e, While):
        return f'while {_print(e.cond)} do {_print(e.body)} end'

    if isinstance(e, Call):
        return f'{e.name}({", ".join(_print(arg) for arg in e.args)})'

    raise TypeError(f'Not an expression node: {e!r}')


def pretty_print(e: Expr) -> str:
    """
    Render an expression in concrete syntax. Parsing the result gives back an equal expression.

    :param e: the expression
    :return: source text on a single line
    """
    return _print(e)


def pretty_print_fundef(fundef: FunDef) -> str:
    _params = ', '.join(f'{name} : {ty.value}' for name, ty in fundef.params)

    return f'let {fundef.name}({_params}) : {fundef.return_type.value} := {_print(fundef.body)}'


def pretty_print_program(program: Program) -> str:
    """
    Render a whole program: one line per function definition, then the ``do`` line.

    :param program: the program
    :return: source text
    """
    _lines = [pretty_print_fundef(fundef) for fundef in program.env]
    _lines.append(f'do {_print(program.main)}')

    return '\n'.join(_lines)


# ========================================================= #
