# ========================================================= #
import logging
import sys
from typing import List, Union
from .lexer import Token, tokenize
from ..enums import BaseType, ArithOp, CompareOp, TokenKind
from ..exceptions import ParseError
from ..syntax.syntax import (SourceSpan, Context, Expr, Var, BoolLit, IntLit, Skip, Coerce, Pow2, Recip, Lim, Seq,
                             NewVar, Assign, If, Case, While, Call, BinOp, Compare, Neg, FunDef, Program)
# ========================================================= #


# Bound on the depth of the syntax tree, ';' chains excluded, so that every later recursive pass stays within the
# interpreter stack
MAX_NESTING = max(120, sys.getrecursionlimit() // 5)

_TYPE_KEYWORDS = {ty.value: ty for ty in BaseType}

_ATOM_STARTS = ['identifier', 'integer literal', "'-'", "'('", "'skip'", "'true'", "'false'", "'real'", "'inv'",
                "'if'", "'case'", "'while'"]


def get_logger():
    return logging.getLogger(__name__)


# ========================================================= #


class Parser:
    """
    Recursive descent parser over the token list produced by :func:`clerical.parser.lexer.tokenize`. One instance
    parses one source text.

    Precedence from loosest to tightest: ``;`` (right associative), statements (``var``, ``lim``, assignment),
    comparisons (non associative), ``+ -``, ``*``, unary ``-``, atoms.
    """

    def __init__(self, tokens: List[Token]):
        self._tokens, self._pos, self._depth = tokens, 0, 0

    # Token stream helpers
    def _peek(self, offset: int = 0) -> Token:
        return self._tokens[min(self._pos + offset, len(self._tokens) - 1)]

    def _advance(self) -> Token:
        _token = self._peek()
        self._pos = min(self._pos + 1, len(self._tokens) - 1)
        return _token

    def _fail(self, message: str, expected=None, token: Token = None):
        token = token or self._peek()
        raise ParseError(token.span, f'{message}, found {token.describe()}', expected)

    def _expect_symbol(self, text: str) -> Token:
        if not self._peek().is_symbol(text):
            self._fail(f'Expected {text!r}', [repr(text)])

        return self._advance()

    def _expect_keyword(self, text: str) -> Token:
        if not self._peek().is_keyword(text):
            self._fail(f'Expected {text!r}', [repr(text)])

        return self._advance()

    def _expect_ident(self) -> Token:
        if self._peek().kind is not TokenKind.IDENT:
            self._fail('Expected an identifier', ['identifier'])

        return self._advance()

    def _span_from(self, start: Token) -> SourceSpan:
        return start.span.to(self._tokens[max(self._pos - 1, 0)].span)

    def _enter(self, extra: int = 0):
        if self._depth + extra >= MAX_NESTING:
            self._fail(f'Program nested more than {MAX_NESTING} levels deep')

    # Program level
    def program(self) -> Program:
        _functions = []

        while self._peek().is_keyword('let'):
            _functions.append(self.fundef())

        if not self._peek().is_keyword('do'):
            self._fail("Expected a function definition or 'do'", ["'let'", "'do'"])

        self._advance()
        _main = self.expr()

        if self._peek().kind is not TokenKind.EOF:
            self._fail('Unexpected input after the main expression', ["';'", 'end of input'])

        return Program(tuple(_functions), _main)

    def fundef(self) -> FunDef:
        _start = self._expect_keyword('let')
        _name = self._expect_ident().text
        self._expect_symbol('(')

        _params = []
        if not self._peek().is_symbol(')'):
            while True:
                _param = self._expect_ident()
                self._expect_symbol(':')
                _params.append((_param, self.type_()))

                if not self._peek().is_symbol(','):
                    break
                self._advance()

        self._expect_symbol(')')
        self._expect_symbol(':')
        _return_type = self.type_()
        self._expect_symbol(':=')
        _body = self.expr()

        _seen = set()
        for _param, _ in _params:
            if _param.text in _seen:
                raise ParseError(_param.span, f'Duplicate parameter {_param.text!r} in function {_name!r}')
            _seen.add(_param.text)

        _context = Context(tuple((_param.text, _ty) for _param, _ty in _params))

        return FunDef(_name, _context, _return_type, _body, span=self._span_from(_start))

    def type_(self) -> BaseType:
        _token = self._peek()

        if _token.kind is TokenKind.KEYWORD and _token.text in _TYPE_KEYWORDS:
            self._advance()
            return _TYPE_KEYWORDS[_token.text]

        self._fail('Expected a type', [repr(name) for name in _TYPE_KEYWORDS])

    # Expressions
    def expr(self) -> Expr:
        return self.seq()

    def seq(self) -> Expr:
        self._enter()
        self._depth += 1

        try:
            _starts, _statements = [self._peek()], [self.stmt()]

            while self._peek().is_symbol(';'):
                self._advance()
                _starts.append(self._peek())
                _statements.append(self.stmt())

        finally:
            self._depth -= 1

        # right associative: fold from the last statement
        _node = _statements.pop()
        for _start, _first in zip(reversed(_starts[:-1]), reversed(_statements)):
            _node = Seq(_first, _node, span=self._span_from(_start))

        return _node

    def stmt(self) -> Expr:
        _start = self._peek()

        if _start.is_keyword('var'):
            self._advance()
            _binder = self._expect_ident().text
            self._expect_symbol(':=')
            _init = self.expr()
            self._expect_keyword('in')
            return NewVar(_binder, _init, self.expr(), span=self._span_from(_start))

        if _start.is_keyword('lim'):
            self._advance()
            _binder = self._expect_ident().text
            self._expect_symbol('.')
            return Lim(_binder, self.expr(), span=self._span_from(_start))

        if _start.kind is TokenKind.IDENT and self._peek(1).is_symbol(':='):
            self._advance()
            self._advance()
            return Assign(_start.text, self.cmp(), span=self._span_from(_start))

        return self.cmp()

    def cmp(self) -> Expr:
        _start = self._peek()
        _left = self.arith()

        _token = self._peek()
        if not (_token.is_symbol('<') or _token.is_symbol('=')):
            return _left

        self._advance()
        _node = Compare(CompareOp(_token.text), _left, self.arith(), span=self._span_from(_start))

        if self._peek().is_symbol('<') or self._peek().is_symbol('='):
            self._fail('Comparisons do not chain, use parentheses')

        return _node

    def arith(self) -> Expr:
        _start = self._peek()
        _node, _chain = self.term(), 0

        while self._peek().is_symbol('+') or self._peek().is_symbol('-'):
            _chain += 1
            self._enter(_chain)
            _op = ArithOp(self._advance().text)
            _node = BinOp(_op, _node, self.term(), span=self._span_from(_start))

        return _node

    def term(self) -> Expr:
        _start = self._peek()
        _node, _chain = self.unary(), 0

        while self._peek().is_symbol('*'):
            _chain += 1
            self._enter(_chain)
            self._advance()
            _node = BinOp(ArithOp.MUL, _node, self.unary(), span=self._span_from(_start))

        return _node

    def unary(self) -> Expr:
        _start = self._peek()

        if not _start.is_symbol('-'):
            return self.atom()

        self._advance()

        # a literal directly after the minus is a negative literal, unless it is the base of 2 ^ e
        if self._peek().kind is TokenKind.INT and not self._peek(1).is_symbol('^'):
            _literal = self._advance()
            return IntLit(-_literal.value, span=self._span_from(_start))

        self._enter()
        self._depth += 1
        try:
            return Neg(self.unary(), span=self._span_from(_start))
        finally:
            self._depth -= 1

    def atom(self) -> Expr:
        _start = self._peek()

        if _start.kind is TokenKind.INT:
            self._advance()

            if not self._peek().is_symbol('^'):
                return IntLit(_start.value, span=_start.span)

            if _start.value != 2:
                self._fail('Only the literal 2 can be raised to a power', token=_start)

            self._advance()
            self._enter()
            self._depth += 1
            try:
                return Pow2(self.unary(), span=self._span_from(_start))
            finally:
                self._depth -= 1

        if _start.kind is TokenKind.IDENT:
            self._advance()

            if not self._peek().is_symbol('('):
                return Var(_start.text, span=_start.span)

            self._advance()
            _args = []
            if not self._peek().is_symbol(')'):
                while True:
                    _args.append(self.expr())

                    if not self._peek().is_symbol(','):
                        break
                    self._advance()

            self._expect_symbol(')')
            return Call(_start.text, tuple(_args), span=self._span_from(_start))

        if _start.kind is TokenKind.KEYWORD:
            if _start.text in ('skip', 'true', 'false'):
                self._advance()
                return Skip(span=_start.span) if _start.text == 'skip' else BoolLit(_start.text == 'true',
                                                                                    span=_start.span)

            if _start.text in ('real', 'inv'):
                self._advance()
                self._expect_symbol('(')
                _inner = self.expr()
                self._expect_symbol(')')
                _kind = Coerce if _start.text == 'real' else Recip
                return _kind(_inner, span=self._span_from(_start))

            if _start.text == 'if':
                self._advance()
                _cond = self.expr()
                self._expect_keyword('then')
                _then = self.expr()
                self._expect_keyword('else')
                _orelse = self.expr()
                self._expect_keyword('end')
                return If(_cond, _then, _orelse, span=self._span_from(_start))

            if _start.text == 'case':
                self._advance()
                _branches = []

                while True:
                    _guard = self.expr()
                    self._expect_symbol('=>')
                    _branches.append((_guard, self.expr()))

                    if not self._peek().is_symbol('|'):
                        break
                    self._advance()

                if not self._peek().is_keyword('end'):
                    self._fail("Expected '|' or 'end' after a case branch", ["'|'", "'end'"])

                self._advance()
                return Case(tuple(_branches), span=self._span_from(_start))

            if _start.text == 'while':
                self._advance()
                _cond = self.expr()
                self._expect_keyword('do')
                _body = self.expr()
                self._expect_keyword('end')
                return While(_cond, _body, span=self._span_from(_start))

        if _start.is_symbol('('):
            self._advance()
            _inner = self.expr()
            self._expect_symbol(')')
            return _inner

        self._fail('Expected an expression', _ATOM_STARTS)


# ========================================================= #


def _run(source: Union[str, bytes], file: str, rule: str):
    _parser = Parser(tokenize(source, file))

    try:
        return getattr(_parser, rule)()
    except RecursionError:
        raise ParseError(_parser._peek().span, 'Program nested too deeply to parse')


def parse_program(source: Union[str, bytes], file: str = '<string>') -> Program:
    """
    Parse a complete source file: function definitions followed by ``do`` and the main expression.

    :param source: the source text, ``str`` or UTF-8 ``bytes``
    :param file: file name used in error spans
    :return: a :class:`clerical.syntax.Program` made of surface nodes. Run it through
             :func:`clerical.typechecker.elaborate` before evaluating.
    :raises ParseError: on any lexical or syntax error
    """
    _program = _run(source, file, 'program')
    get_logger().debug(f'Parsed {file}: {len(_program.env)} function(s)')

    return _program


def parse_expr(source: Union[str, bytes], file: str = '<string>') -> Expr:
    """
    Parse a single expression. Convenient for tests and for building wrapper programs.

    :param source: the source text
    :param file: file name used in error spans
    :return: the expression
    """
    _parser = Parser(tokenize(source, file))

    try:
        _expr = _parser.expr()
    except RecursionError:
        raise ParseError(_parser._peek().span, 'Expression nested too deeply to parse')

    if _parser._peek().kind is not TokenKind.EOF:
        _parser._fail('Unexpected input after the expression', ['end of input'])

    return _expr


# ========================================================= #
