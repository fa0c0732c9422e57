# ========================================================= #
import re
from dataclasses import dataclass
from typing import List, Optional, Union
from ..enums import TokenKind
from ..exceptions import ParseError
from ..numerics.digits import text_to_int
from ..syntax.syntax import SourceSpan
# ========================================================= #


KEYWORDS = frozenset(['let', 'do', 'var', 'in', 'if', 'then', 'else', 'end', 'case', 'while', 'lim', 'skip', 'true',
                      'false', 'int', 'bool', 'real', 'unit', 'inv'])

# Longest symbols first so that ':=' wins over ':' and '=>' over '='
SYMBOLS = (':=', '=>', '+', '-', '−', '*', '<', '=', '|', ';', '^', '(', ')', ':', ',', '.')

_TOKEN_RE = re.compile(r'''
      (?P<newline>\n)
    | (?P<space>[ \t\r\f\v]+)
    | (?P<comment>\#[^\n]*)
    | (?P<int>[0-9]+)
    | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<symbol>''' + '|'.join(re.escape(symbol) for symbol in SYMBOLS) + r''')
''', re.VERBOSE)


# ========================================================= #


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    span: SourceSpan
    value: Optional[int] = None

    def describe(self) -> str:
        """Human readable description used in error messages"""
        if self.kind is TokenKind.EOF:
            return 'end of input'

        if self.kind is TokenKind.IDENT:
            return f'identifier {self.text!r}'

        if self.kind is TokenKind.INT:
            return f'integer {self.text}'

        return repr(self.text)

    def is_symbol(self, text: str) -> bool:
        return self.kind is TokenKind.SYMBOL and self.text == text

    def is_keyword(self, text: str) -> bool:
        return self.kind is TokenKind.KEYWORD and self.text == text


# ========================================================= #


def decode_source(source: Union[str, bytes], file: str = '<string>') -> str:
    """
    Accept source text either as ``str`` or as raw UTF-8 bytes.

    :param source: the source
    :param file: file name used in spans
    :return: the text
    """
    if isinstance(source, str):
        return source

    try:
        return bytes(source).decode('utf-8')
    except UnicodeDecodeError as exc:
        raise ParseError(SourceSpan(file, 1, 1, 1, 1), f'Source is not valid UTF-8 ({exc.reason})')


def tokenize(source: Union[str, bytes], file: str = '<string>') -> List[Token]:
    """
    Split source text into tokens. Whitespace and ``#`` line comments are dropped; the result always ends with an
    end of input token.

    :param source: the source text. ``bytes`` are decoded as UTF-8
    :param file: file name recorded in every token span
    :return: a list of :class:`Token`
    :raises ParseError: on an illegal character or invalid UTF-8
    """
    _text = decode_source(source, file)
    _tokens, _pos, _line, _line_start = [], 0, 1, 0

    while _pos < len(_text):
        _match = _TOKEN_RE.match(_text, _pos)
        _col = _pos - _line_start + 1

        if _match is None:
            raise ParseError(SourceSpan(file, _line, _col, _line, _col + 1),
                             f'Illegal character {_text[_pos]!r}')

        _kind, _lexeme = _match.lastgroup, _match.group()
        _span = SourceSpan(file, _line, _col, _line, _col + len(_lexeme))
        _pos = _match.end()

        if _kind == 'newline':
            _line, _line_start = _line + 1, _pos

        elif _kind == 'int':
            _tokens.append(Token(TokenKind.INT, _lexeme, _span, text_to_int(_lexeme)))

        elif _kind == 'word':
            _tokens.append(Token(TokenKind.KEYWORD if _lexeme in KEYWORDS else TokenKind.IDENT, _lexeme, _span))

        elif _kind == 'symbol':
            _tokens.append(Token(TokenKind.SYMBOL, '-' if _lexeme == '−' else _lexeme, _span))

    _col = _pos - _line_start + 1
    _tokens.append(Token(TokenKind.EOF, '', SourceSpan(file, _line, _col, _line, _col)))

    return _tokens


# ========================================================= #
