# ========================================================= #
from .lexer import Token, tokenize, decode_source, KEYWORDS
from .parser import Parser, parse_program, parse_expr, MAX_NESTING
# ========================================================= #
