# ========================================================= #
from .syntax import (SourceSpan, Context, Expr, Var, BoolLit, IntLit, Skip, Coerce, Pow2, IntOp, RealOp, Recip, IntEq,
                     IntLt, RealLt, Lim, Seq, NewVar, Assign, If, Case, While, Call, BinOp, Compare, Neg, FunDef,
                     TopEnv, Program, lookup_function, children, map_children, free_vars, substitute, inline_call,
                     pretty_print, pretty_print_fundef, pretty_print_program)
# ========================================================= #
