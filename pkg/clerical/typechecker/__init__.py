# ========================================================= #
from .typechecker import RwContext, TypedProgram, check_env, check_ro, check_rw, elaborate_expr, elaborate
# ========================================================= #
