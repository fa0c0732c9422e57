# ========================================================= #
from .enums import BaseType, ExitCode, OutcomeKind, DiagnosticReason
from .exceptions import (ClericalError, ParseError, TypeCheckError, ConfigurationError, FragmentViolation, Inconclusive,
                         PrecisionLoss, NotTightEnough, Deadlock, FuelExhausted)
from .syntax import Program, FunDef, Context, pretty_print, pretty_print_program
from .parser import parse_program, parse_expr
from .typechecker import RwContext, TypedProgram, check_env, check_ro, check_rw, elaborate, elaborate_expr
from .evaluator import EvalConfig, Outcome, evaluate, run_case, eval_limit, run_with_restarts, RunReport
from .oracle import PowerSet, denote, denote_program, while_chain
# ========================================================= #


__version__ = '0.4.0'

# ========================================================= #
