# ========================================================= #
from .evaluator import EvalConfig, Outcome, Machine, UNIT, evaluate, run_case, eval_limit
from .driver import (Diagnostic, RunReport, run_with_restarts, format_value, next_precision, DEFAULT_DIGITS,
                     DEFAULT_START_PRECISION, DEFAULT_PRECISION_CAP)
# ========================================================= #
