# ========================================================= #
from .digits import int_to_text, text_to_int
from .dyadic import Dyadic, round_dir, recip_dir, check_precision
from .interval import (Interval, iv_add, iv_sub, iv_mul, iv_recip, iv_pow2, iv_compare, iv_widen, to_decimal)
# ========================================================= #
