# ========================================================= #
from .powerdomain import (PowerSet, BOTTOM, pd_unit, pd_bind, pd_strict_union, pd_union_all, pd_leq, pd_sup_chain,
                          format_frag_value)
from .denotation import Denotation, denote, denote_program, while_chain, DEFAULT_FUEL
# ========================================================= #
