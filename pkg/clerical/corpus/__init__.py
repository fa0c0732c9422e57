# ========================================================= #
from .harness import (CorpusEntry, PropertyReport, Failure, load_corpus, check_entry, run_corpus, write_summary,
                      pi_digits, pi_reference, sin_partial_sum, sin_reference, real_literal, CORPUS_DIR)
# ========================================================= #
