"""Entropy of admissible words under subexponential complexity bounds.

Core objects: finite words and their factor-complexity profiles, the
gap languages with their growth constants, a block-renormalization
certificate for low-complexity binary words, and the entropy-ratio
experiment tying them together.
"""

__version__ = "0.1.0"

from .complexity import (
    ComplexityProfile,
    complexity_profile,
    entropy_upper,
    is_admissible,
    special_factors,
)
from .entropyratio import (
    BoundFunction,
    check_cstar,
    e0,
    gap_census,
    lower_bound_witness,
    normalize_submultiplicative,
    ratio_experiment,
    solve_characteristic,
)
from .errors import (
    InsufficientDataError,
    InternalInvariantError,
    NotPreSturmianError,
    NumericalFailureError,
    ParseMismatchError,
    Refusal,
    WordEntropyError,
    WordFormatError,
)
from .gaplang import GapLanguage, beta, gamma, qk_table, verify_beta_bounds
from .renorm import Renormalization, decode, renormalize
from .words import (
    Alphabet,
    PrefixSource,
    Word,
    champernowne_word,
    gap_word,
    periodic_word,
    read_word_file,
    sturmian_word,
    write_word_file,
)

__all__ = [
    "__version__",
    "Alphabet",
    "Word",
    "PrefixSource",
    "periodic_word",
    "champernowne_word",
    "sturmian_word",
    "gap_word",
    "read_word_file",
    "write_word_file",
    "ComplexityProfile",
    "complexity_profile",
    "special_factors",
    "entropy_upper",
    "is_admissible",
    "GapLanguage",
    "qk_table",
    "beta",
    "gamma",
    "verify_beta_bounds",
    "Renormalization",
    "renormalize",
    "decode",
    "BoundFunction",
    "check_cstar",
    "normalize_submultiplicative",
    "e0",
    "lower_bound_witness",
    "gap_census",
    "solve_characteristic",
    "ratio_experiment",
    "WordEntropyError",
    "WordFormatError",
    "Refusal",
    "NotPreSturmianError",
    "ParseMismatchError",
    "InsufficientDataError",
    "NumericalFailureError",
    "InternalInvariantError",
]
