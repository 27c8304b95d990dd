from ._core import (
    Error,
    InputError,
    Pair,
    Symbol,
    ZSet,
    __version__,
    commutant_dimension,
    cyclic_weighted_shift,
    fiber,
    is_inner,
    is_irreducible,
    minimal_period,
    model_report,
    pair_equivalence,
    pair_from_symbol,
    pair_roundtrip,
    paper_examples,
    staircase_set,
    translate_equivalent,
)

__all__ = [
    "Error",
    "InputError",
    "Pair",
    "Symbol",
    "ZSet",
    "__version__",
    "commutant_dimension",
    "cyclic_weighted_shift",
    "fiber",
    "is_inner",
    "is_irreducible",
    "minimal_period",
    "model_report",
    "pair_equivalence",
    "pair_from_symbol",
    "pair_roundtrip",
    "paper_examples",
    "staircase_set",
    "translate_equivalent",
]
