"""Andrews-Curtis search over balanced two-generator presentations.

Words are strings over x, y, X = x^-1, Y = y^-1; "1" is the empty word.
"""

from ._core import (
    DegeneratePresentation,
    GraphTooLarge,
    MoveRejected,
    OrbitTooLarge,
    ParseError,
    acm_conjugates,
    apply_acm,
    classify,
    cyclic_nf,
    cyclic_reduce,
    enumerate,
    free_conjugate,
    full_nf,
    least_cyclic_representative,
    reduce,
    replay,
    trivialize,
    whitehead_moves,
)

__all__ = [
    "DegeneratePresentation",
    "GraphTooLarge",
    "MoveRejected",
    "OrbitTooLarge",
    "ParseError",
    "acm_conjugates",
    "apply_acm",
    "classify",
    "cyclic_nf",
    "cyclic_reduce",
    "enumerate",
    "free_conjugate",
    "full_nf",
    "least_cyclic_representative",
    "reduce",
    "replay",
    "trivialize",
    "whitehead_moves",
]
