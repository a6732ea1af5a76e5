"""Heegaard Floer homology of surgeries on two-bridge knots, computed from
the Alexander grading of the standard genus-one diagram."""

from .twobridge import (
    UNKNOT,
    KnotError,
    TwoBridgeKnot,
    TwoBridgeLinkError,
    alexander_polynomial,
    genus,
    mirror,
    normalize,
    signature,
)
from .floer import (
    d_invariants,
    hf_hat_large_n,
    hf_minus_large_n,
    hf_plus_large_n,
    hf_plus_n_surgery,
    hf_plus_negative_surgery,
    hf_plus_zero_surgery,
)

__all__ = [
    "UNKNOT", "KnotError", "TwoBridgeKnot", "TwoBridgeLinkError", "alexander_polynomial", "genus",
    "mirror", "normalize", "signature", "d_invariants", "hf_hat_large_n", "hf_minus_large_n",
    "hf_plus_large_n", "hf_plus_n_surgery", "hf_plus_negative_surgery", "hf_plus_zero_surgery",
]
__version__ = "0.1.0"
