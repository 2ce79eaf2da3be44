"""Exact Lie algebras generated by homogeneous derivations of K[x_1, ..., x_n]."""

__version__ = "0.1.0"

from .algebra import (
    HomogeneousDerivation,
    LaurentOnly,
    Monomial,
    TypeI,
    TypeII,
    Zero,
    apply,
    bracket,
    canonicalize,
    classify,
    delta,
    derivation,
    nabla,
    pairing,
    pretty,
    proportional,
    weight,
)
from .closure import (
    CapExceeded,
    Closed,
    ad_power,
    close,
    model_filiform_check,
    series_analysis,
    structure_constants,
    two_generator_algebra,
)
from .criteria import Verdict, decide, decide_type1, decide_type2, find_r, orientation_feasible, pairwise_diagnostics
