from k3b.brauer.alpha import (
    LEMMA_CASES,
    AlphaParam,
    ClassInvariants,
    ClassLabel,
    TaggedRational,
    alpha_invariants,
    alpha_x,
    classify,
    theta_kind,
    vanishing_alpha,
    vanishing_invariants,
)
from k3b.brauer.counting import (
    brute_force_counts,
    count_classes,
    predicted_counts,
    quadric_count,
)

__all__ = [
    "LEMMA_CASES",
    "AlphaParam",
    "ClassInvariants",
    "ClassLabel",
    "TaggedRational",
    "alpha_invariants",
    "alpha_x",
    "brute_force_counts",
    "classify",
    "count_classes",
    "predicted_counts",
    "quadric_count",
    "theta_kind",
    "vanishing_alpha",
    "vanishing_invariants",
]
