from k3b.kappa.fibers import (
    fiber_consistency,
    fiber_degree,
    fm_count,
    glue_unimodular,
    overlattice_disc,
)
from k3b.kappa.surface import (
    MukaiModel,
    SurfaceParams,
    ThetaType,
    alpha_x_equals_vanishing,
    bx_invariants,
    det_compatible,
    kappa_pic,
    mukai_model,
    mukai_oracle_pic,
    theta_type,
    transcendental_index,
)

__all__ = [
    "MukaiModel",
    "SurfaceParams",
    "ThetaType",
    "alpha_x_equals_vanishing",
    "bx_invariants",
    "det_compatible",
    "fiber_consistency",
    "fiber_degree",
    "fm_count",
    "glue_unimodular",
    "kappa_pic",
    "mukai_model",
    "mukai_oracle_pic",
    "overlattice_disc",
    "theta_type",
    "transcendental_index",
]
