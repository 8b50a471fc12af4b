from k3b.lattice.discriminant import (
    DEFAULT_DISC_ENUM_BOUND,
    FiniteQuadForm,
    cyclic_forms_isomorphic,
    disc_form,
    disc_orthogonal_group,
)
from k3b.lattice.gram import (
    GramLattice,
    direct_sum,
    e8_lattice,
    hyperbolic_plane,
    k3_lattice,
    lambda_prime,
    rank_one,
    transcendental_model,
)
from k3b.lattice.snf import SmithDecomposition, invariant_factors, smith_normal_form
from k3b.lattice.sublattice import kernel_basis, kernel_sublattice

__all__ = [
    "DEFAULT_DISC_ENUM_BOUND",
    "FiniteQuadForm",
    "GramLattice",
    "SmithDecomposition",
    "cyclic_forms_isomorphic",
    "direct_sum",
    "disc_form",
    "disc_orthogonal_group",
    "e8_lattice",
    "hyperbolic_plane",
    "invariant_factors",
    "k3_lattice",
    "kernel_basis",
    "kernel_sublattice",
    "lambda_prime",
    "rank_one",
    "smith_normal_form",
    "transcendental_model",
]
