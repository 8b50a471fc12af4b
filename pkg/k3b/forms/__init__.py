from k3b.forms.automorphs import (
    automorphism_generators,
    disc_action,
    disc_action_matrix,
    glue_uniqueness,
)
from k3b.forms.binary_form import (
    BinaryForm,
    is_isometric,
    isotropic_vectors,
    proper_equivalence,
    reduce_cycle,
)
from k3b.forms.pell import PellResult, fundamental_solution, fundamental_unit, pell_pm
from k3b.forms.represent import represents

__all__ = [
    "BinaryForm",
    "PellResult",
    "automorphism_generators",
    "disc_action",
    "disc_action_matrix",
    "fundamental_solution",
    "fundamental_unit",
    "glue_uniqueness",
    "is_isometric",
    "isotropic_vectors",
    "pell_pm",
    "proper_equivalence",
    "reduce_cycle",
    "represents",
]
