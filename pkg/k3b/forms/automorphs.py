from math import gcd
from typing import List, Optional

from k3b.common.core_utils import IntMatrix
from k3b.forms.binary_form import (
    FLIP_Y,
    as_form,
    content,
    discriminant,
    is_square,
    mat2_mul,
    proper_equivalence,
    substitute,
)
from k3b.forms.pell import fundamental_unit
from k3b.lattice.discriminant import (
    DEFAULT_DISC_ENUM_BOUND,
    DiscAutomorphism,
    FiniteQuadForm,
    closure,
    disc_form,
    disc_orthogonal_group,
)
from k3b.lattice.gram import GramLattice
from k3b.lattice.matrix_utils import congruence, transpose, vec_mat

MINUS_IDENTITY: IntMatrix = ((-1, 0), (0, -1))


def _as_rows(m) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in m)


def _check_automorph(gram: IntMatrix, u: IntMatrix) -> IntMatrix:
    if congruence(u, gram) != gram:
        raise RuntimeError(f"{u} is not an isometry of {gram}")
    return u


def fundamental_automorph(f) -> Optional[IntMatrix]:
    """
    The proper automorph built from the least solution of t^2 - D0 u^2 = 4,
    D0 the discriminant of the primitive part. None for square discriminants,
    where the proper automorphs are only +-1.
    """
    form = as_form(f)
    coeffs = form.coeffs
    g = content(coeffs)
    a0, b0, c0 = (x // g for x in coeffs)
    disc0 = discriminant((a0, b0, c0))
    if disc0 <= 0:
        raise ValueError(f"Form {coeffs} is not indefinite")
    if is_square(disc0):
        return None
    t, u = fundamental_unit(disc0)
    m = (((t - b0 * u) // 2, -c0 * u), (a0 * u, (t + b0 * u) // 2))
    return _check_automorph(form.gram, _as_rows(transpose(m)))


def improper_automorph(f) -> Optional[IntMatrix]:
    """
    An isometry of determinant -1, if the form is properly equivalent to its
    mirror (a, -b, c).
    """
    form = as_form(f)
    mirror = substitute(form.coeffs, FLIP_Y)
    n = proper_equivalence(mirror, form.coeffs)
    if n is None:
        return None
    j = mat2_mul(FLIP_Y, n)
    return _check_automorph(form.gram, _as_rows(transpose(j)))


def automorphism_generators(f) -> List[IntMatrix]:
    """
    Generators of O(L) for an indefinite even rank-2 lattice, as row matrices U
    with U G U^T = G.
    """
    form = as_form(f)
    if form.det() == 0:
        raise ValueError("singular lattice: automorphisms need det != 0")
    if form.det() > 0:
        raise ValueError(f"Form {form.coeffs} is definite, expected indefinite")
    gens = [MINUS_IDENTITY]
    for u in (fundamental_automorph(form), improper_automorph(form)):
        if u is not None and u not in gens:
            gens.append(u)
    return gens


def _disc_form_of(f) -> FiniteQuadForm:
    return disc_form(GramLattice(as_form(f).gram))


def disc_action_matrix(f, u: IntMatrix, form: Optional[FiniteQuadForm] = None) -> DiscAutomorphism:
    """
    Induced action delta -> delta U on L^*/L: a unit for cyclic groups,
    otherwise the generator images as coordinate rows.
    """
    form = form or _disc_form_of(f)
    if form.num_generators == 0:
        return 1
    images = tuple(form.log(vec_mat(g, u)) for g in form.generators)
    if form.num_generators == 1:
        return images[0][0]
    return images


def disc_action(f, u: IntMatrix) -> int:
    """
    The unit k with delta U = k delta on the cyclic discriminant group.
    """
    form = _disc_form_of(f)
    if not form.is_cyclic():
        raise ValueError(
            f"use matrix action: discriminant group {form.cyclic_orders} is not cyclic"
        )
    k = disc_action_matrix(f, u, form)
    if form.num_generators == 1 and gcd(k, form.cyclic_orders[0]) != 1:
        raise RuntimeError(f"Induced map {k} is not invertible")
    return k


def glue_uniqueness(f, bound: int = DEFAULT_DISC_ENUM_BOUND) -> bool:
    """
    Whether O(L) -> O(L^*/L) is surjective.
    """
    form = _disc_form_of(f)
    target = disc_orthogonal_group(form, bound)
    images = [disc_action_matrix(f, u, form) for u in automorphism_generators(f)]
    return len(closure(form, images)) == len(target)
