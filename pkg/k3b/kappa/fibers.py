from fractions import Fraction

from sympy import primefactors

from k3b.brauer.alpha import is_k3_case
from k3b.brauer.counting import count_classes
from k3b.common.core_utils import check_prime
from k3b.lattice.discriminant import FiniteQuadForm, cyclic_forms_isomorphic, disc_form
from k3b.lattice.gram import GramLattice, rank_one
from k3b.lattice.matrix_utils import is_integral


def fiber_degree(d: int, p: int) -> int:
    """
    Number of points over a general (S, h) of degree 2d.
    """
    check_prime(p)
    if d < 1:
        raise ValueError(f"Degree parameter d must be positive, got {d}")
    if d % p == 0:
        return p**20
    if d == 1:
        return p**10 * (p**10 + 1) // 2
    return p**10 * (p**10 + 1)


def fm_count(n: int) -> int:
    """
    2^(tau(n) - 1), tau the number of distinct prime factors, with tau(1) = 1.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    tau = len(primefactors(n)) if n > 1 else 1
    return 2 ** (tau - 1)


def fiber_consistency(d: int, p: int) -> bool:
    counts = count_classes(p, d)
    k3 = sum(n for case, n in counts.items() if is_k3_case(p, case))
    return fiber_degree(d, p) == k3 * Fraction(fm_count(p * p * d), fm_count(d))


def overlattice_disc(p: int, d: int) -> FiniteQuadForm:
    """
    Discriminant form of the index-p overlattice of <t_X> = <-2p^2d> obtained
    from the isotropic subgroup generated by 2pd g: H^perp / H is generated by
    p g.
    """
    check_prime(p)
    source = disc_form(rank_one(-2 * p * p * d))
    (n,) = source.cyclic_orders
    h = (n // p,)
    if source.value(h) != 0:
        raise RuntimeError(f"Glue subgroup of <-2p^2d> is not isotropic: q = {source.value(h)}")
    if source.bilinear((p,), h) != 0:
        raise RuntimeError("p g is not orthogonal to the glue subgroup")
    result = FiniteQuadForm(
        cyclic_orders=(n // (p * p),),
        q_matrix=((source.value((p,)),),),
    )
    if not cyclic_forms_isomorphic(result, disc_form(rank_one(-2 * d))):
        raise RuntimeError(f"Overlattice form {result} does not match <-2d>")
    return result


def glue_unimodular(n: int) -> GramLattice:
    """
    Adjoins (x + t) / n to <n> + <-n> and returns the Gram matrix of the
    overlattice in the basis (x, (x + t) / n).
    """
    if n < 2 or n % 2 != 0:
        raise ValueError(f"Glue needs a positive even norm, got {n}")
    gram = ((n, 0), (0, -n))
    x = (Fraction(1), Fraction(0))
    glue = (Fraction(1, n), Fraction(1, n))
    rows = (x, glue)
    entries = tuple(
        tuple(sum(u[i] * gram[i][j] * w[j] for i in range(2) for j in range(2)) for w in rows)
        for u in rows
    )
    if not all(is_integral(row) for row in entries):
        raise RuntimeError(f"Glue vector for n = {n} is not integral")
    lattice = GramLattice(entries)
    if abs(lattice.det()) != 1:
        raise RuntimeError(f"Glued lattice for n = {n} is not unimodular")
    return lattice
