"""
Lattice side of the map X_{b,c} -> S_{b,c} from degree 2p^2d to degree 2d.

Pic(X) has Gram [[2p^2d, b], [b, 2c]] in the basis (H, K). Pic(S) is read off
the Mukai model v^perp / v with v = (p, H, pd).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Any, Dict, Optional, Tuple

from k3b.brauer.alpha import EVEN_THETA, ORDER_TWO_POINT, TaggedRational, theta_kind, vanishing_invariants
from k3b.common.core_utils import IntMatrix, check_prime, frac_mod
from k3b.lattice.gram import GramLattice, k3_lattice
from k3b.lattice.matrix_utils import bilinear, congruence, det, unimodular_inverse, vec_mat
from k3b.lattice.snf import smith_normal_form


@dataclass(frozen=True)
class SurfaceParams:
    """
    :param d: Half the degree of S.
    :param p: Prime, X has degree 2p^2d.
    :param b: H . K in Pic(X).
    :param c: Half of K^2.
    """

    d: int
    p: int
    b: int
    c: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"Degree parameter d must be positive, got {self.d}")
        check_prime(self.p)

    def pic_x_det(self) -> int:
        return 4 * self.p**2 * self.d * self.c - self.b**2

    def check_signature(self) -> None:
        if self.pic_x_det() >= 0:
            raise ValueError(
                f"signature: det Pic(X) = {self.pic_x_det()} must be negative for {self}"
            )

    def pic_x(self) -> GramLattice:
        return GramLattice(((2 * self.p**2 * self.d, self.b), (self.b, 2 * self.c)))

    def to_json(self) -> Dict[str, str]:
        return {"d": str(self.d), "p": str(self.p), "b": str(self.b), "c": str(self.c)}


@dataclass(frozen=True)
class MukaiModel:
    """
    Slice of the Mukai lattice in the basis (r, u1, u2, s, k) with r.s = -1,
    u1.u2 = 1 and k^2 = 2c, where H = u1 + p^2 d u2 and K = b u2 + k.
    """

    gram: IntMatrix
    v: Tuple[int, ...]
    alpha: Tuple[int, ...]
    beta: Tuple[int, ...]
    gamma: Tuple[int, ...]

    def pair(self, x, y) -> int:
        return bilinear(x, self.gram, y)


def mukai_model(s: SurfaceParams) -> MukaiModel:
    p, d, b, c = s.p, s.d, s.b, s.c
    gram = (
        (0, 0, 0, -1, 0),
        (0, 0, 1, 0, 0),
        (0, 1, 0, 0, 0),
        (-1, 0, 0, 0, 0),
        (0, 0, 0, 0, 2 * c),
    )
    r, s_ = (1, 0, 0, 0, 0), (0, 0, 0, 1, 0)
    h = (0, 1, p * p * d, 0, 0)
    k = (0, 0, b, 0, 1)

    def comb(*terms):
        return tuple(sum(coef * vec[j] for coef, vec in terms) for j in range(5))

    v = comb((p, r), (1, h), (p * d, s_))
    alpha = comb((-1, r), (d, s_))
    beta = comb((2 * p, r), (1, h))
    if b % p != 0:
        gamma = comb((p, k), (b, s_))
    else:
        gamma = comb((1, k), (b // p, s_))
    model = MukaiModel(gram=gram, v=v, alpha=alpha, beta=beta, gamma=gamma)

    if model.pair(v, v) != 0:
        raise RuntimeError(f"Mukai vector {v} is not isotropic")
    if v != comb((p, alpha), (1, beta)):
        raise RuntimeError("v != p alpha + beta")
    return model


def _kappa_gram(d: int, p: int, b: int, c: int) -> IntMatrix:
    if b % p != 0:
        return ((2 * d, b), (b, 2 * c * p * p))
    return ((2 * d, b // p), (b // p, 2 * c))


def kappa_pic(s: SurfaceParams) -> GramLattice:
    s.check_signature()
    return GramLattice(_kappa_gram(s.d, s.p, s.b, s.c))


def mukai_oracle_pic(s: SurfaceParams) -> GramLattice:
    """
    Pic(S) as v^perp / v inside span(r, H, s, K), with basis the images of
    alpha and gamma.
    """
    s.check_signature()
    p, d, b = s.p, s.d, s.b
    model = mukai_model(s)
    # (r, H, s, K) inside the 5-dim slice.
    basis = (
        (1, 0, 0, 0, 0),
        (0, 1, p * p * d, 0, 0),
        (0, 0, 0, 1, 0),
        (0, 0, b, 0, 1),
    )
    functional = tuple(model.pair(e, model.v) for e in basis)
    snf = smith_normal_form(tuple((x,) for x in functional))
    left_inv = unimodular_inverse(snf.left)

    v = (p, 1, p * d, 0)
    alpha = (-1, 0, d, 0)
    gamma = (0, 0, b, p) if b % p != 0 else (0, 0, b // p, 1)
    coords = []
    for x in (v, alpha, gamma):
        y = vec_mat(x, left_inv)
        if y[0] != 0:
            raise RuntimeError(f"{x} is not orthogonal to v")
        coords.append(y[1:])
    if abs(det(coords)) != 1:
        raise RuntimeError(f"(v, alpha, gamma) is not a basis of v^perp for {s}")

    to_slice = [vec_mat(x, basis) for x in (alpha, gamma)]
    if tuple(to_slice[0]) != model.alpha or tuple(to_slice[1]) != model.gamma:
        raise RuntimeError("Mukai model generators disagree with the slice basis")
    return GramLattice(congruence(to_slice, model.gram))


def det_compatible(s: SurfaceParams) -> bool:
    return s.pic_x_det() == det(_kappa_gram(s.d, s.p, s.b, s.c))


def alpha_x_equals_vanishing(s: SurfaceParams) -> bool:
    """
    alpha_X and alpha_van agree iff p does not divide b. Cross-checked against
    |det T(X)| = |det T(S)| when Pic(X) is nondegenerate.
    """
    result = s.b % s.p != 0
    det_x = s.pic_x_det()
    if det_x != 0:
        same = abs(det_x) == abs(det(_kappa_gram(s.d, s.p, s.b, s.c)))
        if same != result:
            raise RuntimeError(f"Determinant check disagrees for {s}")
    return result


def bx_invariants(p: int, d: int = 1) -> Tuple[Fraction, Fraction]:
    """
    (B_X h, B_X^2) for B_X = (1/p)((0, 1), 0) in U + Lambda', h = (1, d) in U.
    """
    check_prime(p)
    lattice = k3_lattice()
    n = lattice.rank
    bx = (Fraction(0), Fraction(1, p)) + (Fraction(0),) * (n - 2)
    h = (1, d) + (0,) * (n - 2)
    t_s = (-1, d) + (0,) * (n - 2)
    if lattice.pair(bx, tuple(p * x for x in t_s)) % 1 != 0:
        raise RuntimeError("B_X is not integral on p t_S")
    if lattice.pair(bx, t_s) % 1 == 0:
        raise RuntimeError("B_X is integral on t_S")
    return frac_mod(lattice.pair(bx, h), 1), Fraction(lattice.norm(bx))


@dataclass(frozen=True)
class ThetaType:
    kind: str
    equals_alpha_x: bool
    sum_parity: Optional[str] = None

    def to_json(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "equals_alpha_x": self.equals_alpha_x,
            "sum_parity": self.sum_parity,
        }


def theta_type(b: int, c: int) -> ThetaType:
    """
    Theta label of alpha_van on S for d = 1, p = 2.
    """
    gram = _kappa_gram(1, 2, b, c)
    b_s, c_s = gram[0][1], gram[1][1] // 2
    bh, bsq = vanishing_invariants(2, b_s, c_s, d=1)
    kind = theta_kind(bh, bsq)
    sum_parity = None
    if kind == ORDER_TWO_POINT:
        bh_x, bsq_x = bx_invariants(2)
        total = theta_kind(bh_x + bh, TaggedRational(bsq_x + bsq.value, Fraction(1)))
        sum_parity = "even" if total == EVEN_THETA else "odd"
    return ThetaType(kind=kind, equals_alpha_x=b % 2 == 1, sum_parity=sum_parity)


def transcendental_index(s: SurfaceParams) -> int:
    """
    gcd(p, gamma) where H . Pic(X) = gamma Z.
    """
    gamma = gcd(2 * s.p**2 * s.d, s.b)
    idx = gcd(s.p, gamma)
    det_x = s.pic_x_det()
    if det_x != 0:
        det_s = det(_kappa_gram(s.d, s.p, s.b, s.c))
        if idx * idx * abs(det_s) != abs(det_x):
            raise RuntimeError(f"Index {idx} is inconsistent with determinants for {s}")
    return idx
