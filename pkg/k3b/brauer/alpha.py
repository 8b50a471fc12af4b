"""
Order-p Brauer classes of a degree-2d K3 surface of Picard rank one.

The transcendental lattice is modelled as T = Z t_S + Lambda'_m with
t_S^2 = -2d. A class alpha is the functional

    alpha(z t_S + mu) = (i z + lambda . mu) / p   mod Z

so it is stored as (i, lambda mod p). B-field invariants follow
B h = -i / p and B^2 = -2 c / p^2 with c = -lambda^2 / 2 mod p.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np
from sympy import legendre_symbol

from k3b.common.core_utils import check_prime, frac_mod
from k3b.lattice.discriminant import cyclic_forms_isomorphic, disc_form
from k3b.lattice.gram import (
    LAMBDA_RANKS,
    UNIMODULAR_LAMBDA_RANKS,
    check_unimodular_rank,
    lambda_prime,
    rank_one,
    transcendental_model,
)
from k3b.lattice.matrix_utils import bilinear, vec_mat
from k3b.lattice.sublattice import kernel_sublattice

LEMMA_CASES = ("A_i", "A_ii", "A_iii", "B_i", "B_ii", "B_iii", "B_iv")
CASE_CODE = {name: idx for idx, name in enumerate(LEMMA_CASES)}

ORDER_TWO_POINT = "order_two_point"
EVEN_THETA = "even_theta"
ODD_THETA = "odd_theta"

CLASSIFY_METHODS = ("auto", "parity", "invariants", "lattice")


@dataclass(frozen=True)
class TaggedRational:
    """
    :param value: Exact rational, unreduced.
    :param modulus: The quotient the value is meaningful in (1 for mod Z,
        1/p for mod (1/p)Z). None when the value depends on the chosen B-field.
    """

    value: Fraction
    modulus: Optional[Fraction]

    def reduced(self) -> Optional[Fraction]:
        if self.modulus is None:
            return None
        return frac_mod(self.value, self.modulus)

    def is_zero(self) -> Optional[bool]:
        r = self.reduced()
        return None if r is None else r == 0

    def __str__(self) -> str:
        if self.modulus is None:
            return f"{self.value} (not invariant)"
        return f"{self.reduced()} mod {self.modulus}"


@dataclass(frozen=True)
class AlphaParam:
    """
    :param p: Prime order of the class.
    :param d: Half the polarization degree.
    :param i_alpha: Value on t_S, a residue mod p.
    :param lam: Residues mod p in the fixed Lambda' basis. Its length is the
        rank of the Lambda' block, 20 for the actual surface.
    """

    p: int
    d: int
    i_alpha: int
    lam: Tuple[int, ...]

    def __post_init__(self):
        check_prime(self.p)
        if self.d < 1:
            raise ValueError(f"Degree parameter d must be positive, got {self.d}")
        if len(self.lam) not in LAMBDA_RANKS:
            raise ValueError(
                f"lambda has length {len(self.lam)}, expected one of {LAMBDA_RANKS}"
            )
        object.__setattr__(self, "i_alpha", self.i_alpha % self.p)
        object.__setattr__(self, "lam", tuple(int(x) % self.p for x in self.lam))

    @property
    def rank(self) -> int:
        return len(self.lam)

    def is_zero(self) -> bool:
        return self.i_alpha == 0 and not any(self.lam)

    def scaled(self, u: int) -> "AlphaParam":
        return AlphaParam(self.p, self.d, u * self.i_alpha, tuple(u * x for x in self.lam))

    def functional(self) -> Tuple[int, ...]:
        """
        Coordinates of p * alpha on the basis (t_S, Lambda' basis), mod p.
        """
        gram = lambda_prime(self.rank).gram
        return (self.i_alpha,) + tuple(int(x) % self.p for x in vec_mat(self.lam, gram))


@dataclass(frozen=True)
class ClassInvariants:
    bh: Fraction
    c_alpha: int
    bsq: TaggedRational
    disc_orders: Tuple[int, ...]
    qr_flag: Optional[bool]


@dataclass(frozen=True)
class ClassLabel:
    lemma_case: str
    k3_type: bool
    theta_tag: Optional[str] = None


def b_square_modulus(p: int, d: int, i: int) -> Optional[Fraction]:
    """
    The quotient in which B^2 is independent of the B-field representative.
    """
    if p == 2:
        return Fraction(1) if (d - i) % 2 == 0 else Fraction(1, 2)
    if d % p == 0 and i % p == 0:
        return Fraction(1, p)
    return None


def c_alpha(p: int, lam: Sequence[int]) -> int:
    gram = lambda_prime(len(lam)).gram
    return (-(bilinear(lam, gram, lam) // 2)) % p


def _check_nonzero(a: AlphaParam) -> None:
    if a.is_zero():
        raise ValueError("zero class: (i, lambda) = (0, 0) is not a Brauer class of order p")


@lru_cache(maxsize=None)
def _qr_table(p: int) -> np.ndarray:
    table = np.zeros(p, dtype=bool)
    table[[(x * x) % p for x in range(1, p)]] = True
    return table


def is_k3_case(p: int, case: str) -> bool:
    if p == 2:
        return case in ("A_ii", "B_iii")
    return case in ("A_i", "B_iv")


def _qr_flag(p: int, d: int, i: int, c: int) -> Optional[bool]:
    """
    Whether i^2 + 4 d c_alpha (c_alpha when p | d) is a nonzero square mod p.
    This is the Legendre test on -2 d p^2 q(v) for a generator v of the
    p-part of the kernel discriminant group, rewritten in terms of (i, c_alpha).
    """
    if p == 2:
        return None
    x = (i * i + 4 * d * c) % p if d % p != 0 else c % p
    if x == 0:
        return None
    return legendre_symbol(x, p) == 1


def alpha_invariants(a: AlphaParam, with_disc: bool = True) -> ClassInvariants:
    _check_nonzero(a)
    p, d, i = a.p, a.d, a.i_alpha
    c = c_alpha(p, a.lam)
    disc_orders: Tuple[int, ...] = ()
    if with_disc:
        kernel = kernel_sublattice(transcendental_model(d, a.rank), a.functional(), p)
        disc_orders = disc_form(kernel).cyclic_orders
    return ClassInvariants(
        bh=frac_mod(Fraction(-i, p), 1),
        c_alpha=c,
        bsq=TaggedRational(Fraction(-2 * c, p * p), b_square_modulus(p, d, i)),
        disc_orders=disc_orders,
        qr_flag=_qr_flag(p, d, i, c),
    )


def vanishing_invariants(
    p: int, b: int, c: int, d: Optional[int] = None
) -> Tuple[Fraction, TaggedRational]:
    """
    (B h, B^2) of B_van = k / p where k has k h = b and k^2 = 2c. Without d the
    square is read mod Z.
    """
    check_prime(p)
    modulus = Fraction(1) if d is None else b_square_modulus(p, d, -b)
    return frac_mod(Fraction(b, p), 1), TaggedRational(Fraction(2 * c, p * p), modulus)


def vanishing_alpha(p: int, b: int, c: int) -> Tuple[int, int]:
    """
    (i, c_alpha) of the class with the invariants of B_van.
    """
    return (-b) % p, (-c) % p


def alpha_x(p: int, d: int, rank: int = 20) -> AlphaParam:
    """
    The class of B_X = (1/p)((0, 1), 0), i = 1 and lambda = 0.
    """
    return AlphaParam(p, d, 1, (0,) * rank)


def theta_kind(bh: Fraction, bsq) -> str:
    """
    Theta label of a class for p = 2, d = 1.
    """
    if frac_mod(bh, 1) == 0:
        return ORDER_TWO_POINT
    value = bsq.value if isinstance(bsq, TaggedRational) else Fraction(bsq)
    return EVEN_THETA if frac_mod(value, 1) == 0 else ODD_THETA


def _case_codes(p: int, d: int, i: int, c: np.ndarray) -> np.ndarray:
    """
    Lemma case codes for a fixed i and an array of c_alpha values.
    """
    c = np.asarray(c, dtype=np.int64) % p
    i %= p

    def full(name):
        return np.full(c.shape, CASE_CODE[name], dtype=np.int64)

    if p == 2:
        if d % 2 == 1:
            if i == 0:
                return full("A_i")
            return np.where(c == 0, CASE_CODE["A_ii"], CASE_CODE["A_iii"])
        if i == 1:
            return full("B_iii")
        return np.where(c == 0, CASE_CODE["B_i"], CASE_CODE["B_ii"])

    qr = _qr_table(p)
    if d % p != 0:
        a = (i * i + 4 * d * c) % p
        return np.where(
            a == 0, CASE_CODE["A_iii"], np.where(qr[a], CASE_CODE["A_i"], CASE_CODE["A_ii"])
        )
    if i != 0:
        return full("B_iv")
    return np.where(
        c == 0, CASE_CODE["B_iii"], np.where(qr[c], CASE_CODE["B_i"], CASE_CODE["B_ii"])
    )


def _parity_case(a: AlphaParam) -> str:
    if a.p != 2:
        raise ValueError(f"Parity rule only applies to p = 2, got p = {a.p}")
    inv = alpha_invariants(a, with_disc=False)
    half = Fraction(1, 2)
    if a.d % 2 == 1:
        if inv.bh == 0:
            return "A_i"
        return "A_ii" if inv.bsq.is_zero() else "A_iii"
    if inv.bh == half:
        return "B_iii"
    return "B_i" if inv.bsq.is_zero() else "B_ii"


def _invariants_case(a: AlphaParam) -> str:
    code = _case_codes(a.p, a.d, a.i_alpha, np.array([c_alpha(a.p, a.lam)]))[0]
    return LEMMA_CASES[int(code)]


def _lattice_case(a: AlphaParam) -> str:
    """
    Reads the case off the kernel discriminant form. The cyclic isomorphism
    test against Z/2p^2d is the Legendre test on -2 d p^2 q(v) for the
    generator v, so it agrees with _qr_flag on every class.
    """
    check_unimodular_rank(a.rank)
    p, d = a.p, a.d
    kernel = kernel_sublattice(transcendental_model(d, a.rank), a.functional(), p)
    form = disc_form(kernel)
    n = form.num_generators
    k3 = n == 1 and cyclic_forms_isomorphic(form, disc_form(rank_one(-2 * p * p * d)))
    c = c_alpha(p, a.lam)

    if p == 2 and d % 2 == 1:
        if n == 3:
            return "A_i"
        return "A_ii" if k3 else "A_iii"
    if p == 2:
        if k3:
            return "B_iii"
        return "B_i" if c == 0 else "B_ii"
    if d % p != 0:
        if n == 1:
            return "A_i" if k3 else "A_ii"
        return "A_iii"
    if k3:
        return "B_iv"
    if n == 3:
        return "B_iii"
    if c == 0:
        raise RuntimeError(
            f"Kernel of {a} has discriminant {form.cyclic_orders} but c_alpha = 0"
        )
    return "B_i" if legendre_symbol(c, p) == 1 else "B_ii"


def classify(a: AlphaParam, method: str = "auto") -> ClassLabel:
    """
    :param method: "parity" (p = 2 closed rule on B h and B^2), "invariants"
        (closed rule on i and c_alpha), "lattice" (kernel sublattice and its
        discriminant form) or "auto", which takes the parity rule for p = 2
        and the lattice computation otherwise. The lattice computation needs a
        unimodular Lambda' block, so "auto" falls back to the invariants rule
        on the other toy ranks.
    """
    _check_nonzero(a)
    if method not in CLASSIFY_METHODS:
        raise ValueError(f"Unknown classify method {method}, use one of {CLASSIFY_METHODS}")
    if method == "auto":
        if a.p == 2:
            method = "parity"
        else:
            method = "lattice" if a.rank in UNIMODULAR_LAMBDA_RANKS else "invariants"
    if method == "parity":
        case = _parity_case(a)
    elif method == "invariants":
        case = _invariants_case(a)
    else:
        case = _lattice_case(a)

    theta_tag = None
    if a.p == 2 and a.d == 1:
        theta_tag = {"A_i": ORDER_TWO_POINT, "A_ii": EVEN_THETA, "A_iii": ODD_THETA}[case]
    return ClassLabel(lemma_case=case, k3_type=is_k3_case(a.p, case), theta_tag=theta_tag)
