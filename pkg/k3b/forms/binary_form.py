"""
Even rank-2 lattices viewed as binary quadratic forms.

A Gram matrix [[g11, g12], [g12, g22]] is the form a x^2 + b xy + c y^2 with
(a, b, c) = (g11, 2 g12, g22), so the discriminant b^2 - 4ac equals -4 det.
Substituting a matrix M into a form gives f o M with Gram M^T G M; as a lattice
isometry the same change of basis is the row matrix U = M^T.
"""

from dataclasses import dataclass
from math import gcd, isqrt
from typing import List, Optional, Sequence, Tuple

try:
    from sympy.core.intfunc import igcdex
except ImportError:
    from sympy.core.numbers import igcdex

from k3b.common.core_utils import IntMatrix
from k3b.lattice.gram import GramLattice
from k3b.lattice.matrix_utils import congruence, mat_mul, transpose, unimodular_inverse

Triple = Tuple[int, int, int]
Mat2 = Tuple[Tuple[int, int], Tuple[int, int]]

IDENTITY_2: Mat2 = ((1, 0), (0, 1))
FLIP_Y: Mat2 = ((1, 0), (0, -1))


@dataclass(frozen=True)
class BinaryForm:
    """
    :param gram: Even symmetric 2x2 Gram matrix. The form coefficients are
        derived from it, see the module docstring.
    """

    gram: IntMatrix

    def __post_init__(self):
        lattice = GramLattice(self.gram)
        if lattice.rank != 2:
            raise ValueError(f"Binary forms need a rank 2 lattice, got rank {lattice.rank}")
        object.__setattr__(self, "gram", lattice.gram)

    @classmethod
    def from_coeffs(cls, a: int, b: int, c: int) -> "BinaryForm":
        if b % 2 != 0:
            raise ValueError(f"Middle coefficient {b} is odd, form is not an even lattice")
        return cls(((a, b // 2), (b // 2, c)))

    @classmethod
    def from_lattice(cls, lattice: GramLattice) -> "BinaryForm":
        return cls(lattice.gram)

    @property
    def coeffs(self) -> Triple:
        return (self.gram[0][0], 2 * self.gram[0][1], self.gram[1][1])

    @property
    def disc(self) -> int:
        return discriminant(self.coeffs)

    def det(self) -> int:
        return self.gram[0][0] * self.gram[1][1] - self.gram[0][1] ** 2

    def lattice(self) -> GramLattice:
        return GramLattice(self.gram)

    def is_indefinite(self) -> bool:
        return self.det() < 0

    def __call__(self, x: int, y: int) -> int:
        return evaluate(self.coeffs, x, y)


def as_form(f) -> BinaryForm:
    if isinstance(f, BinaryForm):
        return f
    if isinstance(f, GramLattice):
        return BinaryForm.from_lattice(f)
    return BinaryForm(f)


def discriminant(f: Triple) -> int:
    a, b, c = f
    return b * b - 4 * a * c


def content(f: Triple) -> int:
    return gcd(gcd(f[0], f[1]), f[2])


def evaluate(f: Triple, x: int, y: int) -> int:
    a, b, c = f
    return a * x * x + b * x * y + c * y * y


def substitute(f: Triple, m: Sequence[Sequence[int]]) -> Triple:
    """
    f o M with M = ((p, q), (r, s)), i.e. (x, y) -> (p x + q y, r x + s y).
    """
    a, b, c = f
    (p, q), (r, s) = m
    return (
        a * p * p + b * p * r + c * r * r,
        2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
        a * q * q + b * q * s + c * s * s,
    )


def mat2_mul(x: Sequence[Sequence[int]], y: Sequence[Sequence[int]]) -> Mat2:
    return tuple(tuple(int(v) for v in row) for row in mat_mul(x, y))


def mat2_inv(m: Sequence[Sequence[int]]) -> Mat2:
    (p, q), (r, s) = m
    det = p * s - q * r
    if det not in (1, -1):
        raise ValueError(f"Matrix {m} is not unimodular")
    return ((s * det, -q * det), (-r * det, p * det))


def _check_substitution(f: Triple, m: Mat2, g: Triple) -> Mat2:
    if substitute(f, m) != g:
        raise RuntimeError(f"Witness {m} does not carry {f} to {g}")
    return m


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


# Indefinite forms with nonsquare discriminant.


def is_reduced(f: Triple) -> bool:
    a, b, _ = f
    s = isqrt(discriminant(f))
    return 0 < b <= s and 2 * abs(a) + b >= s + 1 and 2 * abs(a) - b <= s


def rho(f: Triple) -> Tuple[Triple, Mat2]:
    """
    One reduction step (a, b, c) -> (c, r, (r^2 - D) / 4c) with r = -b
    normalized mod 2c. Returns the new form and the proper substitution
    carrying f to it.
    """
    a, b, c = f
    if c == 0:
        raise ValueError(f"Cannot step {f}: discriminant is a square")
    s = isqrt(discriminant(f))
    two_c = 2 * abs(c)
    if abs(c) > s:
        r = (-b) % two_c
        if r > abs(c):
            r -= two_c
    else:
        r = s - ((s + b) % two_c)
    t = (r + b) // (2 * c)
    m: Mat2 = ((0, -1), (1, t))
    return substitute(f, m), m


def reduce_form(f: Triple) -> Tuple[Triple, Mat2]:
    """
    Reduced form properly equivalent to f together with R such that f o R is it.
    """
    total = IDENTITY_2
    while not is_reduced(f):
        f, m = rho(f)
        total = mat2_mul(total, m)
    return f, total


def _cycle_with_transforms(f: Triple) -> List[Tuple[Triple, Mat2]]:
    out = [(f, IDENTITY_2)]
    g, total = f, IDENTITY_2
    while True:
        g, m = rho(g)
        total = mat2_mul(total, m)
        if g == f:
            return out
        out.append((g, total))


# Square discriminant branch.


def isotropic_vectors(f: Triple) -> List[Tuple[int, int]]:
    """
    Primitive representatives of the two isotropic lines of a form with
    nonzero square discriminant.
    """
    a, b, c = f
    disc = discriminant(f)
    if disc <= 0 or not is_square(disc):
        raise ValueError(f"Form {f} has no isotropic vectors over Q")
    m = isqrt(disc)
    if a != 0:
        raw = [(-b + m, 2 * a), (-b - m, 2 * a)]
    else:
        raw = [(1, 0), (c, -b)]
    out = []
    for x, y in raw:
        g = gcd(x, y)
        out.append((x // g, y // g))
    return out


def _complete(x0: int, y0: int) -> Mat2:
    u, v, g = igcdex(x0, y0)
    u, v, g = int(u), int(v), int(g)
    if g < 0:
        u, v = -u, -v
    # x0 * u + y0 * v = 1
    return ((x0, -v), (y0, u))


def square_canonical(f: Triple) -> Tuple[Triple, Mat2]:
    """
    The unique form (0, m, c') with 0 <= c' < m properly equivalent to f,
    where m^2 is the discriminant, and a substitution reaching it.
    """
    m = isqrt(discriminant(f))
    for x0, y0 in isotropic_vectors(f):
        base = _complete(x0, y0)
        g = substitute(f, base)
        if g[0] != 0 or g[1] != m:
            continue
        k = -(g[2] // m)
        shift: Mat2 = ((1, k), (0, 1))
        total = mat2_mul(base, shift)
        canonical = (0, m, g[2] % m)
        return canonical, _check_substitution(f, total, canonical)
    raise RuntimeError(f"No isotropic line of {f} has middle coefficient {m}")


# Definite forms.


def _reduce_positive(f: Triple) -> Tuple[Triple, Mat2]:
    total = IDENTITY_2
    swap: Mat2 = ((0, -1), (1, 0))
    while True:
        a, b, c = f
        t = (a - b) // (2 * a)
        shift: Mat2 = ((1, t), (0, 1))
        f = substitute(f, shift)
        total = mat2_mul(total, shift)
        a, b, c = f
        if a > c or (a == c and b < 0):
            f = substitute(f, swap)
            total = mat2_mul(total, swap)
            if a == c:
                return f, total
            continue
        return f, total


def reduce_definite(f: Triple) -> Tuple[Triple, Mat2]:
    if discriminant(f) >= 0:
        raise ValueError(f"Form {f} is not definite")
    if f[0] > 0:
        return _reduce_positive(f)
    g, m = _reduce_positive(tuple(-x for x in f))
    return tuple(-x for x in g), m


def reduce_cycle(f) -> List[Triple]:
    """
    One full period of reduced forms in the proper class of an indefinite
    form. A square discriminant has no cycle; its class is represented by the
    single canonical form (0, m, c').
    """
    coeffs = as_form(f).coeffs
    disc = discriminant(coeffs)
    if disc <= 0:
        raise ValueError(f"Form {coeffs} is definite or degenerate, discriminant {disc}")
    if is_square(disc):
        return [square_canonical(coeffs)[0]]
    red, _ = reduce_form(coeffs)
    return [g for g, _ in _cycle_with_transforms(red)]


def proper_equivalence(f: Triple, g: Triple) -> Optional[Mat2]:
    """
    M in SL2(Z) with f o M = g, or None.
    """
    disc = discriminant(f)
    if disc != discriminant(g) or content(f) != content(g):
        return None
    if disc == 0:
        raise ValueError(f"Form {f} is degenerate")
    if disc < 0:
        if (f[0] > 0) != (g[0] > 0):
            return None
        rf, mf = reduce_definite(f)
        rg, mg = reduce_definite(g)
        if rf != rg:
            return None
        return _check_substitution(f, mat2_mul(mf, mat2_inv(mg)), g)
    if is_square(disc):
        cf, mf = square_canonical(f)
        cg, mg = square_canonical(g)
        if cf != cg:
            return None
        return _check_substitution(f, mat2_mul(mf, mat2_inv(mg)), g)

    rf, mf = reduce_form(f)
    rg, mg = reduce_form(g)
    for h, p in _cycle_with_transforms(rf):
        if h == rg:
            return _check_substitution(f, mat2_mul(mat2_mul(mf, p), mat2_inv(mg)), g)
    return None


def gl2_equivalence(f: Triple, g: Triple) -> Optional[Mat2]:
    """
    M in GL2(Z) with f o M = g, or None. Improper matrices are tried through
    (a, -b, c) = g o diag(1, -1).
    """
    m = proper_equivalence(f, g)
    if m is not None:
        return m
    flipped = substitute(g, FLIP_Y)
    m = proper_equivalence(f, flipped)
    if m is None:
        return None
    return _check_substitution(f, mat2_mul(m, FLIP_Y), g)


def is_isometric(a, b) -> Optional[IntMatrix]:
    """
    Unimodular U with U A U^T = B, or None when the lattices are not isometric.
    """
    fa, fb = as_form(a), as_form(b)
    if fa.det() != fb.det():
        return None
    if fa.det() == 0:
        raise ValueError("singular lattice: isometry test needs det != 0")
    m = gl2_equivalence(fa.coeffs, fb.coeffs)
    if m is None:
        return None
    u = transpose(m)
    if congruence(u, fa.gram) != fb.gram:
        raise RuntimeError(f"Witness {u} does not map {fa.gram} to {fb.gram}")
    return tuple(tuple(int(x) for x in row) for row in u)


def inverse_witness(u: Sequence[Sequence[int]]) -> IntMatrix:
    return unimodular_inverse(u)
