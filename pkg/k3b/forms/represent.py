"""
Decides whether an even rank-2 lattice has a vector of given norm.

Indefinite forms: a primitive vector of norm m exists iff the form is properly
equivalent to some (m, b', c') with 0 <= b' < 2|m| and b'^2 = D mod 4|m|, and
the first column of that equivalence is the vector. This makes the search
complete for every m, no size bound needed. Imprimitive vectors k w come from
primitive w of norm n / k^2.
"""

import itertools
from math import gcd, isqrt
from typing import Iterable, Optional, Tuple

from k3b.forms.binary_form import (
    as_form,
    discriminant,
    evaluate,
    is_square,
    isotropic_vectors,
    proper_equivalence,
)

Vector2 = Tuple[int, int]

BOX_SCAN = 8


def vector_order(v: Vector2):
    x, y = v
    return (abs(x) + abs(y), x < 0, y < 0, abs(x))


def primitive_box(bound: int) -> Iterable[Vector2]:
    vecs = [
        (x, y)
        for x, y in itertools.product(range(-bound, bound + 1), repeat=2)
        if gcd(x, y) == 1
    ]
    return sorted(vecs, key=vector_order)


def _definite_primitive(f, n: int) -> Optional[Vector2]:
    a, b, c = f
    if a < 0:
        a, b, c, n = -a, -b, -c, -n
    if n <= 0:
        return None
    det4 = 4 * a * c - b * b
    x_max = isqrt(4 * c * n // det4)
    y_max = isqrt(4 * a * n // det4)
    hits = [
        (x, y)
        for x in range(-x_max, x_max + 1)
        for y in range(-y_max, y_max + 1)
        if gcd(x, y) == 1 and evaluate((a, b, c), x, y) == n
    ]
    return min(hits, key=vector_order) if hits else None


def _indefinite_primitive(f, n: int) -> Optional[Vector2]:
    for v in primitive_box(BOX_SCAN):
        if evaluate(f, *v) == n:
            return v
    disc = discriminant(f)
    modulus = 4 * abs(n)
    for b in range(2 * abs(n)):
        if (b * b - disc) % modulus != 0:
            continue
        target = (n, b, (b * b - disc) // (4 * n))
        m = proper_equivalence(f, target)
        if m is not None:
            return (m[0][0], m[1][0])
    return None


def _represents_primitively(coeffs, n: int) -> Optional[Vector2]:
    disc = discriminant(coeffs)
    if disc == 0:
        raise ValueError("singular lattice: representation test needs det != 0")
    if n == 0:
        if disc > 0 and is_square(disc):
            return min(isotropic_vectors(coeffs), key=vector_order)
        return None
    if disc < 0:
        return _definite_primitive(coeffs, n)
    return _indefinite_primitive(coeffs, n)


def represents_primitively(f, n: int) -> Optional[Vector2]:
    return _represents_primitively(as_form(f).coeffs, n)


def represents(f, n: int) -> Optional[Vector2]:
    """
    A vector v with v G v^T = n, primitive whenever a primitive one exists,
    or None.
    """
    coeffs = as_form(f).coeffs
    k = 1
    while k * k <= max(abs(n), 1):
        if n % (k * k) == 0:
            w = _represents_primitively(coeffs, n // (k * k))
            if w is not None:
                v = (k * w[0], k * w[1])
                if evaluate(coeffs, *v) != n:
                    raise RuntimeError(f"Vector {v} does not have norm {n}")
                return v
        k += 1
    return None
