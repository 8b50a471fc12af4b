"""
Small exact matrix helpers on tuple-of-tuple matrices. Entries are Python
integers or `Fraction`s; nothing here ever touches floating point.
"""

from fractions import Fraction
from typing import List, Sequence, Tuple

from sympy import Matrix

from k3b.common.core_utils import IntMatrix, Rational

Vector = Tuple[Rational, ...]


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence[Rational]]) -> Tuple[Tuple[Rational, ...], ...]:
    if len(m) == 0:
        return ()
    return tuple(tuple(row[j] for row in m) for j in range(len(m[0])))


def mat_mul(
    a: Sequence[Sequence[Rational]], b: Sequence[Sequence[Rational]]
) -> Tuple[Tuple[Rational, ...], ...]:
    if len(a) == 0:
        return ()
    cols = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def vec_mat(v: Sequence[Rational], m: Sequence[Sequence[Rational]]) -> Vector:
    """
    Row vector times matrix.
    """
    if len(m) == 0:
        return ()
    return tuple(
        sum(v[i] * m[i][j] for i in range(len(v))) for j in range(len(m[0]))
    )


def bilinear(x: Sequence[Rational], gram: Sequence[Sequence[Rational]], y: Sequence[Rational]) -> Rational:
    return sum(x[i] * gram[i][j] * y[j] for i in range(len(x)) for j in range(len(y)))


def congruence(u: Sequence[Sequence[Rational]], gram: Sequence[Sequence[Rational]]):
    """
    Returns `u @ gram @ u^T`, the Gram matrix in the basis given by the rows of `u`.
    """
    return mat_mul(mat_mul(u, gram), transpose(u))


def block_diag(*blocks: Sequence[Sequence[int]]) -> IntMatrix:
    n = sum(len(b) for b in blocks)
    out: List[List[int]] = [[0] * n for _ in range(n)]
    offset = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[offset + i][offset + j] = x
        offset += len(b)
    return tuple(tuple(row) for row in out)


def det(m: Sequence[Sequence[Rational]]) -> Rational:
    if len(m) == 0:
        return 1
    d = Matrix(m).det(method="bareiss")
    if d.is_Integer:
        return int(d)
    return Fraction(int(d.p), int(d.q))


def unimodular_inverse(m: Sequence[Sequence[int]]) -> IntMatrix:
    d = det(m)
    if d not in (1, -1):
        raise ValueError(f"Matrix with determinant {d} is not unimodular")
    inv = Matrix(m).inv()
    return tuple(tuple(int(x) for x in inv.row(i)) for i in range(inv.rows))


def neg(m: Sequence[Sequence[Rational]]):
    return tuple(tuple(-x for x in row) for row in m)


def is_integral(v: Sequence[Rational]) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)
