from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from k3b.common.core_utils import IntMatrix, as_int_matrix
from k3b.lattice.matrix_utils import identity


@dataclass(frozen=True)
class SmithDecomposition:
    """
    `left @ m @ right` is the (rectangular) diagonal matrix with `diag` on its
    main diagonal.

    :param diag: Nonnegative invariant factors with `diag[i] | diag[i+1]`.
        Zeros, if any, come last.
    :param left: Unimodular row transform.
    :param right: Unimodular column transform.
    """

    diag: Tuple[int, ...]
    left: IntMatrix
    right: IntMatrix

    @property
    def nontrivial(self) -> Tuple[int, ...]:
        return tuple(x for x in self.diag if x != 1)

    def rank(self) -> int:
        return sum(1 for x in self.diag if x != 0)


def _find_pivot(a: List[List[int]], t: int) -> Optional[Tuple[int, int]]:
    best = None
    for i in range(t, len(a)):
        for j in range(t, len(a[0])):
            x = a[i][j]
            if x != 0 and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                best = (i, j)
    return best


def _swap_rows(a: List[List[int]], i: int, j: int) -> None:
    a[i], a[j] = a[j], a[i]


def _swap_cols(a: List[List[int]], i: int, j: int) -> None:
    for row in a:
        row[i], row[j] = row[j], row[i]


def _add_row(a: List[List[int]], dst: int, src: int, k: int) -> None:
    # row[dst] += k * row[src]
    if k:
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]


def _add_col(a: List[List[int]], dst: int, src: int, k: int) -> None:
    if k:
        for row in a:
            row[dst] += k * row[src]


def smith_normal_form(m: Sequence[Sequence[int]]) -> SmithDecomposition:
    """
    Smith normal form with transforms, by repeated smallest-pivot elimination.
    Works for any integer matrix, square or not, singular or not.
    """
    m = as_int_matrix(m)
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    a = [list(row) for row in m]
    left = [list(row) for row in identity(n_rows)]
    right = [list(row) for row in identity(n_cols)]

    for t in range(min(n_rows, n_cols)):
        while True:
            pivot = _find_pivot(a, t)
            if pivot is None:
                break
            pi, pj = pivot
            if pi != t:
                _swap_rows(a, t, pi)
                _swap_rows(left, t, pi)
            if pj != t:
                _swap_cols(a, t, pj)
                _swap_cols(right, t, pj)

            p = a[t][t]
            clean = True
            for i in range(t + 1, n_rows):
                q = a[i][t] // p
                _add_row(a, i, t, -q)
                _add_row(left, i, t, -q)
                if a[i][t] != 0:
                    clean = False
            for j in range(t + 1, n_cols):
                q = a[t][j] // p
                _add_col(a, j, t, -q)
                _add_col(right, j, t, -q)
                if a[t][j] != 0:
                    clean = False
            if not clean:
                continue

            # Pivot must divide the remaining block.
            bad_row = next(
                (
                    i
                    for i in range(t + 1, n_rows)
                    if any(a[i][j] % p for j in range(t + 1, n_cols))
                ),
                None,
            )
            if bad_row is None:
                break
            _add_row(a, t, bad_row, 1)
            _add_row(left, t, bad_row, 1)

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]

    diag = tuple(a[i][i] for i in range(min(n_rows, n_cols)))
    return SmithDecomposition(
        diag=diag,
        left=tuple(tuple(row) for row in left),
        right=tuple(tuple(row) for row in right),
    )


def invariant_factors(m: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """
    The invariant factors different from 1.
    """
    return smith_normal_form(m).nontrivial
