from dataclasses import dataclass
from functools import lru_cache
from typing import Any, List, Sequence

from k3b.common.core_utils import IntMatrix, Rational, as_int_matrix, stringify_ints
from k3b.lattice.matrix_utils import bilinear, block_diag, congruence, det, neg

# Standard E8 Cartan matrix; node 8 hangs off node 3.
E8_CARTAN: IntMatrix = (
    (2, -1, 0, 0, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0, 0, 0),
    (0, -1, 2, -1, 0, 0, 0, -1),
    (0, 0, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, 0),
    (0, 0, -1, 0, 0, 0, 0, 2),
)

HYPERBOLIC_PLANE: IntMatrix = ((0, 1), (1, 0))

# Every leading block of U + U + E8(-1) + E8(-1) has even rank at most 20.
LAMBDA_RANKS = tuple(range(0, 21, 2))
# The leading blocks that are unimodular.
UNIMODULAR_LAMBDA_RANKS = (0, 2, 4, 12, 20)


@dataclass(frozen=True)
class GramLattice:
    """
    An even integral lattice given by its Gram matrix in a fixed basis.
    Degenerate Gram matrices are allowed to exist; operations that need a
    nondegenerate form check it themselves.
    """

    gram: IntMatrix

    def __post_init__(self):
        gram = as_int_matrix(self.gram)
        object.__setattr__(self, "gram", gram)
        n = len(gram)
        for i, row in enumerate(gram):
            if len(row) != n:
                raise ValueError(f"Gram matrix must be square, row {i} has length {len(row)}")
        for i in range(n):
            if gram[i][i] % 2 != 0:
                raise ValueError(f"Lattice is not even: diagonal entry {gram[i][i]}")
            for j in range(i + 1, n):
                if gram[i][j] != gram[j][i]:
                    raise ValueError("Gram matrix is not symmetric")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def det(self) -> int:
        return det(self.gram)

    def is_degenerate(self) -> bool:
        return self.det() == 0

    def pair(self, x: Sequence[Rational], y: Sequence[Rational]) -> Rational:
        return bilinear(x, self.gram, y)

    def norm(self, x: Sequence[Rational]) -> Rational:
        return self.pair(x, x)

    def transform(self, u: Sequence[Sequence[int]]) -> "GramLattice":
        """
        Gram matrix of the lattice in the basis given by the rows of `u`.
        """
        return GramLattice(congruence(as_int_matrix(u), self.gram))

    def scaled(self, k: int) -> "GramLattice":
        return GramLattice(tuple(tuple(k * x for x in row) for row in self.gram))

    def to_json(self) -> List[List[str]]:
        return stringify_ints(self.gram)

    @classmethod
    def from_json(cls, data: Any) -> "GramLattice":
        return cls(as_int_matrix(data))

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.gram) + "]"


def direct_sum(*lattices: GramLattice) -> GramLattice:
    return GramLattice(block_diag(*[L.gram for L in lattices if L.rank > 0]))


def rank_one(n: int) -> GramLattice:
    return GramLattice(((n,),))


def hyperbolic_plane() -> GramLattice:
    return GramLattice(HYPERBOLIC_PLANE)


def e8_lattice(negate: bool = True) -> GramLattice:
    if negate:
        return GramLattice(neg(E8_CARTAN))
    return GramLattice(E8_CARTAN)


@lru_cache(maxsize=None)
def lambda_prime(rank: int = 20) -> GramLattice:
    """
    Leading `rank` x `rank` block of U + U + E8(-1) + E8(-1), the orthogonal
    complement of the hyperbolic plane containing the polarization. Only the
    ranks in UNIMODULAR_LAMBDA_RANKS cut along whole summands, the others are
    toy lattices with a nontrivial discriminant group.
    """
    if rank not in LAMBDA_RANKS:
        raise ValueError(f"Rank {rank} block of Lambda' must be even and at most 20, got {rank}")
    if rank == 0:
        return GramLattice(())
    full = direct_sum(hyperbolic_plane(), hyperbolic_plane(), e8_lattice(), e8_lattice())
    return GramLattice(tuple(row[:rank] for row in full.gram[:rank]))


def check_unimodular_rank(rank: int) -> None:
    if rank not in UNIMODULAR_LAMBDA_RANKS:
        raise ValueError(
            f"Rank {rank} block of Lambda' is not unimodular, use one of {UNIMODULAR_LAMBDA_RANKS}"
        )


def k3_lattice() -> GramLattice:
    return direct_sum(hyperbolic_plane(), lambda_prime(20))


def transcendental_model(d: int, rank: int = 20) -> GramLattice:
    """
    T(S) = Z t_S + Lambda'_rank with t_S^2 = -2d, first basis vector t_S.
    """
    if d < 1:
        raise ValueError(f"Degree parameter d must be positive, got {d}")
    return direct_sum(rank_one(-2 * d), lambda_prime(rank))
