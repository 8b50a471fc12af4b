from typing import Sequence

from k3b.common.core_utils import IntMatrix, check_prime
from k3b.lattice.gram import GramLattice


def kernel_basis(f: Sequence[int], p: int) -> IntMatrix:
    """
    Rows of a basis of {x : f . x = 0 mod p} in Z^n. With k a coordinate where
    f is a unit, row k is p e_k and row j is e_j - (f_j / f_k mod p) e_k.
    """
    check_prime(p)
    f = [x % p for x in f]
    k = next((i for i, x in enumerate(f) if x != 0), None)
    if k is None:
        raise ValueError("trivial functional: f vanishes mod p")
    inv = pow(f[k], -1, p)
    n = len(f)
    rows = []
    for j in range(n):
        row = [0] * n
        if j == k:
            row[k] = p
        else:
            row[j] = 1
            row[k] = -((f[j] * inv) % p)
        rows.append(tuple(row))
    return tuple(rows)


def kernel_sublattice(lattice: GramLattice, f: Sequence[int], p: int) -> GramLattice:
    if len(f) != lattice.rank:
        raise ValueError(
            f"Functional has {len(f)} coordinates, lattice has rank {lattice.rank}"
        )
    return lattice.transform(kernel_basis(f, p))
