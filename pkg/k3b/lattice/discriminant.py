"""
Discriminant groups L^*/L of even lattices together with their finite
quadratic forms, and the orthogonal groups of those forms.
"""

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterator, List, Sequence, Tuple, Union

from k3b.common.core_utils import IntMatrix, Rational, frac_mod, stringify_ints
from k3b.lattice.gram import GramLattice
from k3b.lattice.matrix_utils import bilinear, mat_mul, transpose, vec_mat
from k3b.lattice.snf import smith_normal_form

DEFAULT_DISC_ENUM_BOUND = 10**6

FracMatrix = Tuple[Tuple[Fraction, ...], ...]
# Cyclic case: unit multiplier. Two generators: images of the generators as
# coordinate rows.
DiscAutomorphism = Union[int, Tuple[Tuple[int, int], Tuple[int, int]]]


@dataclass(frozen=True)
class FiniteQuadForm:
    """
    :param cyclic_orders: Orders of the generators, each dividing the next.
    :param q_matrix: Exact values q(g_i) on the diagonal (read mod 2) and
        b(g_i, g_j) off the diagonal (read mod 1). Values are stored as
        computed, never reduced.
    :param generators: Rational coordinate rows of the generators in the
        basis of the source lattice.
    :param log_rows: Rows of the Smith left transform belonging to the
        generators. Used to write a dual vector in generator coordinates.
    """

    cyclic_orders: Tuple[int, ...]
    q_matrix: FracMatrix
    generators: Tuple[Tuple[Fraction, ...], ...] = field(default=(), compare=False)
    log_rows: IntMatrix = field(default=(), compare=False)
    source_gram: IntMatrix = field(default=(), compare=False)

    @property
    def order(self) -> int:
        out = 1
        for n in self.cyclic_orders:
            out *= n
        return out

    @property
    def num_generators(self) -> int:
        return len(self.cyclic_orders)

    def is_cyclic(self) -> bool:
        return self.num_generators <= 1

    def value(self, coords: Sequence[int]) -> Fraction:
        """
        q of the element sum_i coords[i] g_i, in [0, 2).
        """
        total = Fraction(0)
        n = self.num_generators
        for i in range(n):
            total += coords[i] * coords[i] * self.q_matrix[i][i]
            for j in range(i + 1, n):
                total += 2 * coords[i] * coords[j] * self.q_matrix[i][j]
        return frac_mod(total, 2)

    def bilinear(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        n = self.num_generators
        total = sum(
            x[i] * y[j] * self.q_matrix[i][j] for i in range(n) for j in range(n)
        )
        return frac_mod(total, 1)

    def elements(self) -> Iterator[Tuple[int, ...]]:
        return itertools.product(*[range(n) for n in self.cyclic_orders])

    def value_multiset(self) -> Counter:
        return Counter(self.value(x) for x in self.elements())

    def q_of(self, vector: Sequence[Rational]) -> Fraction:
        """
        q of a dual vector given in coordinates of the source lattice.
        """
        return frac_mod(bilinear(vector, self.source_gram, vector), 2)

    def log(self, vector: Sequence[Rational]) -> Tuple[int, ...]:
        """
        Coordinates of the class of a dual vector with respect to the generators.
        """
        z = vec_mat(vector, self.source_gram)
        for x in z:
            if Fraction(x).denominator != 1:
                raise ValueError(f"Vector {tuple(vector)} is not in the dual lattice")
        z = [int(x) for x in z]
        return tuple(
            sum(r * zz for r, zz in zip(row, z)) % n
            for row, n in zip(self.log_rows, self.cyclic_orders)
        )

    def to_json(self):
        return {
            "orders": [str(n) for n in self.cyclic_orders],
            "q": [[stringify_ints(Fraction(x)) for x in row] for row in self.q_matrix],
        }


def disc_form(lattice: GramLattice) -> FiniteQuadForm:
    gram = lattice.gram
    snf = smith_normal_form(gram)
    if any(x == 0 for x in snf.diag):
        raise ValueError("singular lattice: discriminant form needs det != 0")

    idx = [i for i, x in enumerate(snf.diag) if x != 1]
    right_t = transpose(snf.right)
    gens = tuple(
        tuple(Fraction(x, snf.diag[i]) for x in right_t[i]) for i in idx
    )
    q_matrix = tuple(
        tuple(Fraction(bilinear(gi, gram, gj)) for gj in gens) for gi in gens
    )
    return FiniteQuadForm(
        cyclic_orders=tuple(snf.diag[i] for i in idx),
        q_matrix=q_matrix,
        generators=gens,
        log_rows=tuple(snf.left[i] for i in idx),
        source_gram=gram,
    )


def units(n: int) -> List[int]:
    return [u for u in range(1, n + 1) if gcd(u, n) == 1] if n > 1 else [1]


def cyclic_forms_isomorphic(f: FiniteQuadForm, g: FiniteQuadForm) -> bool:
    """
    Two cyclic forms of the same order are isomorphic iff some unit rescales
    one generator value into the other.
    """
    if f.cyclic_orders != g.cyclic_orders:
        return False
    if f.num_generators == 0:
        return True
    if f.num_generators > 1:
        raise ValueError("use matrix action: forms are not cyclic")
    qf, qg = f.q_matrix[0][0], g.q_matrix[0][0]
    return any((u * u * qf - qg) % 2 == 0 for u in units(f.cyclic_orders[0]))


def _check_bound(form: FiniteQuadForm, bound: int) -> None:
    if form.order > bound:
        raise ValueError(
            f"enumeration limit: discriminant group of order {form.order} exceeds bound {bound}"
        )


def _generates(rows: Sequence[Sequence[int]], orders: Sequence[int]) -> bool:
    n1, n2 = orders
    relations = [list(r) for r in rows] + [[n1, 0], [0, n2]]
    return all(x == 1 for x in smith_normal_form(relations).diag)


def disc_orthogonal_group(
    form: FiniteQuadForm, bound: int = DEFAULT_DISC_ENUM_BOUND
) -> List[DiscAutomorphism]:
    """
    All automorphisms of the discriminant group preserving q. The trivial
    group has the single automorphism 1.
    """
    _check_bound(form, bound)
    if form.num_generators == 0:
        return [1]
    if form.num_generators == 1:
        n = form.cyclic_orders[0]
        q = form.q_matrix[0][0]
        return [u for u in units(n) if (u * u * q - q) % 2 == 0]
    if form.num_generators > 2:
        raise ValueError(
            f"enumeration limit: {form.num_generators} generators, at most two are supported"
        )

    n1, n2 = form.cyclic_orders
    q11, q22 = frac_mod(form.q_matrix[0][0], 2), frac_mod(form.q_matrix[1][1], 2)
    b12 = frac_mod(form.q_matrix[0][1], 1)
    elements = list(form.elements())
    # Image of g1 must be killed by n1 and keep q(g1); same for g2.
    first = [x for x in elements if (n1 * x[1]) % n2 == 0 and form.value(x) == q11]
    second = [x for x in elements if form.value(x) == q22]
    out = []
    for x in first:
        for y in second:
            if form.bilinear(x, y) != b12:
                continue
            if _generates((x, y), (n1, n2)):
                out.append((tuple(x), tuple(y)))
    return out


def compose(
    form: FiniteQuadForm, first: DiscAutomorphism, second: DiscAutomorphism
) -> DiscAutomorphism:
    """
    Apply `first`, then `second` (right action on coordinate rows).
    """
    if form.num_generators <= 1:
        n = form.cyclic_orders[0] if form.cyclic_orders else 1
        return (first * second) % n if n > 1 else 1
    n1, n2 = form.cyclic_orders
    prod = mat_mul(first, second)
    return tuple((row[0] % n1, row[1] % n2) for row in prod)


def closure(
    form: FiniteQuadForm, gens: Sequence[DiscAutomorphism]
) -> List[DiscAutomorphism]:
    """
    The subgroup of the discriminant orthogonal group generated by `gens`.
    """
    one: DiscAutomorphism = 1 if form.num_generators <= 1 else ((1, 0), (0, 1))
    seen = {one}
    frontier = [one]
    while frontier:
        new_frontier = []
        for x in frontier:
            for g in gens:
                y = compose(form, x, g)
                if y not in seen:
                    seen.add(y)
                    new_frontier.append(y)
        frontier = new_frontier
    return sorted(seen)
