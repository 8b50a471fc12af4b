"""
Generalized Pell equations r^2 - D s^2 = n.

Nonsquare D: sympy's `diop_DN` supplies one solution in every class, each
class is an orbit under the fundamental solution of x^2 - D y^2 = 1, and |s|
along an orbit is unimodal, so stepping while |s| strictly drops reaches the
class minimum. Square D = m^2 splits as (r - ms)(r + ms) = n.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Any, Dict, List, Optional, Tuple

from sympy import continued_fraction_periodic, divisors
from sympy.solvers.diophantine.diophantine import diop_DN

Pair = Tuple[int, int]


@dataclass(frozen=True)
class PellResult:
    """
    :param solvable: Whether r^2 - D s^2 = +N or = -N has an integer solution.
    :param witness: Minimal (r, s) over both signs, ordered by (|s|, |r|),
        with nonnegative entries. Ties prefer +N.
    :param sign: +1 or -1, the sign of N attained by the witness.
    :param plus: Minimal solution of the +N equation, if any.
    :param minus: Minimal solution of the -N equation, if any.
    """

    D: int
    N: int
    solvable: bool
    witness: Optional[Pair] = None
    sign: Optional[int] = None
    plus: Optional[Pair] = None
    minus: Optional[Pair] = None

    def to_json(self) -> Dict[str, Any]:
        r, s = self.witness if self.witness is not None else (None, None)
        return {
            "solvable": self.solvable,
            "r": None if r is None else str(r),
            "s": None if s is None else str(s),
            "sign": None if self.sign is None else ("+" if self.sign > 0 else "-"),
        }


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def _key(pair: Pair) -> Tuple[int, int]:
    return (abs(pair[1]), abs(pair[0]))


@lru_cache(maxsize=None)
def fundamental_solution(D: int) -> Pair:
    """
    Least (x, y) with y > 0 and x^2 - D y^2 = 1, read off the convergents of
    the continued fraction of sqrt(D).
    """
    if D <= 0 or _is_square(D):
        raise ValueError(f"D = {D} must be a positive nonsquare")
    a0, period = continued_fraction_periodic(0, 1, D)
    h_prev, h = 1, int(a0)
    k_prev, k = 0, 1
    i = 0
    while h * h - D * k * k != 1:
        a = int(period[i % len(period)])
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        i += 1
    return h, k


def _step(pair: Pair, unit: Pair, D: int, power: int) -> Pair:
    r, s = pair
    x, y = unit
    y = y * power
    return r * x + D * s * y, r * y + s * x


def _class_minimum(pair: Pair, D: int) -> Pair:
    unit = fundamental_solution(D)
    best = pair
    for power in (1, -1):
        cur = pair
        while True:
            nxt = _step(cur, unit, D, power)
            if abs(nxt[1]) >= abs(cur[1]):
                break
            cur = nxt
        if _key(cur) < _key(best):
            best = cur
    return abs(best[0]), abs(best[1])


def _class_representatives(D: int, n: int) -> List[Pair]:
    return [(int(r), int(s)) for r, s in diop_DN(D, n)]


def minimal_solution(D: int, n: int) -> Optional[Pair]:
    """
    Solution of r^2 - D s^2 = n with r, s >= 0 minimal by (s, r), or None.
    """
    if D < 0:
        raise ValueError(f"D = {D} must be nonnegative")
    if D == 0:
        return (isqrt(n), 0) if _is_square(n) else None
    if n == 0:
        return (0, 0)
    candidates: List[Pair] = []
    if _is_square(D):
        m = isqrt(D)
        for d in divisors(abs(n)):
            for d1 in (d, -d):
                d2 = n // d1
                if (d1 + d2) % 2 != 0 or (d2 - d1) % (2 * m) != 0:
                    continue
                candidates.append((abs((d1 + d2) // 2), abs((d2 - d1) // (2 * m))))
    else:
        candidates = [_class_minimum(x, D) for x in _class_representatives(D, n)]
    candidates = [x for x in candidates if x[0] ** 2 - D * x[1] ** 2 == n]
    if not candidates:
        return None
    return min(candidates, key=_key)


def pell_pm(D: int, N: int) -> PellResult:
    """
    Decides r^2 - D s^2 = +N and = -N.
    """
    if N <= 0:
        raise ValueError(f"N = {N} must be positive")
    plus = minimal_solution(D, N)
    minus = minimal_solution(D, -N)
    options = [(x, sgn) for x, sgn in ((plus, 1), (minus, -1)) if x is not None]
    if not options:
        return PellResult(D=D, N=N, solvable=False)
    witness, sign = min(options, key=lambda o: (_key(o[0]), -o[1]))
    r, s = witness
    if r * r - D * s * s != sign * N:
        raise RuntimeError(f"Pell witness {witness} fails for D={D}, N={sign * N}")
    return PellResult(
        D=D, N=N, solvable=True, witness=witness, sign=sign, plus=plus, minus=minus
    )


@lru_cache(maxsize=None)
def fundamental_unit(D: int) -> Pair:
    """
    Least (t, u) with u > 0 and t^2 - D u^2 = 4, for nonsquare D > 0.
    """
    x1, y1 = fundamental_solution(D)
    best = (2 * x1, 2 * y1)
    for rep in _class_representatives(D, 4):
        t, u = _class_minimum(rep, D)
        if 0 < u < best[1]:
            best = (t, u)
    t, u = best
    if t * t - D * u * u != 4:
        raise RuntimeError(f"Unit {best} fails t^2 - {D} u^2 = 4")
    return best
