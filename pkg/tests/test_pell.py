from math import isqrt

import pytest

from k3b.forms import fundamental_solution, fundamental_unit, pell_pm
from k3b.forms.pell import minimal_solution


def _brute_pell(D: int, N: int, max_s: int = 1000):
    """
    Least (s, r) over s <= max_s and both signs, as (r, s, sign).
    """
    best = None
    for s in range(max_s + 1):
        for sign in (1, -1):
            rhs = D * s * s + sign * N
            if rhs < 0:
                continue
            r = isqrt(rhs)
            if r * r == rhs:
                cand = (s, r, -sign)
                if best is None or cand < best:
                    best = cand
        if best is not None:
            break
    if best is None:
        return None
    s, r, neg_sign = best
    return r, s, -neg_sign


@pytest.mark.parametrize(
    "D,N,witness,sign",
    [
        (1, 8, (3, 1), 1),
        (9, 8, (1, 1), -1),
        (0, 4, (2, 0), 1),
        (2, 1, (1, 0), 1),
        (2, 7, (3, 1), 1),
    ],
)
def test_pell_examples(D, N, witness, sign):
    result = pell_pm(D, N)
    assert result.solvable
    assert result.witness == witness
    assert result.sign == sign
    r, s = result.witness
    assert r * r - D * s * s == sign * N


def test_pell_d1_both_signs():
    result = pell_pm(1, 8)
    assert result.plus == (3, 1)
    assert result.minus == (1, 3)
    assert result.to_json() == {"solvable": True, "r": "3", "s": "1", "sign": "+"}


@pytest.mark.parametrize("m", range(5, 22, 2))
def test_pell_square_family_unsolvable(m):
    result = pell_pm(m * m, 8)
    assert not result.solvable
    assert result.witness is None
    assert result.to_json()["sign"] is None


def test_pell_errors():
    with pytest.raises(ValueError):
        pell_pm(5, 0)
    with pytest.raises(ValueError):
        minimal_solution(-1, 4)


@pytest.mark.parametrize("N", [1, 4, 8])
def test_pell_brute_force(N):
    for D in range(0, 401):
        result = pell_pm(D, N)
        brute = _brute_pell(D, N)
        if brute is not None:
            assert result.solvable, f"D={D}, N={N}"
            assert result.witness == brute[:2], f"D={D}, N={N}"
            assert result.sign == brute[2]
        elif result.solvable:
            # Only allowed when the least solution lies beyond the brute force box.
            assert result.witness[1] > 1000, f"D={D}, N={N}"


@pytest.mark.parametrize("D,sol", [(2, (3, 2)), (3, (2, 1)), (13, (649, 180)), (61, (1766319049, 226153980))])
def test_fundamental_solution(D, sol):
    assert fundamental_solution(D) == sol


@pytest.mark.parametrize("D,unit", [(5, (3, 1)), (33, (46, 8)), (13, (11, 3))])
def test_fundamental_unit(D, unit):
    assert fundamental_unit(D) == unit
    with pytest.raises(ValueError):
        fundamental_solution(9)
