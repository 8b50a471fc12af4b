import itertools
import random
from fractions import Fraction
from math import gcd

import pytest

from k3b.brauer import (
    AlphaParam,
    TaggedRational,
    alpha_invariants,
    alpha_x,
    classify,
    theta_kind,
    vanishing_alpha,
    vanishing_invariants,
)
from k3b.brauer.alpha import EVEN_THETA, ODD_THETA, ORDER_TWO_POINT, c_alpha
from k3b.brauer.counting import table_cases


def _all_classes(p: int, d: int, rank: int):
    for i in range(p):
        for lam in itertools.product(range(p), repeat=rank):
            if i == 0 and not any(lam):
                continue
            yield AlphaParam(p, d, i, lam)


def _random_class(rng: random.Random, p: int, d: int, rank: int = 20) -> AlphaParam:
    while True:
        a = AlphaParam(p, d, rng.randrange(p), [rng.randrange(p) for _ in range(rank)])
        if not a.is_zero():
            return a


def test_alpha_param_reduces():
    a = AlphaParam(3, 1, 5, (4, -1))
    assert a.i_alpha == 2
    assert a.lam == (1, 2)
    assert a.scaled(2) == AlphaParam(3, 1, 1, (2, 1))
    assert a.functional() == (2, 2, 1)


def test_alpha_param_errors():
    with pytest.raises(ValueError, match="not prime"):
        AlphaParam(4, 1, 1, (0,) * 20)
    with pytest.raises(ValueError, match="positive"):
        AlphaParam(2, 0, 1, (0,) * 20)
    with pytest.raises(ValueError, match="length"):
        AlphaParam(2, 1, 1, (0,) * 3)
    with pytest.raises(ValueError, match="length"):
        AlphaParam(2, 1, 1, (0,) * 22)
    with pytest.raises(ValueError, match="not unimodular"):
        classify(AlphaParam(3, 1, 1, (0,) * 6), method="lattice")
    with pytest.raises(ValueError, match="zero class"):
        alpha_invariants(AlphaParam(2, 1, 0, (0,) * 20))
    with pytest.raises(ValueError, match="zero class"):
        classify(AlphaParam(3, 1, 0, (0,) * 20))
    with pytest.raises(ValueError, match="Unknown classify method"):
        classify(alpha_x(2, 1), method="guess")


def test_alpha_invariants_examples():
    inv = alpha_invariants(alpha_x(2, 1))
    assert inv.bh == Fraction(1, 2)
    assert inv.c_alpha == 0
    assert inv.bsq.is_zero()
    assert inv.disc_orders == (8,)

    lam = (1, 1) + (0,) * 18
    inv = alpha_invariants(AlphaParam(2, 1, 0, lam))
    assert inv.bh == 0
    assert inv.c_alpha == 1
    assert inv.qr_flag is None


def test_c_alpha_scales_quadratically():
    rng = random.Random(0)
    for p in (3, 5, 7):
        for _ in range(50):
            a = _random_class(rng, p, 1)
            u = rng.randrange(1, p)
            assert c_alpha(p, a.scaled(u).lam) == (u * u * c_alpha(p, a.lam)) % p


def test_bsq_modulus():
    # p odd and p | d, i = 0: B^2 is only defined mod (1/p)Z.
    inv = alpha_invariants(AlphaParam(3, 3, 0, (1, 1) + (0,) * 18), with_disc=False)
    assert inv.bsq.modulus == Fraction(1, 3)
    # p odd and p does not divide d: B^2 depends on the B-field.
    inv = alpha_invariants(AlphaParam(3, 1, 1, (0,) * 20), with_disc=False)
    assert inv.bsq.modulus is None
    assert inv.bsq.reduced() is None


@pytest.mark.parametrize(
    "a,case,k3,tag",
    [
        (AlphaParam(2, 1, 1, (0,) * 20), "A_ii", True, EVEN_THETA),
        (AlphaParam(2, 1, 1, (1, 1) + (0,) * 18), "A_iii", False, ODD_THETA),
        (AlphaParam(2, 1, 0, (1, 0) + (0,) * 18), "A_i", False, ORDER_TWO_POINT),
        (AlphaParam(2, 2, 1, (0,) * 20), "B_iii", True, None),
        (AlphaParam(2, 2, 0, (1, 0) + (0,) * 18), "B_i", False, None),
        (AlphaParam(2, 2, 0, (1, 1) + (0,) * 18), "B_ii", False, None),
        (AlphaParam(3, 1, 1, (0,) * 20), "A_i", True, None),
        (AlphaParam(3, 1, 0, (1, 0) + (0,) * 18), "A_iii", False, None),
        (AlphaParam(3, 1, 0, (1, 1) + (0,) * 18), "A_ii", False, None),
        (AlphaParam(3, 3, 1, (0,) * 20), "B_iv", True, None),
    ],
)
def test_classify_examples(a, case, k3, tag):
    label = classify(a)
    assert label.lemma_case == case
    assert label.k3_type == k3
    assert label.theta_tag == tag


def test_classify_even_theta_rule():
    # p = 2, d = 1, i = 1 and lambda^2 = 0 mod 4 is an even theta characteristic.
    rng = random.Random(1)
    for _ in range(50):
        a = _random_class(rng, 2, 1)
        a = AlphaParam(2, 1, 1, a.lam)
        label = classify(a)
        if c_alpha(2, a.lam) == 0:
            assert (label.lemma_case, label.k3_type, label.theta_tag) == ("A_ii", True, EVEN_THETA)
        else:
            assert label.theta_tag == ODD_THETA


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_parity_matches_lattice_toy_rank(d):
    for a in _all_classes(2, d, 4):
        assert classify(a, "parity") == classify(a, "lattice")


@pytest.mark.parametrize("d,seed", [(1, 2), (2, 3)])
def test_parity_matches_lattice_full_rank(d, seed):
    # 500 random classes per degree, 1000 in all.
    rng = random.Random(seed)
    for _ in range(500):
        a = _random_class(rng, 2, d)
        assert classify(a, "parity") == classify(a, "lattice"), a


@pytest.mark.parametrize("p,d,rank", [(3, 1, 2), (3, 2, 2), (3, 3, 2), (3, 6, 2), (5, 1, 2), (5, 5, 2), (3, 1, 4)])
def test_invariants_match_lattice(p, d, rank):
    for a in _all_classes(p, d, rank):
        assert classify(a, "invariants") == classify(a, "lattice"), a


@pytest.mark.parametrize("p", [3, 5])
def test_classify_scale_invariance(p):
    for d in (1, p):
        for a in _all_classes(p, d, 2):
            label = classify(a, "lattice")
            for u in range(2, p):
                assert classify(a.scaled(u), "lattice") == label


def test_classify_scale_invariance_random():
    rng = random.Random(3)
    for _ in range(100):
        a = _random_class(rng, 3, 1)
        assert classify(a, "invariants") == classify(a.scaled(2), "invariants")


def test_vanishing_invariants():
    for c in range(-3, 4):
        bh, bsq = vanishing_invariants(2, 3, c)
        assert bh == Fraction(1, 2)
        assert bsq.reduced() == Fraction(c, 2) % 1
    bh, _ = vanishing_invariants(3, 3, 1)
    assert bh == 0
    bh, bsq = vanishing_invariants(2, 4, 1)
    assert bh == 0
    assert bsq.reduced() == Fraction(1, 2)
    assert vanishing_alpha(3, 1, 2) == (2, 1)


def test_theta_kind():
    assert theta_kind(Fraction(0), Fraction(1, 2)) == ORDER_TWO_POINT
    assert theta_kind(Fraction(1, 2), TaggedRational(Fraction(-2), Fraction(1))) == EVEN_THETA
    assert theta_kind(Fraction(1, 2), Fraction(1, 2)) == ODD_THETA


def test_toy_rank_classes():
    a = AlphaParam(3, 1, 0, (1, 1, 0, 0, 1, 0))
    assert a.rank == 6
    assert a.functional()[0] == 0
    # auto falls back to the invariants rule off the unimodular ranks.
    assert classify(a) == classify(a, "invariants")
    assert alpha_invariants(a).disc_orders
    b = AlphaParam(2, 1, 1, (0,) * 8)
    assert classify(b) == classify(alpha_x(2, 1))


def _disc_shape(p: int, d: int, case: str):
    """
    Invariant factors of the kernel discriminant group in each lemma case.
    """
    cyclic = (2 * p * p * d,)
    if p == 2:
        split = (2, 2, 2 * d)
        shapes = {"A_i": split, "A_ii": cyclic, "A_iii": cyclic, "B_i": split, "B_ii": split, "B_iii": cyclic}
        return shapes[case]
    if d % p != 0:
        return {"A_i": cyclic, "A_ii": cyclic, "A_iii": (p, 2 * d * p)}[case]
    # Z/2d + Z/p^2 in invariant factor form.
    g = gcd(2 * d, p * p)
    two_factors = (g, 2 * d * p * p // g)
    return {"B_i": two_factors, "B_ii": two_factors, "B_iii": (p, p, 2 * d), "B_iv": cyclic}[case]


@pytest.mark.parametrize(
    "p,d,rank",
    [(2, 1, 4), (2, 3, 4), (2, 2, 4), (2, 4, 4), (3, 1, 4), (3, 2, 4), (3, 3, 4), (5, 1, 2), (5, 5, 2)],
)
def test_disc_shapes_per_case(p, d, rank):
    seen = set()
    for a in _all_classes(p, d, rank):
        case = classify(a, "invariants").lemma_case
        seen.add(case)
        assert alpha_invariants(a).disc_orders == _disc_shape(p, d, case), (a, case)
    assert seen == set(table_cases(p, d))
