import random
from fractions import Fraction

import pytest

from k3b.kappa import (
    SurfaceParams,
    alpha_x_equals_vanishing,
    bx_invariants,
    det_compatible,
    fiber_consistency,
    fiber_degree,
    fm_count,
    glue_unimodular,
    kappa_pic,
    mukai_model,
    mukai_oracle_pic,
    overlattice_disc,
    theta_type,
    transcendental_index,
)
from k3b.lattice.matrix_utils import det


def _random_surfaces(seed: int, n: int):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        s = SurfaceParams(
            d=rng.randint(1, 5),
            p=rng.choice((2, 3, 5)),
            b=rng.randint(-10, 10),
            c=rng.randint(-10, 10),
        )
        if s.pic_x_det() < 0:
            out.append(s)
    return out


@pytest.mark.parametrize(
    "params,gram",
    [
        ((1, 2, 3, -1), ((2, 3), (3, -8))),
        ((2, 2, 1, -1), ((4, 1), (1, -8))),
        ((1, 2, 4, 0), ((2, 2), (2, 0))),
        ((1, 3, 3, -1), ((2, 1), (1, -2))),
        ((1, 3, 1, -1), ((2, 1), (1, -18))),
        ((3, 2, 1, -1), ((6, 1), (1, -8))),
        ((2, 3, 1, -1), ((4, 1), (1, -18))),
    ],
)
def test_kappa_pic_examples(params, gram):
    s = SurfaceParams(*params)
    assert kappa_pic(s).gram == gram
    assert mukai_oracle_pic(s).gram == gram


def test_kappa_pic_errors():
    with pytest.raises(ValueError, match="signature"):
        kappa_pic(SurfaceParams(1, 2, 1, 1))
    with pytest.raises(ValueError, match="not prime"):
        SurfaceParams(1, 4, 1, -1)
    with pytest.raises(ValueError, match="positive"):
        SurfaceParams(0, 2, 1, -1)


def test_mukai_model():
    s = SurfaceParams(1, 2, 3, -1)
    model = mukai_model(s)
    assert model.pair(model.v, model.v) == 0
    assert model.pair(model.alpha, model.v) == 0
    assert model.pair(model.gamma, model.v) == 0
    assert model.pair(model.alpha, model.alpha) == 2


def test_kappa_matches_mukai_oracle():
    for s in _random_surfaces(0, 1000):
        pic_s = kappa_pic(s)
        assert mukai_oracle_pic(s) == pic_s, s
        if s.b % s.p != 0:
            assert pic_s.det() == s.pic_x_det()
        else:
            assert s.p**2 * pic_s.det() == s.pic_x_det()


def test_det_compatible_matches_alpha_equality():
    for s in _random_surfaces(1, 300):
        assert det_compatible(s) == alpha_x_equals_vanishing(s)
        assert alpha_x_equals_vanishing(s) == (s.b % s.p != 0)


def test_alpha_x_equals_vanishing_examples():
    assert not alpha_x_equals_vanishing(SurfaceParams(1, 2, 4, 1))
    assert not alpha_x_equals_vanishing(SurfaceParams(1, 3, 3, -1))
    assert alpha_x_equals_vanishing(SurfaceParams(1, 2, 3, -1))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_bx_invariants(p):
    assert bx_invariants(p) == (Fraction(1, p), Fraction(0))


@pytest.mark.parametrize(
    "b,c,kind,equals_alpha_x,sum_parity",
    [
        (1, -1, "even_theta", True, None),
        (2, 0, "even_theta", False, None),
        (4, 1, "order_two_point", False, "odd"),
        (2, 1, "odd_theta", False, None),
        (4, 0, "order_two_point", False, "even"),
    ],
)
def test_theta_type(b, c, kind, equals_alpha_x, sum_parity):
    theta = theta_type(b, c)
    assert theta.kind == kind
    assert theta.equals_alpha_x == equals_alpha_x
    assert theta.sum_parity == sum_parity


def test_theta_type_partition():
    kinds = {theta_type(b, c).kind for b in range(-6, 7) for c in range(-6, 7)}
    assert kinds == {"order_two_point", "even_theta", "odd_theta"}
    for b in range(-6, 7, 2):
        for c in range(-3, 4):
            if b % 4 == 0:
                assert theta_type(b, c).sum_parity is not None


@pytest.mark.parametrize("d,p,degree", [(1, 2, 524800), (3, 2, 1049600), (2, 2, 1048576)])
def test_fiber_degree(d, p, degree):
    assert fiber_degree(d, p) == degree


@pytest.mark.parametrize("n,count", [(8, 1), (24, 2), (1, 1), (30, 4), (49, 1)])
def test_fm_count(n, count):
    assert fm_count(n) == count


def test_fm_count_errors():
    with pytest.raises(ValueError):
        fm_count(0)
    with pytest.raises(ValueError, match="positive"):
        fiber_degree(0, 2)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_fiber_consistency(p):
    for d in range(1, 13):
        assert fiber_consistency(d, p), (d, p)


def test_transcendental_index():
    assert transcendental_index(SurfaceParams(1, 2, 3, -1)) == 1
    assert transcendental_index(SurfaceParams(1, 2, 4, 0)) == 2
    for s in _random_surfaces(2, 200):
        assert transcendental_index(s) == (1 if s.b % s.p else s.p)


@pytest.mark.parametrize("p,d", [(2, 1), (3, 1), (2, 3), (5, 2)])
def test_overlattice_disc(p, d):
    form = overlattice_disc(p, d)
    assert form.cyclic_orders == (2 * d,)


@pytest.mark.parametrize("n", [2, 4, 6, 10])
def test_glue_unimodular(n):
    lattice = glue_unimodular(n)
    assert lattice.gram == ((n, 1), (1, 0))
    assert det(lattice.gram) == -1
    with pytest.raises(ValueError, match="even norm"):
        glue_unimodular(n + 1)
