import itertools

import pytest

from k3b.brauer import brute_force_counts, count_classes, predicted_counts, quadric_count
from k3b.brauer.alpha import AlphaParam, classify
from k3b.brauer.counting import NONSPLIT, SPLIT, lambda_form_type, table_cases, total_subgroups
from k3b.common.core_utils import CacheHelper


@pytest.mark.parametrize(
    "p,d,expected",
    [
        (2, 1, {"A_i": 1048575, "A_ii": 524800, "A_iii": 523776}),
        (2, 3, {"A_i": 1048575, "A_ii": 524800, "A_iii": 523776}),
        (2, 2, {"B_i": 524799, "B_ii": 523776, "B_iii": 1048576}),
    ],
)
def test_count_classes_examples(p, d, expected):
    assert dict(count_classes(p, d)) == expected


def test_count_classes_odd_prime():
    counts = count_classes(3, 1)
    assert counts["A_i"] == 1743421725
    assert list(counts) == ["A_i", "A_ii", "A_iii"]
    assert list(count_classes(3, 3)) == ["B_i", "B_ii", "B_iii", "B_iv"]


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_count_classes_total(p):
    for d in (1, p, 2 * p + 1):
        assert sum(count_classes(p, d).values()) == total_subgroups(p, 20)


def test_count_classes_errors():
    with pytest.raises(ValueError, match="not prime"):
        count_classes(4, 1)
    with pytest.raises(ValueError, match="positive"):
        count_classes(2, 0)


def test_quadric_count_examples():
    assert quadric_count(2, 1, 0, SPLIT) == 3
    assert quadric_count(2, 10, 0, SPLIT) == 524800
    assert quadric_count(3, 0, 0, SPLIT) == 1
    assert quadric_count(3, 0, 1, SPLIT) == 0
    with pytest.raises(ValueError, match="Unknown form type"):
        quadric_count(3, 1, 0, "mixed")


def test_quadric_count_enumeration():
    # x1 x2 + x3 x4 over F_3.
    p = 3
    counts = [0] * p
    for x in itertools.product(range(p), repeat=4):
        counts[(x[0] * x[1] + x[2] * x[3]) % p] += 1
    for value in range(p):
        assert quadric_count(p, 2, value, SPLIT) == counts[value]
    # x1^2 + x2^2 is anisotropic over F_3.
    counts = [0] * p
    for x in itertools.product(range(p), repeat=2):
        counts[(x[0] ** 2 + x[1] ** 2) % p] += 1
    for value in range(p):
        assert quadric_count(p, 1, value, NONSPLIT) == counts[value]


@pytest.mark.parametrize("p,k", [(2, 1), (3, 2), (5, 3), (7, 10)])
def test_quadric_count_sums(p, k):
    for form_type in (SPLIT, NONSPLIT):
        assert sum(quadric_count(p, k, v, form_type) for v in range(p)) == p ** (2 * k)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_lambda_form_type_split(p):
    for rank in (2, 4, 20):
        assert lambda_form_type(p, rank) == SPLIT


@pytest.mark.parametrize(
    "p,d,expected",
    [
        (2, 1, {"A_i": 3, "A_ii": 3, "A_iii": 1}),
        (2, 2, {"B_i": 2, "B_ii": 1, "B_iii": 4}),
        (3, 1, {"A_i": 6, "A_ii": 3, "A_iii": 4}),
    ],
)
def test_brute_force_toy_rank(p, d, expected):
    assert dict(brute_force_counts(p, d, 2)) == expected


@pytest.mark.parametrize("p,d,rank", [(3, 1, 2), (3, 3, 4), (5, 1, 2), (5, 2, 4), (5, 5, 2), (2, 1, 12), (2, 2, 12)])
def test_brute_force_matches_prediction(p, d, rank):
    brute = brute_force_counts(p, d, rank)
    assert brute == predicted_counts(p, d, rank)
    assert list(brute) == list(table_cases(p, d))
    assert sum(brute.values()) == total_subgroups(p, rank)


@pytest.mark.parametrize("d", [1, 2])
def test_brute_force_full_rank(d):
    assert brute_force_counts(2, d, 20, budget=2**21) == count_classes(2, d)


def test_brute_force_workers_and_logging():
    serial = brute_force_counts(2, 1, 12)
    assert brute_force_counts(2, 1, 12, num_workers=2, log_interval=1) == serial


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_predicted_counts_full_rank(p):
    for d in (1, p):
        assert predicted_counts(p, d) == count_classes(p, d)


def test_brute_force_errors():
    with pytest.raises(ValueError, match="budget"):
        brute_force_counts(2, 1, 2, budget=4)
    with pytest.raises(ValueError, match="even and at most 20"):
        brute_force_counts(2, 1, 5)
    with pytest.raises(ValueError, match="even and at most 20"):
        brute_force_counts(2, 1, 22)
    with pytest.raises(ValueError, match="not unimodular"):
        predicted_counts(3, 1, 6)
    with pytest.raises(ValueError, match="positive"):
        brute_force_counts(3, 0, 2)


@pytest.mark.parametrize("p,d,rank", [(3, 1, 6), (3, 3, 6), (2, 1, 8), (2, 2, 8)])
def test_brute_force_non_unimodular_rank(p, d, rank):
    counts = brute_force_counts(p, d, rank)
    assert list(counts) == list(table_cases(p, d))
    assert sum(counts.values()) == total_subgroups(p, rank)

    # Classify one generator of every subgroup on its own.
    expected = {case: 0 for case in table_cases(p, d)}
    for i, *lam in itertools.product(range(p), repeat=rank + 1):
        first = next((x for x in (i, *lam) if x), 0)
        if first != 1:
            continue
        expected[classify(AlphaParam(p, d, i, tuple(lam))).lemma_case] += 1
    assert dict(counts) == expected


def test_brute_force_cache(tmp_path, monkeypatch):
    monkeypatch.setattr(CacheHelper, "CACHE_PATH", str(tmp_path))
    fresh = brute_force_counts(3, 1, 4, use_cached=True)
    cached_files = list((tmp_path / "counts").glob("*.pickle"))
    assert len(cached_files) == 1
    assert brute_force_counts(3, 1, 4, use_cached=True) == fresh
    assert fresh == brute_force_counts(3, 1, 4)

    # Cached tables are read back without a new sweep.
    CacheHelper("brute_force_3_1_4", rel_dir="counts").save({"A_i": -1})
    assert brute_force_counts(3, 1, 4, use_cached=True) == {"A_i": -1}
    assert brute_force_counts(3, 1, 4) == fresh


def test_cache_helper_unreadable(tmp_path, monkeypatch):
    monkeypatch.setattr(CacheHelper, "CACHE_PATH", str(tmp_path))
    cache = CacheHelper("half_written", def_val="missing")
    assert not cache.exists()
    assert cache.load() == "missing"
    with open(cache.cache_id, "wb") as f:
        f.write(b"")
    assert cache.exists()
    assert cache.load() == "missing"
