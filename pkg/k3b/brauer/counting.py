"""
Counts of index-p sublattices of T(S) per lemma case: closed forms, finite
field point-count predictions at any unimodular Lambda' rank, and exhaustive
enumeration over toy ranks.
"""

import multiprocessing as mp
from collections import OrderedDict
from typing import Dict, List, Tuple

import numpy as np
from sympy import legendre_symbol

from k3b.brauer.alpha import LEMMA_CASES, _case_codes, is_k3_case
from k3b.common.core_utils import CacheHelper, check_prime, logger
from k3b.lattice.gram import LAMBDA_RANKS, check_unimodular_rank, lambda_prime
from k3b.lattice.matrix_utils import det
from k3b.logging import Logger

DEFAULT_ENUMERATION_BUDGET = 2**24
CHUNK_SIZE = 2**16

SPLIT = "split"
NONSPLIT = "nonsplit"


def table_cases(p: int, d: int) -> Tuple[str, ...]:
    if d % p != 0:
        return ("A_i", "A_ii", "A_iii")
    if p == 2:
        return ("B_i", "B_ii", "B_iii")
    return ("B_i", "B_ii", "B_iii", "B_iv")


def count_classes(p: int, d: int) -> Dict[str, int]:
    check_prime(p)
    if d < 1:
        raise ValueError(f"Degree parameter d must be positive, got {d}")
    if p == 2:
        if d % 2 == 1:
            vals = (2**20 - 1, 2**9 * (2**10 + 1), 2**9 * (2**10 - 1))
        else:
            vals = (2**9 * (2**10 + 1) - 1, 2**9 * (2**10 - 1), 2**20)
    elif d % p != 0:
        vals = (
            p**10 * (p**10 + 1) // 2,
            p**10 * (p**10 - 1) // 2,
            (p**20 - 1) // (p - 1),
        )
    else:
        vals = (
            p**9 * (p**10 - 1) // 2,
            p**9 * (p**10 - 1) // 2,
            (p**9 + 1) * (p**10 - 1) // (p - 1),
            p**20,
        )
    return OrderedDict(zip(table_cases(p, d), vals))


def count_table_json(p: int, counts: Dict[str, int]) -> List[Dict]:
    return [
        {"case": case, "count": str(n), "k3_type": is_k3_case(p, case)}
        for case, n in counts.items()
    ]


def quadric_count(p: int, k: int, value: int, form_type: str) -> int:
    """
    Number of x in F_p^{2k} with Q(x) = value for a nondegenerate quadratic
    form Q of the given type.
    """
    check_prime(p)
    if form_type not in (SPLIT, NONSPLIT):
        raise ValueError(f"Unknown form type {form_type}")
    if k == 0:
        return 1 if value % p == 0 else 0
    sgn = 1 if form_type == SPLIT else -1
    if value % p == 0:
        return p ** (2 * k - 1) + sgn * (p**k - p ** (k - 1))
    return p ** (2 * k - 1) - sgn * p ** (k - 1)


def lambda_form_type(p: int, rank: int) -> str:
    """
    Type of lambda -> lambda^2 / 2 mod p on the leading rank block of Lambda'.
    """
    check_unimodular_rank(rank)
    gram = lambda_prime(rank).gram
    k = rank // 2
    if p == 2:
        # U and E8 both reduce to plus type forms mod 2.
        return SPLIT
    sym = legendre_symbol(((-1) ** k * det(gram)) % p, p)
    return SPLIT if sym == 1 else NONSPLIT


def _finish(p: int, d: int, raw: np.ndarray) -> Dict[str, int]:
    raw = raw.copy()
    raw[int(_case_codes(p, d, 0, np.zeros(1))[0])] -= 1
    out = OrderedDict()
    for case in table_cases(p, d):
        n = int(raw[LEMMA_CASES.index(case)])
        if n % (p - 1) != 0:
            raise RuntimeError(f"Bucket {case} has {n} classes, not divisible by {p - 1}")
        out[case] = n // (p - 1)
    return out


def predicted_counts(p: int, d: int, rank: int = 20) -> Dict[str, int]:
    """
    Sublattice counts per case from point counts of lambda^2 / 2 over F_p. Needs a
    unimodular rank.
    """
    check_prime(p)
    form_type = lambda_form_type(p, rank)
    k = rank // 2
    raw = np.zeros(len(LEMMA_CASES), dtype=object)
    for i in range(p):
        for c in range(p):
            code = int(_case_codes(p, d, i, np.array([c]))[0])
            raw[code] += quadric_count(p, k, (-c) % p, form_type)
    return _finish(p, d, raw)


def _count_chunk(args) -> np.ndarray:
    p, d, rank, start, stop = args
    gram = np.array(lambda_prime(rank).gram, dtype=np.int64)
    idx = np.arange(start, stop, dtype=np.int64)
    if rank:
        lam = np.stack([(idx // p**j) % p for j in range(rank)], axis=1)
    else:
        lam = np.zeros((len(idx), 0), dtype=np.int64)
    norms = np.einsum("nj,jk,nk->n", lam, gram, lam)
    c = (-(norms // 2)) % p
    counts = np.zeros(len(LEMMA_CASES), dtype=np.int64)
    for i in range(p):
        counts += np.bincount(_case_codes(p, d, i, c), minlength=len(LEMMA_CASES))
    return counts


def brute_force_counts(
    p: int,
    d: int,
    toy_rank: int,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
    num_workers: int = 1,
    log_interval: int = 0,
    use_cached: bool = False,
) -> Dict[str, int]:
    """
    Classifies every nonzero (i, lambda) on Z t_S + Lambda'_{toy_rank} and
    returns the number of order-p subgroups in each case.

    :param budget: Upper bound on p^(toy_rank + 1), the number of parameters.
    :param num_workers: Processes used for the chunked sweep.
    :param log_interval: Print progress every this many chunks; 0 is silent.
    :param use_cached: Load the table from, or save it to, ./data/cache/counts.
    """
    check_prime(p)
    if d < 1:
        raise ValueError(f"Degree parameter d must be positive, got {d}")
    if toy_rank not in LAMBDA_RANKS:
        raise ValueError(
            f"Toy rank {toy_rank} must be even and at most 20, use one of {LAMBDA_RANKS}"
        )
    if budget <= 0:
        raise ValueError(f"Enumeration budget must be positive, got {budget}")
    required = p ** (toy_rank + 1)
    if required > budget:
        raise ValueError(
            f"Enumeration budget {budget} exceeded: p={p}, rank {toy_rank} needs {required}"
        )

    cache = None
    if use_cached:
        cache = CacheHelper(f"brute_force_{p}_{d}_{toy_rank}", rel_dir="counts")
        if cache.exists():
            return cache.load()

    total = p**toy_rank
    chunks = [
        (p, d, toy_rank, start, min(start + CHUNK_SIZE, total))
        for start in range(0, total, CHUNK_SIZE)
    ]
    progress = Logger(f"brute p={p} d={d} m={toy_rank}", log_interval=log_interval)
    raw = np.zeros(len(LEMMA_CASES), dtype=np.int64)
    processed = 0

    def consume(counts: np.ndarray, chunk_idx: int) -> None:
        nonlocal raw, processed
        raw += counts
        processed += int(counts.sum())
        progress.collect_infos(
            {LEMMA_CASES[code]: float(n) for code, n in enumerate(counts) if n},
            prefix="chunk/",
            no_rolling_window=True,
        )
        progress.interval_log(chunk_idx + 1, processed)

    if num_workers > 1 and len(chunks) > 1:
        ctx = mp.get_context("spawn")
        with ctx.Pool(num_workers) as pool:
            for chunk_idx, counts in enumerate(pool.imap(_count_chunk, chunks)):
                consume(counts, chunk_idx)
    else:
        for chunk_idx, args in enumerate(chunks):
            consume(_count_chunk(args), chunk_idx)
    progress.close()

    result = _finish(p, d, raw)
    if cache is not None:
        cache.save(result)
    logger.info(f"Brute force p={p} d={d} rank={toy_rank}: {dict(result)}")
    return result


def total_subgroups(p: int, rank: int) -> int:
    """
    Number of order-p subgroups of Hom(Z t_S + Lambda'_rank, Z/p).
    """
    return (p ** (rank + 1) - 1) // (p - 1)
