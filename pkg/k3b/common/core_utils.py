"""
Shared helpers: the package logger, exact rational helpers, JSON conversion
and an on-disk cache for expensive enumeration results.
"""

import hashlib
import logging
import os
import os.path as osp
import pickle
from fractions import Fraction
from typing import Any, Optional, Sequence, Tuple, Union

from sympy import isprime

logger = logging.getLogger("k3b")
logger.propagate = False
ch = logging.StreamHandler()
ch.setFormatter(
    logging.Formatter(
        "%(name)s-%(levelname)s-%(asctime)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )
)
logger.addHandler(ch)
logger.setLevel(logging.INFO)

Rational = Union[int, Fraction]
IntMatrix = Tuple[Tuple[int, ...], ...]


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not isprime(p):
        raise ValueError(f"{p} is not prime")
    return p


def frac_mod(x: Rational, modulus: Rational) -> Fraction:
    """
    Representative of `x` in [0, modulus).
    """
    return Fraction(x) % Fraction(modulus)


def as_int_matrix(m: Sequence[Sequence[Any]]) -> IntMatrix:
    """
    Converts nested sequences (including decimal strings) into a tuple matrix
    of Python integers.
    """
    rows = []
    for row in m:
        new_row = []
        for x in row:
            if isinstance(x, bool):
                raise ValueError(f"Matrix entry {x!r} is not an integer")
            if isinstance(x, str):
                x = int(x.strip())
            elif isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"Matrix entry {x} is not an integer")
                x = x.numerator
            else:
                x = int(x)
            new_row.append(x)
        rows.append(tuple(new_row))
    return tuple(rows)


def stringify_ints(obj: Any) -> Any:
    """
    Recursively renders integers as decimal strings and fractions as
    `[num, den]` string pairs so JSON consumers never parse big integers as
    floats. Booleans and None pass through unchanged.
    """
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return [str(obj.numerator), str(obj.denominator)]
    if isinstance(obj, dict):
        return {k: stringify_ints(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [stringify_ints(x) for x in obj]
    return obj


class CacheHelper:
    """
    Pickled results of an expensive computation, keyed by a name. Files live
    under CACHE_PATH/rel_dir and are written through a temporary file, so a
    reader either sees a finished pickle or none at all.
    """

    CACHE_PATH = "./data/cache"

    def __init__(self, cache_name: str, def_val: Optional[Any] = None, rel_dir: str = ""):
        self.cache_dir = osp.join(CacheHelper.CACHE_PATH, rel_dir)
        digest = hashlib.sha256(cache_name.encode("utf-8")).hexdigest()
        self.cache_id = osp.join(self.cache_dir, f"{digest}.pickle")
        self.cache_name = cache_name
        self.def_val = def_val

    def exists(self) -> bool:
        return osp.exists(self.cache_id)

    def load(self) -> Any:
        if not self.exists():
            return self.def_val
        try:
            with open(self.cache_id, "rb") as f:
                val = pickle.load(f)
        except (EOFError, pickle.UnpicklingError) as e:
            logger.warning(f"Dropping unreadable cache {self.cache_name} @ {self.cache_id}: {e}")
            return self.def_val
        logger.info(f"Loaded {self.cache_name} from {self.cache_id}")
        return val

    def save(self, val: Any) -> None:
        os.makedirs(self.cache_dir, exist_ok=True)
        tmp_path = f"{self.cache_id}.{os.getpid()}.tmp"
        with open(tmp_path, "wb") as f:
            pickle.dump(val, f)
        os.replace(tmp_path, self.cache_id)
        logger.info(f"Saved {self.cache_name} to {self.cache_id}")
