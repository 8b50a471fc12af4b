import time
from collections import defaultdict, deque
from typing import Any, Dict, Set

import numpy as np

from k3b.common.core_utils import logger


class Logger:
    """
    Progress reporting for long enumerations. Values are buffered with
    `collect_info` and flushed together with a vectors-per-second rate by
    `interval_log`.
    """

    def __init__(self, run_name: str = "", smooth_len: int = 1, log_interval: int = 1):
        """
        :param run_name: Prefix shown on every progress line.
        :param smooth_len: Number of collected values averaged per key.
        :param log_interval: Only every `log_interval`-th call to
            `interval_log` prints. 0 disables printing entirely.
        """
        self.run_name = run_name
        self.log_interval = log_interval
        self._step_log_info = defaultdict(lambda: deque(maxlen=smooth_len))

        self.is_printing = log_interval > 0
        self.prev_steps = 0
        self.start = time.time()
        self._clear_keys: Set[str] = set()
        self._num_calls = 0
        self.last_logged: Dict[str, Any] = {}

    def collect_infos(
        self, info: Dict[str, float], prefix: str = "", no_rolling_window: bool = False
    ) -> None:
        for k, v in info.items():
            self.collect_info(k, v, prefix, no_rolling_window)

    def collect_info(
        self, k: str, value: float, prefix: str = "", no_rolling_window: bool = False
    ) -> None:
        """
        :param no_rolling_window: If true, then only the most recent logged
            value will be displayed with a call to `self.interval_log`.
        """
        use_k = prefix + k
        if no_rolling_window:
            self._step_log_info[use_k].clear()
            self._clear_keys.add(use_k)
        self._step_log_info[use_k].append(value)

    def log_vals(self, key_vals: Dict[str, Any], step_count: int) -> None:
        """
        Keeps the values of the latest flush in `last_logged`.
        """
        self.last_logged = dict(key_vals)

    def interval_log(self, chunk_count: int, processed_vectors: int) -> None:
        """
        :param chunk_count: The number of enumeration chunks finished.
        :param processed_vectors: The number of vectors classified so far.
        """
        self._num_calls += 1
        end = time.time()
        elapsed = max(end - self.start, 1e-9)
        vps = int((processed_vectors - self.prev_steps) / elapsed)
        self.prev_steps = processed_vectors

        log_dat = {}
        for k, v in self._step_log_info.items():
            if isinstance(v, deque):
                log_dat[k] = np.mean(v)
            else:
                log_dat[k] = v

        for k in self._clear_keys:
            del self._step_log_info[k]
        self._clear_keys.clear()

        if self.is_printing and self._num_calls % self.log_interval == 0:
            prefix = f"[{self.run_name}] " if self.run_name else ""
            logger.info(
                f"{prefix}Chunks {chunk_count}, Vectors {processed_vectors}, VPS {vps}"
            )
            for k, v in log_dat.items():
                logger.info(f"    - {k}: {v}")

        log_dat["vps"] = vps
        self.log_vals(log_dat, processed_vectors)
        self.start = end

    def close(self):
        pass
