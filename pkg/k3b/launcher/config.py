import os
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional

from omegaconf import DictConfig, OmegaConf
from omegaconf.errors import OmegaConfBaseException

BUDGET_ENV_VAR = "K3B_BUDGET"
OUTPUT_FORMATS = ("table", "json")


@dataclass
class CliConfig:
    """
    :param enumeration_budget: Largest p^(m+1) a brute force sweep may visit.
    :param disc_enum_bound: Largest discriminant group whose orthogonal group
        is enumerated.
    :param log_interval: Progress line every this many chunks, 0 is silent.
    :param use_cached: Reuse brute force tables cached under ./data/cache.
    """

    enumeration_budget: int = 2**24
    disc_enum_bound: int = 10**6
    output_format: str = "table"
    out_path: Optional[str] = None
    num_workers: int = 1
    log_interval: int = 0
    use_cached: bool = False


def _validate(cfg: DictConfig) -> DictConfig:
    if cfg.enumeration_budget <= 0:
        raise ValueError(f"enumeration_budget must be positive, got {cfg.enumeration_budget}")
    if cfg.disc_enum_bound <= 0:
        raise ValueError(f"disc_enum_bound must be positive, got {cfg.disc_enum_bound}")
    if cfg.output_format not in OUTPUT_FORMATS:
        raise ValueError(f"output_format must be one of {OUTPUT_FORMATS}, got {cfg.output_format}")
    if cfg.num_workers < 1:
        raise ValueError(f"num_workers must be at least 1, got {cfg.num_workers}")
    if cfg.log_interval < 0:
        raise ValueError(f"log_interval must be nonnegative, got {cfg.log_interval}")
    return cfg


def load_config(
    cfg_path: Optional[str] = None,
    overrides: Optional[Dict[str, Any]] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> DictConfig:
    """
    Defaults, then the YAML file, then K3B_BUDGET, then explicit overrides.
    Overrides that are None are ignored.
    """
    environ = os.environ if environ is None else environ
    cfg = OmegaConf.structured(CliConfig)
    try:
        if cfg_path is not None:
            cfg = OmegaConf.merge(cfg, OmegaConf.load(cfg_path))
        if environ.get(BUDGET_ENV_VAR):
            raw = environ[BUDGET_ENV_VAR]
            try:
                budget = int(raw)
            except ValueError:
                raise ValueError(f"{BUDGET_ENV_VAR}={raw} is not an integer")
            cfg = OmegaConf.merge(cfg, {"enumeration_budget": budget})
        if overrides:
            cfg = OmegaConf.merge(cfg, {k: v for k, v in overrides.items() if v is not None})
    except OmegaConfBaseException as e:
        raise ValueError(f"Invalid configuration: {e}")
    return _validate(cfg)
