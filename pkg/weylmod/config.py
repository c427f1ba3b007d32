from __future__ import annotations

import copy
import os
from pathlib import Path

from weylmod.errors import InvalidInputError
from weylmod.fingerprints import stable_hash

try:
    import yaml
except Exception:  # pragma: no cover
    yaml = None

CONFIG_ENV = "WEYLMOD_CONFIG"
CACHE_ENV = "WEYLMOD_CACHE"

DEFAULT_MAX_BASIS_ELEMENTS = 10**7
DEFAULT_MAX_PBW_TERMS = 10**6

DEFAULT_CONFIG = {
    "limits": {
        "max_basis_elements": DEFAULT_MAX_BASIS_ELEMENTS,
        "max_pbw_terms": DEFAULT_MAX_PBW_TERMS,
    },
    "cache_path": None,
    "verify": {
        "max_rank": 3,
        "max_coord": 2,
        "workers": 1,
        "random_words": 1000,
        "seed": 20240611,
        "max_factors": 6,
        "max_power": 3,
    },
}


def _deep_update(dst: dict, src: dict) -> dict:
    for key, value in src.items():
        if isinstance(value, dict) and isinstance(dst.get(key), dict):
            _deep_update(dst[key], value)
        else:
            dst[key] = value
    return dst


def _drop_unset(data: dict) -> dict:
    out = {}
    for key, value in data.items():
        if isinstance(value, dict):
            nested = _drop_unset(value)
            if nested:
                out[key] = nested
        elif value is not None:
            out[key] = value
    return out


def _check_limits(cfg: dict) -> None:
    for section, keys in (("limits", ("max_basis_elements", "max_pbw_terms")), ("verify", ("max_rank", "workers", "random_words", "max_factors", "max_power"))):
        for key in keys:
            value = cfg[section].get(key)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise InvalidInputError(f"Config value {section}.{key} must be a positive integer (got {value!r}).")
    max_coord = cfg["verify"].get("max_coord")
    if isinstance(max_coord, bool) or not isinstance(max_coord, int) or max_coord < 0:
        raise InvalidInputError(f"Config value verify.max_coord must be a nonnegative integer (got {max_coord!r}).")


def load_config(config_path: str | Path | None = None, cli_overrides: dict | None = None) -> tuple[dict, list[str]]:
    """Defaults, then the YAML file, then WEYLMOD_CACHE, then CLI flags (None values are ignored)."""
    cfg = copy.deepcopy(DEFAULT_CONFIG)
    warnings: list[str] = []
    if config_path is None and os.environ.get(CONFIG_ENV):
        config_path = os.environ[CONFIG_ENV]
    if config_path is not None:
        path = Path(config_path)
        if not path.exists():
            warnings.append(f"Config file {path} not found; using defaults + CLI overrides.")
        elif yaml is None:
            warnings.append(f"{path} exists but PyYAML is unavailable; using defaults + CLI overrides.")
        else:
            data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
            if not isinstance(data, dict):
                raise InvalidInputError(f"Config file {path} must contain a mapping at the top level.")
            _deep_update(cfg, data)
    if os.environ.get(CACHE_ENV) and cfg.get("cache_path") is None:
        cfg["cache_path"] = os.environ[CACHE_ENV]
    if cli_overrides:
        _deep_update(cfg, _drop_unset(cli_overrides))
    _check_limits(cfg)
    return cfg, warnings


def config_hash(config: dict) -> str:
    return stable_hash(config)
