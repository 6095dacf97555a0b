from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
import tomllib

from .corpus import available_corpora

VALID_CORPORA = set(available_corpora())
CONFIG_FILENAME = ".starclean.toml"


@dataclass
class WorkbenchConfig:
    max_order: int | None = None
    corpus: str | None = None
    workers: int | None = None
    json: bool | None = None
    seed: int | None = None
    sample: int | None = None
    timing: bool | None = None
    include: list[str] = field(default_factory=list)
    exclude: list[str] = field(default_factory=list)


def _as_bool(value: object, *, key: str) -> bool:
    if isinstance(value, bool):
        return value
    raise ValueError(f"Config key '{key}' must be boolean")


def _as_str(value: object, *, key: str) -> str:
    if isinstance(value, str):
        return value
    raise ValueError(f"Config key '{key}' must be string")


def _as_positive_int(value: object, *, key: str) -> int:
    if isinstance(value, int) and not isinstance(value, bool) and value > 0:
        return value
    raise ValueError(f"Config key '{key}' must be a positive integer")


def _as_non_negative_int(value: object, *, key: str) -> int:
    if isinstance(value, int) and not isinstance(value, bool) and value >= 0:
        return value
    raise ValueError(f"Config key '{key}' must be a non-negative integer")


def _as_str_list(value: object, *, key: str) -> list[str]:
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        raise ValueError(f"Config key '{key}' must be an array of strings")
    return value


def load_config(path: Path) -> WorkbenchConfig:
    if not path.exists():
        return WorkbenchConfig()

    try:
        data = tomllib.loads(path.read_text(encoding="utf-8"))
    except tomllib.TOMLDecodeError as err:
        raise ValueError(f"Config file {path} is not valid TOML: {err}") from err
    cfg = WorkbenchConfig()

    workbench = data.get("workbench", {})
    if workbench:
        if not isinstance(workbench, dict):
            raise ValueError("[workbench] must be a table")

        if "max_order" in workbench:
            cfg.max_order = _as_positive_int(workbench["max_order"], key="workbench.max_order")

        if "corpus" in workbench:
            corpus = _as_str(workbench["corpus"], key="workbench.corpus")
            if corpus not in VALID_CORPORA:
                allowed = ", ".join(sorted(VALID_CORPORA))
                raise ValueError(f"workbench.corpus must be one of: {allowed}")
            cfg.corpus = corpus

        if "workers" in workbench:
            cfg.workers = _as_positive_int(workbench["workers"], key="workbench.workers")

        if "json" in workbench:
            cfg.json = _as_bool(workbench["json"], key="workbench.json")

        if "seed" in workbench:
            cfg.seed = _as_non_negative_int(workbench["seed"], key="workbench.seed")

        if "sample" in workbench:
            cfg.sample = _as_non_negative_int(workbench["sample"], key="workbench.sample")

        if "timing" in workbench:
            cfg.timing = _as_bool(workbench["timing"], key="workbench.timing")

    claims = data.get("claims", {})
    if claims:
        if not isinstance(claims, dict):
            raise ValueError("[claims] must be a table")

        if "include" in claims:
            cfg.include = _as_str_list(claims["include"], key="claims.include")

        if "exclude" in claims:
            cfg.exclude = _as_str_list(claims["exclude"], key="claims.exclude")

    return cfg
