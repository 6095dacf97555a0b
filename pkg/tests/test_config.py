from __future__ import annotations

from pathlib import Path

import pytest

from starclean.config import load_config


def test_load_config_defaults_when_missing(tmp_path: Path):
    cfg = load_config(tmp_path / ".starclean.toml")
    assert cfg.max_order is None
    assert cfg.corpus is None
    assert cfg.workers is None
    assert cfg.json is None
    assert cfg.seed is None
    assert cfg.sample is None
    assert cfg.timing is None
    assert cfg.include == []
    assert cfg.exclude == []


def test_load_config_with_values(tmp_path: Path):
    cfg_path = tmp_path / ".starclean.toml"
    cfg_path.write_text(
        """
[workbench]
max_order = 1024
corpus = "quick"
workers = 4
json = true
seed = 7
sample = 3
timing = false

[claims]
include = ["thm-char"]
exclude = ["search-oracle"]
""".strip()
        + "\n",
        encoding="utf-8",
    )

    cfg = load_config(cfg_path)
    assert cfg.max_order == 1024
    assert cfg.corpus == "quick"
    assert cfg.workers == 4
    assert cfg.json is True
    assert cfg.seed == 7
    assert cfg.sample == 3
    assert cfg.timing is False
    assert cfg.include == ["thm-char"]
    assert cfg.exclude == ["search-oracle"]


@pytest.mark.parametrize(
    ("body", "message"),
    [
        ("[workbench]\nmax_order = 0\n", "positive integer"),
        ("[workbench]\nmax_order = true\n", "positive integer"),
        ("[workbench]\ncorpus = \"huge\"\n", "workbench.corpus must be one of"),
        ("[workbench]\njson = \"yes\"\n", "must be boolean"),
        ("[workbench]\nseed = -1\n", "non-negative"),
        ("[claims]\ninclude = \"thm-char\"\n", "array of strings"),
        ("workbench = 3\n", "must be a table"),
        ("[workbench\n", "not valid TOML"),
    ],
)
def test_load_config_rejects_bad_values(tmp_path: Path, body: str, message: str):
    cfg_path = tmp_path / ".starclean.toml"
    cfg_path.write_text(body, encoding="utf-8")
    with pytest.raises(ValueError, match=message):
        load_config(cfg_path)
