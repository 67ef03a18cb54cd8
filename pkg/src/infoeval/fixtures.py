"""Bundled reference matrices, loadable by stem name.

The package ships a small set of JSON fixture files (see the
``fixtures/`` data directory):

* ``binary_models``: six 2-class models on a 90/10 split, including a
  proportional-rows model and an equal-marginals model,
* ``class_share_study``: the four canonical departures at 94/6 and
  95/5 splits, bracketing the cost cross-over,
* ``three_class_models``: nine single-departure 3-class models on an
  80/15/5 split,
* ``reject_tradeoff``: two models with identical correct/error/reject
  rates but different reject placement.

Set the ``INFOEVAL_FIXTURES`` environment variable to point at an
alternate fixture directory.
"""
from __future__ import annotations

import os
from pathlib import Path

from .confusion import AugmentedConfusionMatrix, parse_matrices

__all__ = ["available", "fixtures_dir", "load"]

ENV_VAR = "INFOEVAL_FIXTURES"


def fixtures_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent / "fixtures"


def available() -> tuple[str, ...]:
    return tuple(sorted(path.stem for path in fixtures_dir().glob("*.json")))


def load(name: str) -> list[AugmentedConfusionMatrix]:
    """Load matrices from a fixture stem, fixture file name, or path."""
    path = Path(name)
    if not path.is_file():
        stem = name if name.endswith(".json") else f"{name}.json"
        path = fixtures_dir() / stem
        if not path.is_file():
            known = ", ".join(available()) or "(none)"
            raise ValueError(f"unknown fixture {name!r}; available: {known}")
    return parse_matrices(path.read_text(), "json")
