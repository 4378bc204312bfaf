"""Size caps for the exhaustive algorithms, overridable via RANKMAT_CAPS.

The environment variable holds comma-separated ``name=value`` pairs,
e.g. ``RANKMAT_CAPS="matrix_cells=1000000,monadic_universe=8"``.
"""
from __future__ import annotations

import os

_DEFAULTS = {
    # Maximum number of cells in a type matrix.
    "matrix_cells": 10**7,
    # Maximum universe size of a monadic structure (2^n subsets enumerated).
    "monadic_universe": 10,
    # Maximum m * n when building monadic type matrices.
    "monadic_matrix_mn": 12,
    # Maximum universe size for exhaustive rankwidth search.
    "rankwidth_universe": 7,
    # Maximum generator count in min_boolean_combination search.
    "boolean_combination_limit": 4,
    # Maximum number of rows or columns a Kronecker normal form may reach
    # before finite_order gives up with Unknown.
    "kronecker_normal_form": 512,
    # Maximum vertex count of a hypergraph (2^V edge table).
    "hypergraph_vertices": 16,
    # Maximum number of words scanned by prefix/suffix/multiset checks.
    "word_scan": 500_000,
}


class CapExceeded(Exception):
    """A requested computation exceeds the configured size caps."""


def _load() -> dict:
    caps = dict(_DEFAULTS)
    raw = os.environ.get("RANKMAT_CAPS", "")
    for item in raw.split(","):
        item = item.strip()
        if not item:
            continue
        name, _, value = item.partition("=")
        name = name.strip()
        if name not in caps:
            raise ValueError(f"unknown cap {name!r}")
        caps[name] = int(value)
    return caps


def get(name: str) -> int:
    return _load()[name]


def check(name: str, requested: int, what: str) -> None:
    limit = get(name)
    if requested > limit:
        raise CapExceeded(f"{what}: {requested} exceeds cap {name}={limit}")
