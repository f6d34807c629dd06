"""Exhaustive tree-statistic counts and their parallel orchestration.

``tree_stat_counts(n)`` walks all n^(n-2) Prüfer sequences once and counts
the joint statistic (deg_1, deg_2, deg'_2, |L_1|); both trivariate
generating polynomials and the exact pmf tables are read off this tensor.
The index space is split into a fixed number of contiguous chunks
(independent of the worker count) and the integer count tensors are summed,
so results are byte-identical at any parallelism level.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

import numpy as np

from minfact._kernels import _mc_stats_batch, _stats_range
from minfact.errors import CapExceededError
from minfact.trees import ENUM_TREE_CAP

_N_CHUNKS = 64


def default_workers() -> int:
    env = os.environ.get("MINFACT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


@lru_cache(maxsize=None)
def _counts_cached(n: int) -> np.ndarray:
    return _compute_counts(n, default_workers())


def _compute_counts(n: int, workers: int) -> np.ndarray:
    total = n ** (n - 2)
    n_chunks = min(_N_CHUNKS, total)
    bounds = [total * c // n_chunks for c in range(n_chunks + 1)]
    parts = [np.zeros((n, n, n, n), np.int64) for _ in range(n_chunks)]

    def run(c: int) -> None:
        _stats_range(n, bounds[c], bounds[c + 1], parts[c])

    if workers > 1 and n_chunks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, range(n_chunks)))
    else:
        for c in range(n_chunks):
            run(c)
    out = np.zeros((n, n, n, n), np.int64)
    for part in parts:
        out += part
    return out


def tree_stat_counts(n: int, workers: int | None = None) -> dict[tuple[int, int, int, int], int]:
    """Counts of (deg_1, deg_2, deg'_2, |L_1|) over all Cayley trees on n vertices."""
    if not 2 <= n <= ENUM_TREE_CAP:
        raise CapExceededError(
            f"exhaustive statistics are capped at 2 <= n <= {ENUM_TREE_CAP}; got n={n}"
        )
    if workers is None:
        tensor = _counts_cached(n)
    else:
        tensor = _compute_counts(n, workers)
    out: dict[tuple[int, int, int, int], int] = {}
    for d1, d2, d2p, l1 in zip(*np.nonzero(tensor)):
        out[(int(d1) + 1, int(d2) + 1, int(d2p) + 1, int(l1) + 1)] = int(
            tensor[d1, d2, d2p, l1]
        )
    return out


def mc_stats_batch(seqs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(deg_1, deg'_2) per row for a batch of Prüfer sequences (values 1..n)."""
    batch = seqs.shape[0]
    out_d1 = np.empty(batch, np.int64)
    out_d2p = np.empty(batch, np.int64)
    _mc_stats_batch(np.ascontiguousarray(seqs, dtype=np.int64), out_d1, out_d2p)
    return out_d1, out_d2p
