"""Seeded Monte Carlo plumbing shared by the classical and quantum estimators.

Trials are cut into fixed-size blocks and block ``i`` draws from
``SeedSequence(seed, spawn_key=(i,))``. The partition never depends on
the worker count, and per-block results are combined in block order, so
estimates are bit-identical for any ``workers``.
"""

from __future__ import annotations

import math
import os
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.stats import binomtest

BLOCK_SIZE = 1 << 15


def default_workers() -> int:
    return max(1, int(os.environ.get("PCSS_THREADS", "1")))


def block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(block,)))


def run_blocks(
    trials: int,
    seed: int,
    work: Callable[[np.random.Generator, int], np.ndarray],
    workers: int | None = None,
    block_size: int = BLOCK_SIZE,
) -> np.ndarray:
    """Sum the integer count vectors returned by ``work(rng, size)`` over all blocks."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    workers = workers or default_workers()
    sizes = [min(block_size, trials - start) for start in range(0, trials, block_size)]

    def job(i: int) -> np.ndarray:
        return np.asarray(work(block_rng(seed, i), sizes[i]), dtype=np.int64)

    if workers == 1:
        parts = [job(i) for i in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(job, range(len(sizes))))
    return np.sum(parts, axis=0)


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    ci = binomtest(int(successes), int(trials)).proportion_ci(confidence_level=confidence, method="wilson")
    return float(ci.low), float(ci.high)


def binomial_sigma(p: float, trials: int) -> float:
    return math.sqrt(max(p * (1.0 - p), 0.0) / trials)
