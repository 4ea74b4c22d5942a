"""Uniform sampling of psi-symmetric vectors and seeded, order-independent
estimation of occurrence statistics.

Trial ``t`` of a run with master seed ``s`` draws its free half from
``numpy.random.default_rng(mix_seed(s, t))``.  Workers only return integer
totals, so the summary does not depend on how trials are split across
processes.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .asymptotic import main_term
from .core import Involution, SymmetricVector
from .errors import RangeError

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(z: int) -> int:
    z = (z + _GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix_seed(seed: int, trial: int) -> int:
    """Per-trial 64-bit seed: ``splitmix64(splitmix64(seed) ^ trial)``."""
    return splitmix64(splitmix64(seed & MASK64) ^ (trial & MASK64))


def sample_half(m: int, trial_seed: int) -> np.ndarray:
    rng = np.random.default_rng(trial_seed & MASK64)
    return rng.integers(0, m, size=m // 2, dtype=np.int64)


def sample_vector(psi: Involution, trial_seed: int) -> SymmetricVector:
    """Uniform draw from the ``m ** (m/2)`` psi-symmetric vectors."""
    half = sample_half(psi.m, trial_seed)
    back = psi.as_array()[half][::-1]
    return SymmetricVector(np.concatenate([half, back]))


def profile_counts(entries: np.ndarray, m: int) -> np.ndarray:
    """Occurrence histogram ``[m_0, m_1, ..., m_m]`` as an int64 array."""
    return np.bincount(np.bincount(entries, minlength=m), minlength=m + 1)


@dataclass(frozen=True)
class KStat:
    k: int
    mean_ratio: float
    sample_variance: float
    within_window_fraction: float
    sum_mk: int
    sum_mk_sq: int
    within_count: int


@dataclass(frozen=True)
class SampleSummary:
    m: int
    f: int
    trials: int
    seed: int
    window: float
    per_k: tuple[KStat, ...]

    def stat(self, k: int) -> KStat:
        return self.per_k[k]

    def standard_error(self, k: int) -> float:
        return math.sqrt(self.per_k[k].sample_variance / self.trials)


def default_window(m: int) -> float:
    return m ** -0.25


def _run_block(map_: tuple[int, ...], k_max: int, seed: int, start: int, stop: int, window: float):
    m = len(map_)
    psi_arr = np.asarray(map_, dtype=np.int64)
    theta = sum(1 for i, j in enumerate(map_) if i == j) / m
    centers = np.array([main_term(k, theta) for k in range(k_max + 1)])
    sums = np.zeros(k_max + 1, dtype=np.int64)
    sums_sq = np.zeros(k_max + 1, dtype=np.int64)
    within = np.zeros(k_max + 1, dtype=np.int64)
    for t in range(start, stop):
        half = sample_half(m, mix_seed(seed, t))
        entries = np.concatenate([half, psi_arr[half][::-1]])
        counts = profile_counts(entries, m)[: k_max + 1].astype(np.int64)
        sums += counts
        sums_sq += counts * counts
        within += np.abs(counts / m - centers) < window
    return [int(v) for v in sums], [int(v) for v in sums_sq], [int(v) for v in within]


def _blocks(trials: int, jobs: int) -> list[tuple[int, int]]:
    n = max(1, min(jobs, trials))
    edges = [trials * i // n for i in range(n + 1)]
    return [(edges[i], edges[i + 1]) for i in range(n) if edges[i] < edges[i + 1]]


def resolve_jobs(jobs: int | None) -> int:
    if jobs is None:
        jobs = int(os.environ.get("INVOLUTION_OCC_JOBS", "1"))
    if jobs < 1:
        raise RangeError(f"jobs must be >= 1, got {jobs}")
    return jobs


def estimate(
    psi: Involution,
    k_max: int,
    trials: int,
    seed: int,
    window: float | None = None,
    jobs: int | None = None,
) -> SampleSummary:
    """Monte Carlo mean, variance and window-hit fraction of ``m_k/m``."""
    m = psi.m
    if trials < 1:
        raise RangeError(f"trials must be >= 1, got {trials}")
    if not 0 <= k_max <= m:
        raise RangeError(f"k_max must lie in 0..{m}, got {k_max}")
    if window is None:
        window = default_window(m)
    if not window > 0:
        raise RangeError(f"window must be positive, got {window}")
    if trials * m * m >= 2**63:
        raise RangeError("trials * m**2 overflows the int64 accumulators")
    seed &= MASK64
    jobs = resolve_jobs(jobs)
    blocks = _blocks(trials, jobs)
    args = [(psi.map, k_max, seed, a, b, window) for a, b in blocks]
    if len(blocks) == 1:
        results = [_run_block(*args[0])]
    else:
        with ProcessPoolExecutor(max_workers=len(blocks)) as pool:
            results = list(pool.map(_run_block, *zip(*args)))

    per_k = []
    for k in range(k_max + 1):
        s = sum(r[0][k] for r in results)
        sq = sum(r[1][k] for r in results)
        w = sum(r[2][k] for r in results)
        mean = Fraction(s, trials * m)
        if trials > 1:
            var = Fraction(sq * trials - s * s, trials * (trials - 1) * m * m)
        else:
            var = Fraction(0)
        per_k.append(
            KStat(
                k=k,
                mean_ratio=float(mean),
                sample_variance=float(var),
                within_window_fraction=w / trials,
                sum_mk=s,
                sum_mk_sq=sq,
                within_count=w,
            )
        )
    return SampleSummary(m=m, f=psi.fixed_count, trials=trials, seed=seed, window=float(window), per_k=tuple(per_k))
