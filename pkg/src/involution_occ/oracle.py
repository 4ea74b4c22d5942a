"""Exhaustive enumeration of every psi-symmetric vector for tiny universes.

Used as ground truth for the closed forms in :mod:`involution_occ.exact`: the
sums are raw integers, so comparisons are exact.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from .core import Involution, SymmetricVector, expand
from .errors import RangeError, TooLarge

ENUMERATION_LIMIT = 10**7


@dataclass(frozen=True)
class OracleReport:
    m: int
    f: int
    per_k: tuple[tuple[int, int, int], ...]  # (k, sum of m_k, sum of m_k^2)
    total_vectors: int

    def sum_mk(self, k: int) -> int:
        return self.per_k[k][1]

    def sum_mk_sq(self, k: int) -> int:
        return self.per_k[k][2]


def _check_size(psi: Involution, limit: int) -> int:
    total = psi.m ** (psi.m // 2)
    if total > limit:
        raise TooLarge(f"{total} vectors exceeds enumeration limit {limit}")
    return total


def enumerate_vectors(psi: Involution, limit: int = ENUMERATION_LIMIT) -> Iterator[SymmetricVector]:
    """Yield each vector once, free halves in lexicographic order."""
    _check_size(psi, limit)
    for half in itertools.product(range(psi.m), repeat=psi.m // 2):
        yield expand(half, psi)


def oracle_report(psi: Involution, k_max: int | None = None, limit: int = ENUMERATION_LIMIT) -> OracleReport:
    m = psi.m
    if k_max is None:
        k_max = m
    if not 0 <= k_max <= m:
        raise RangeError(f"k_max must lie in 0..{m}, got {k_max}")
    total = _check_size(psi, limit)
    mirror = psi.map
    sums = [0] * (k_max + 1)
    sums_sq = [0] * (k_max + 1)
    # Counting is done directly on the free half, independent of
    # core.occurrence_profile and the numpy path.
    for half in itertools.product(range(m), repeat=m // 2):
        occ = Counter(half)
        occ.update(mirror[v] for v in half)
        hist = Counter(occ.values())
        hist[0] = m - len(occ)
        for k in range(k_max + 1):
            c = hist.get(k, 0)
            sums[k] += c
            sums_sq[k] += c * c
    per_k = tuple((k, sums[k], sums_sq[k]) for k in range(k_max + 1))
    return OracleReport(m=m, f=psi.fixed_count, per_k=per_k, total_vectors=total)
