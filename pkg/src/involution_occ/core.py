"""Element universe, involutions, mirror-symmetric vectors and occurrence counts.

Elements of the universe are the integers ``0 .. m-1``.  A vector ``x`` of length
``m`` is *psi-symmetric* when ``x[m-1-j] == psi(x[j])`` for every ``j``; such a
vector is determined by its first ``m/2`` entries (the free half), so there are
exactly ``m ** (m/2)`` of them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from os import PathLike
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    LengthMismatch,
    NotPermutation,
    NotSelfInverse,
    OddSize,
    ParityMismatch,
    RangeError,
)

__all__ = [
    "Involution",
    "FreeHalf",
    "SymmetricVector",
    "OccurrenceProfile",
    "validate_involution",
    "canonical_involution",
    "expand",
    "occurrence_profile",
    "load_involution",
    "dump_involution",
]


@dataclass(frozen=True)
class Involution:
    m: int
    map: tuple[int, ...]
    fixed_count: int

    def __call__(self, i: int) -> int:
        return self.map[i]

    @property
    def fixed_points(self) -> tuple[int, ...]:
        return tuple(i for i, j in enumerate(self.map) if i == j)

    def as_array(self) -> np.ndarray:
        arr = np.asarray(self.map, dtype=np.int64)
        arr.flags.writeable = False
        return arr


@dataclass(frozen=True)
class FreeHalf:
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    def check(self, m: int) -> None:
        if len(self.values) != m // 2:
            raise LengthMismatch(f"free half has length {len(self.values)}, expected {m // 2}")
        for j, v in enumerate(self.values):
            if not 0 <= v < m:
                raise RangeError(f"free half entry {j} = {v} outside 0..{m - 1}")


@dataclass(frozen=True, eq=False)
class SymmetricVector:
    """A psi-symmetric vector; ``entries`` is a read-only int64 array."""

    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.int64, copy=True)
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    @property
    def m(self) -> int:
        return int(self.entries.shape[0])

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.entries)

    def components(self) -> frozenset[int]:
        """The set of distinct ids occurring in the vector."""
        return frozenset(int(v) for v in np.unique(self.entries))

    def is_symmetric(self, psi: Involution) -> bool:
        if self.m != psi.m:
            return False
        mirrored = psi.as_array()[self.entries][::-1]
        return bool(np.array_equal(mirrored, self.entries))

    def __eq__(self, other):
        if not isinstance(other, SymmetricVector):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(self.entries.tobytes())

    def __repr__(self):
        return f"SymmetricVector({self.as_tuple()!r})"


@dataclass(frozen=True)
class OccurrenceProfile:
    """``counts[k]`` is the number of ids occurring exactly ``k`` times."""

    counts: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.counts) - 1

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.counts):
            return self.counts[k]
        return 0


def validate_involution(m: int, map: Sequence[int]) -> Involution:
    """Check that ``map`` is a self-inverse permutation of ``0..m-1``.

    Raises OddSize, NotPermutation or NotSelfInverse naming the first offending
    index.
    """
    if m < 2:
        raise RangeError(f"m must be >= 2, got {m}")
    if m % 2:
        raise OddSize(f"m must be even, got {m}")
    values = [int(v) for v in map]
    if len(values) != m:
        raise NotPermutation(f"map has length {len(values)}, expected {m}")
    seen = [False] * m
    for i, v in enumerate(values):
        if not 0 <= v < m or seen[v]:
            raise NotPermutation(f"map is not a permutation: index {i} -> {v}")
        seen[v] = True
    for i, v in enumerate(values):
        if values[v] != i:
            raise NotSelfInverse(f"map[map[{i}]] = {values[v]} != {i}")
    fixed = sum(1 for i, v in enumerate(values) if i == v)
    return Involution(m=m, map=tuple(values), fixed_count=fixed)


def canonical_involution(m: int, f: int) -> Involution:
    """Fix ids ``0..f-1`` and swap consecutive pairs ``(f, f+1), (f+2, f+3), ...``."""
    if m < 2:
        raise RangeError(f"m must be >= 2, got {m}")
    if m % 2:
        raise OddSize(f"m must be even, got {m}")
    if not 0 <= f <= m:
        raise RangeError(f"f must lie in 0..{m}, got {f}")
    if (m - f) % 2:
        raise ParityMismatch(f"m - f must be even, got m={m}, f={f}")
    mapping = list(range(f))
    for i in range(f, m, 2):
        mapping += [i + 1, i]
    return Involution(m=m, map=tuple(mapping), fixed_count=f)


def expand(half: FreeHalf | Sequence[int], psi: Involution) -> SymmetricVector:
    if not isinstance(half, FreeHalf):
        half = FreeHalf(tuple(half))
    half.check(psi.m)
    front = np.asarray(half.values, dtype=np.int64)
    back = psi.as_array()[front][::-1]
    return SymmetricVector(np.concatenate([front, back]))


def occurrence_profile(x: SymmetricVector | Iterable[int], m: int | None = None) -> OccurrenceProfile:
    """Histogram of occurrence counts over the universe ``0..m-1``.

    ``m`` defaults to the vector length, which is the universe size for
    symmetric vectors.
    """
    entries = x.entries if isinstance(x, SymmetricVector) else np.asarray(list(x), dtype=np.int64)
    if m is None:
        m = int(entries.shape[0])
    per_id = np.bincount(entries, minlength=m)
    if per_id.shape[0] > m:
        raise RangeError(f"entry {int(entries.max())} outside universe of size {m}")
    counts = np.bincount(per_id, minlength=len(entries) + 1)
    return OccurrenceProfile(tuple(int(c) for c in counts))


def load_involution(path: str | PathLike) -> Involution:
    """Read ``{"m": <int>, "map": [...]}`` and validate it."""
    with open(path) as fh:
        data = json.load(fh)
    try:
        m, mapping = data["m"], data["map"]
    except (KeyError, TypeError) as exc:
        raise NotPermutation(f"involution file needs 'm' and 'map' keys: {exc}") from None
    return validate_involution(int(m), mapping)


def dump_involution(psi: Involution, path: str | PathLike) -> None:
    with open(path, "w") as fh:
        json.dump({"m": psi.m, "map": list(psi.map)}, fh)
        fh.write("\n")
