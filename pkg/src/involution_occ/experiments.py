"""Witness search, occurrence bands and the adversarial bijection.

Given a vector ``x``, a set ``b`` of ids and a bijection ``phi`` of the
universe, a *link witness* is an id ``u`` in ``b`` with ``phi(u)`` also in
``b``, both occurring few enough times in ``x``.  Outside a small exceptional
set of vectors such witnesses are forced once ``b`` is dense enough; the
drivers at the bottom of this module check that on sampled vectors.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .asymptotic import threshold_c
from .core import SymmetricVector, canonical_involution
from .errors import NotBijection, RangeError, TooSmall
from .montecarlo import mix_seed, sample_vector


@dataclass(frozen=True)
class WitnessPair:
    u: int
    v: int
    occ_u: int
    occ_v: int
    u_present: bool
    v_present: bool


@dataclass(frozen=True)
class BandCheck:
    k: int
    lower: float
    upper: float
    actual: float
    inside: bool


@dataclass(frozen=True)
class Construction:
    b: frozenset[int]
    phi: tuple[int, ...]
    succeeded: bool
    linked: int = 0  # |b ∩ components(x)|


def _occurrences(x: SymmetricVector) -> np.ndarray:
    return np.bincount(x.entries, minlength=x.m)


def _check_bijection(phi: Sequence[int], m: int) -> np.ndarray:
    arr = np.asarray(phi, dtype=np.int64)
    if arr.shape != (m,):
        raise NotBijection(f"phi has length {arr.shape[0] if arr.ndim else 0}, expected {m}")
    if arr.min(initial=0) < 0 or arr.max(initial=0) >= m:
        raise NotBijection("phi maps outside the universe")
    if np.unique(arr).shape[0] != m:
        raise NotBijection("phi is not injective")
    return arr


def _membership(b: Iterable[int], m: int) -> np.ndarray:
    mask = np.zeros(m, dtype=bool)
    ids = np.fromiter((int(i) for i in b), dtype=np.int64)
    if ids.size and (ids.min() < 0 or ids.max() >= m):
        raise RangeError("b contains ids outside the universe")
    mask[ids] = True
    return mask


def band_checks(counts: Sequence[int], m: int, k_cap: int, mu: float) -> list[BandCheck]:
    if not 0.0 < mu < 1.0:
        raise RangeError(f"mu must lie in (0, 1), got {mu}")
    if k_cap < 0:
        raise RangeError(f"k_cap must be >= 0, got {k_cap}")
    out = []
    for k in range(k_cap + 1):
        center = math.exp(-1.0 - math.lgamma(k + 1))
        lower, upper = (1.0 - mu) * center, (1.0 + mu) * center
        actual = int(counts[k] if k < len(counts) else 0) / m
        out.append(BandCheck(k, lower, upper, actual, bool(lower < actual < upper)))
    return out


def in_exceptional_set(x: SymmetricVector, k_cap: int, mu: float) -> list[BandCheck]:
    """Band checks of ``m_k/m`` against ``(1 -+ mu) / (e k!)`` for ``k <= k_cap``.

    ``x`` is exceptional iff some check has ``inside == False``.  The band is
    centred on the fixed-point-free density.
    """
    counts = np.bincount(_occurrences(x), minlength=x.m + 1)
    return band_checks(counts, x.m, k_cap, mu)


def is_exceptional(checks: Iterable[BandCheck]) -> bool:
    return not all(c.inside for c in checks)


def find_witness_thm2(
    x: SymmetricVector, b: Iterable[int], phi: Sequence[int], r: int, s: int
) -> WitnessPair | None:
    """Smallest ``u`` in ``b`` with ``occ(u) <= r``, ``phi(u)`` in ``b`` and
    ``occ(phi(u)) <= s``.  Absent ids (``occ == 0``) qualify."""
    if r < 0 or s < 0:
        raise RangeError(f"need r, s >= 0, got r={r}, s={s}")
    m = x.m
    phi_arr = _check_bijection(phi, m)
    in_b = _membership(b, m)
    occ = _occurrences(x)
    ok = in_b & (occ <= r) & in_b[phi_arr] & (occ[phi_arr] <= s)
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return None
    u = int(hits[0])
    v = int(phi_arr[u])
    return WitnessPair(u, v, int(occ[u]), int(occ[v]), bool(occ[u] > 0), bool(occ[v] > 0))


def find_witness_thm3(x: SymmetricVector, b: Iterable[int], phi: Sequence[int]) -> int | None:
    """Smallest ``y`` in ``b`` occurring in ``x`` whose image ``phi(y)`` is also
    in ``b`` and occurs in ``x``."""
    m = x.m
    phi_arr = _check_bijection(phi, m)
    linked = _membership(b, m) & (_occurrences(x) > 0)
    hits = np.flatnonzero(linked & linked[phi_arr])
    return int(hits[0]) if hits.size else None


def _target_size(fraction: float, m: int) -> int:
    # round() guards against 0.87 * 2000 == 1740.0000000000002
    return math.ceil(round(fraction * m, 9))


def _complete(partial: dict[int, int], m: int) -> tuple[int, ...]:
    # Order-preserving matching of the unassigned ids onto the unused images.
    used = set(partial.values())
    rest_dom = [i for i in range(m) if i not in partial]
    rest_img = [i for i in range(m) if i not in used]
    phi = dict(partial)
    phi.update(zip(rest_dom, rest_img))
    return tuple(phi[i] for i in range(m))


def avoiding_bijection(source: Sequence[int], avoid: Iterable[int], m: int) -> tuple[int, ...]:
    """Bijection sending as much of ``source`` as possible outside ``avoid``.

    ``source`` ids are matched in increasing order onto the increasing ids of
    the complement of ``avoid``; any overflow is matched back into ``avoid``.
    """
    avoid_set = set(avoid)
    targets = [i for i in range(m) if i not in avoid_set]
    source = sorted(source)
    partial = dict(zip(source, targets))
    return _complete(partial, m)


def adversarial_construction(x: SymmetricVector, fraction: float) -> Construction:
    """Dense ``b`` plus a bijection avoiding all link witnesses when possible.

    ``b`` holds every absent id and then the smallest present ids until it has
    ``ceil(fraction * m)`` elements.  When at most ``m/2`` ids of ``b`` occur in
    ``x`` they are mapped into the complement and ``succeeded`` is set;
    otherwise ``phi`` is the identity.
    """
    if not 0.0 < fraction < 1.0:
        raise RangeError(f"fraction must lie in (0, 1), got {fraction}")
    m = x.m
    occ = _occurrences(x)
    absent = [int(i) for i in np.flatnonzero(occ == 0)]
    present = [int(i) for i in np.flatnonzero(occ > 0)]
    size = _target_size(fraction, m)
    if size < len(absent):
        raise TooSmall(f"ceil({fraction} * {m}) = {size} < m_0 = {len(absent)}")
    linked = present[: size - len(absent)]
    b = frozenset(absent + linked)
    if 2 * len(linked) <= m:
        phi = avoiding_bijection(linked, linked, m)
        return Construction(b, phi, True, len(linked))
    return Construction(b, tuple(range(m)), False, len(linked))


def random_bijection(m: int, seed: int) -> tuple[int, ...]:
    rng = np.random.default_rng(seed)
    return tuple(int(i) for i in rng.permutation(m))


def random_subset(m: int, size: int, seed: int) -> frozenset[int]:
    rng = np.random.default_rng(seed)
    return frozenset(int(i) for i in rng.choice(m, size=size, replace=False))


# --------------------------------------------------------------------------
# experiment drivers
# --------------------------------------------------------------------------


@dataclass
class ThresholdTrial:
    index: int
    m0: int
    band: BandCheck
    upper_fraction: float
    upper_linked: int
    upper_failures: int  # bijections (constructed + random) without a witness
    upper_checked: int
    lower_fraction: float
    lower_succeeded: bool
    lower_witness: int | None


@dataclass
class ThresholdReport:
    m: int
    seed: int
    mu: float
    vectors: int
    random_phis: int
    trials: list[ThresholdTrial] = field(default_factory=list)

    @property
    def band_passing(self) -> list[ThresholdTrial]:
        return [t for t in self.trials if t.band.inside]

    @property
    def positive_rate(self) -> float:
        passing = self.band_passing
        if not passing:
            return float("nan")
        return sum(t.upper_failures == 0 for t in passing) / len(passing)

    @property
    def negative_rate(self) -> float:
        passing = self.band_passing
        if not passing:
            return float("nan")
        return sum(t.lower_succeeded and t.lower_witness is None for t in passing) / len(passing)


def threshold_trial(
    m: int, seed: int, t: int, mu: float, upper: float, lower: float, random_phis: int
) -> ThresholdTrial:
    psi = canonical_involution(m, 0)
    trial_seed = mix_seed(seed, t)
    x = sample_vector(psi, trial_seed)
    band = in_exceptional_set(x, 0, mu)[0]
    m0 = round(band.actual * m)
    if not band.inside:
        return ThresholdTrial(t, m0, band, upper, 0, 0, 0, lower, False, None)
    hi = adversarial_construction(x, upper)
    present = x.components()
    phis = [hi.phi, avoiding_bijection(sorted(hi.b & present), hi.b & present, m)]
    phis += [random_bijection(m, mix_seed(trial_seed, i + 1)) for i in range(random_phis)]
    failures = sum(find_witness_thm3(x, hi.b, phi) is None for phi in phis)
    lo = adversarial_construction(x, lower)
    lo_witness = find_witness_thm3(x, lo.b, lo.phi)
    return ThresholdTrial(t, m0, band, upper, hi.linked, failures, len(phis), lower, lo.succeeded, lo_witness)


def threshold_experiment(
    m: int,
    vectors: int,
    seed: int,
    mu: float = 0.003,
    upper: float = 0.87,
    lower: float = 0.86,
    random_phis: int = 100,
    jobs: int = 1,
) -> ThresholdReport:
    """Single-link witness test on both sides of the ``1/2 + 1/e`` density.

    Vector ``t`` is ``sample_vector(psi, mix_seed(seed, t))`` for the
    fixed-point-free canonical involution.  Band-passing vectors are tried
    against the constructed bijection, a best-effort avoiding bijection, and
    ``random_phis`` random ones (bijection ``i`` seeded by
    ``mix_seed(mix_seed(seed, t), i + 1)``).
    """
    if vectors < 1:
        raise RangeError(f"vectors must be >= 1, got {vectors}")
    report = ThresholdReport(m=m, seed=seed, mu=mu, vectors=vectors, random_phis=random_phis)
    args = [(m, seed, t, mu, upper, lower, random_phis) for t in range(vectors)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            report.trials = list(pool.map(threshold_trial, *zip(*args)))
    else:
        report.trials = [threshold_trial(*a) for a in args]
    return report


@dataclass
class WitnessTrial:
    index: int
    b_kind: str
    b_size: int
    phi_kind: str
    witness: WitnessPair | None


@dataclass
class WitnessReport:
    m: int
    r: int
    s: int
    mu: float
    c: float
    b_size: int
    seed: int
    draws: int
    band_passing: int
    trials: list[WitnessTrial] = field(default_factory=list)

    @property
    def success_rate(self) -> float:
        if not self.trials:
            return float("nan")
        return sum(t.witness is not None for t in self.trials) / len(self.trials)


def witness_experiment(
    m: int,
    r: int,
    s: int,
    seed: int,
    mu: float = 0.01,
    vectors: int = 50,
    max_draws: int = 100_000,
) -> WitnessReport:
    """Two-sided witness test on ``vectors`` non-exceptional sampled vectors.

    For each kept vector three ``(b, phi)`` pairs are tried, all with
    ``|b| = ceil(c * m) + 1``: a random ``b`` with a random ``phi``, the
    adversarial ``b`` (absent ids first) with a random ``phi``, and the
    adversarial ``b`` with a ``phi`` pushing ``b ∩ T_r`` outside ``b ∩ T_s``.
    """
    c = threshold_c(r, s, mu)
    size = math.ceil(c * m) + 1
    if size > m:
        raise RangeError(f"|b| = {size} exceeds m = {m}")
    k_cap = max(r, s)
    psi = canonical_involution(m, 0)
    report = WitnessReport(m=m, r=r, s=s, mu=mu, c=c, b_size=size, seed=seed, draws=0, band_passing=0)
    t = 0
    while report.band_passing < vectors and t < max_draws:
        trial_seed = mix_seed(seed, t)
        x = sample_vector(psi, trial_seed)
        t += 1
        if is_exceptional(in_exceptional_set(x, k_cap, mu)):
            continue
        report.band_passing += 1
        occ = _occurrences(x)
        b_rand = random_subset(m, size, mix_seed(trial_seed, 1))
        b_adv = adversarial_construction(x, size / m).b
        low_r = [i for i in sorted(b_adv) if occ[i] <= r]
        low_s = [i for i in b_adv if occ[i] <= s]
        cases = [
            ("random", b_rand, "random", random_bijection(m, mix_seed(trial_seed, 2))),
            ("adversarial", b_adv, "random", random_bijection(m, mix_seed(trial_seed, 3))),
            ("adversarial", b_adv, "avoiding", avoiding_bijection(low_r, low_s, m)),
        ]
        for b_kind, b, phi_kind, phi in cases:
            w = find_witness_thm2(x, b, phi, r, s)
            report.trials.append(WitnessTrial(t - 1, b_kind, len(b), phi_kind, w))
    report.draws = t
    return report
