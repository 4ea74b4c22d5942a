"""Limiting densities, log-domain evaluation for large universes, and the
concentration and threshold constants built on them.

The large-``m`` path never forms ``m ** (m/2)``.  Each counting term is
rewritten as a product of factors close to one, e.g.::

    C(h, k) * (2/m)**k = prod_{i<k} (1 - i/h) / k!      (h = m/2)

and the logarithms are summed before a single ``exp``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import exact
from .errors import RangeError

EXACT_CUTOFF = 64
_FALLING_LOOP_MAX = 2048
_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class AsymptoticParams:
    """Scalar knobs of the asymptotic statements.

    ``eta`` only describes how precisely the fixed-point count approximates
    ``theta * m``; with an exact ``f`` it has no effect on any computed value.
    """

    theta: float = 0.0
    eta: float = 0.0
    delta: float = 0.25
    dlt: float | None = None
    mu: float = 0.01

    def __post_init__(self):
        if not 0.0 <= self.theta <= 1.0:
            raise RangeError(f"theta must lie in [0, 1], got {self.theta}")
        if not 0.0 <= self.eta < 1.0:
            raise RangeError(f"eta must lie in [0, 1), got {self.eta}")
        if self.delta <= 0:
            raise RangeError(f"delta must be positive, got {self.delta}")
        if 2 * self.delta + self.eta >= 1:
            raise RangeError(f"need 2*delta + eta < 1, got delta={self.delta}, eta={self.eta}")
        if self.dlt is not None and self.dlt <= 0:
            raise RangeError(f"window must be positive, got {self.dlt}")
        if not 0.0 < self.mu:
            raise RangeError(f"mu must be positive, got {self.mu}")

    def window(self, m: int) -> float:
        return self.dlt if self.dlt is not None else m ** (-self.delta)


def main_term(k: int, theta: float) -> float:
    """Limiting density of ids occurring exactly ``k`` times."""
    if k < 0:
        raise RangeError(f"k must be >= 0, got {k}")
    if not 0.0 <= theta <= 1.0:
        raise RangeError(f"theta must lie in [0, 1], got {theta}")
    value = (1.0 - theta) * math.exp(-1.0 - math.lgamma(k + 1))
    if k % 2 == 0:
        j = k // 2
        value += theta * math.exp(-0.5 - j * _LOG2 - math.lgamma(j + 1))
    return value


def _log_falling(n: int, h: int) -> float:
    """``log(h (h-1) ... (h-n+1) / h**n)``; ``-inf`` when ``n > h``."""
    if n > h:
        return -math.inf
    if n <= _FALLING_LOOP_MAX:
        return math.fsum(math.log1p(-i / h) for i in range(1, n))
    return math.lgamma(h + 1) - math.lgamma(h - n + 1) - n * math.log(h)


def _log_pow1m(x: float, n: int) -> float:
    """``n * log(1 - x)`` with ``0 * log(0) == 0``."""
    if n == 0:
        return 0.0
    if x >= 1.0:
        return -math.inf
    return n * math.log1p(-x)


def _log_count(count: int, m: int) -> float:
    return math.log(count) - math.log(m) if count > 0 else -math.inf


def _exp(*logs: float) -> float:
    total = math.fsum(logs) if all(v != -math.inf for v in logs) else -math.inf
    return math.exp(total) if total != -math.inf else 0.0


def _terms(m: int, f: int, k: int) -> dict[str, float]:
    # Every term of the average and of S2 / m**(h+2), in floating point.
    h = m // 2
    lgk = math.lgamma(k + 1)
    out = {
        "t1": _exp(_log_count(m - f, m), _log_falling(k, h), -lgk, _log_pow1m(2 / m, h - k)),
        "t2": 0.0,
        "u2": 0.0,
        "v2": 0.0,
        "v3": 0.0,
    }
    if m - f - 2 > 0 and 2 * k <= h:
        out["u2"] = _exp(
            _log_count(m - f, m),
            _log_count(m - f - 2, m),
            _log_falling(2 * k, h),
            -2 * lgk,
            _log_pow1m(4 / m, h - 2 * k),
        )
    if k % 2 == 0:
        j = k // 2
        lgj = math.lgamma(j + 1)
        out["t2"] = _exp(_log_count(f, m), -j * _LOG2, _log_falling(j, h), -lgj, _log_pow1m(1 / m, h - j))
        if 0 < f < m and 3 * j <= h:
            out["v2"] = _exp(
                math.log(2),
                _log_count(f, m),
                _log_count(m - f, m),
                -j * _LOG2,
                _log_falling(3 * j, h),
                -lgj,
                -lgk,
                _log_pow1m(3 / m, h - 3 * j),
            )
        if f > 1 and k <= h:
            out["v3"] = _exp(
                _log_count(f, m),
                _log_count(f - 1, m),
                -k * _LOG2,
                _log_falling(k, h),
                -2 * lgj,
                _log_pow1m(2 / m, h - k),
            )
    return out


def average_log(m: int, f: int, k: int) -> float:
    """Floating-point ``A(k, m)`` usable for very large ``m``."""
    exact.check_args(m, f, k)
    t = _terms(m, f, k)
    return t["t1"] + t["t2"]


def s2_normalized_log(m: int, f: int, k: int) -> float:
    """Floating-point ``S2(k, m) / m**(m/2 + 2)``."""
    exact.check_args(m, f, k)
    t = _terms(m, f, k)
    a = t["t1"] + t["t2"]
    return (a + t["t1"]) / m + t["u2"] + t["v2"] + t["v3"]


def second_moment_log(m: int, f: int, k: int, center: float) -> float:
    exact.check_args(m, f, k)
    t = _terms(m, f, k)
    a = t["t1"] + t["t2"]
    s2n = (a + t["t1"]) / m + t["u2"] + t["v2"] + t["v3"]
    return max(0.0, center * center - 2.0 * center * a + s2n)


def second_moment(m: int, f: int, k: int, center: float, exact_cutoff: int = EXACT_CUTOFF) -> float:
    if m <= exact_cutoff:
        return exact.second_moment_about(m, f, k, center)
    return second_moment_log(m, f, k, center)


def chebyshev_bound(m: int, f: int, k: int, dlt: float, exact_cutoff: int = EXACT_CUTOFF) -> float:
    """Lower bound on the fraction of vectors with ``|m_k/m - MT(k)| < dlt``."""
    if not dlt > 0:
        raise RangeError(f"window must be positive, got {dlt}")
    exact.check_args(m, f, k)
    moment = second_moment(m, f, k, main_term(k, f / m), exact_cutoff)
    return min(1.0, max(0.0, 1.0 - moment / (dlt * dlt)))


def e_cumulative(k: int) -> float:
    """``exp(-1) * sum_{j<=k} 1/j!``: Poisson(1) mass of ``{0..k}``."""
    if k < 0:
        raise RangeError(f"k must be >= 0, got {k}")
    return math.fsum(math.exp(-1.0 - math.lgamma(j + 1)) for j in range(k + 1))


def threshold_c(r: int, s: int, mu: float) -> float:
    """Set density above which two-sided witnesses exist outside the
    exceptional set."""
    if r < 0 or s < 0 or r + s < 1:
        raise RangeError(f"need r, s >= 0 and r + s >= 1, got r={r}, s={s}")
    if not 0.0 < mu < 1.0:
        raise RangeError(f"mu must lie in (0, 1), got {mu}")
    return (3.0 - (1.0 - mu) * (e_cumulative(r) + e_cumulative(s))) / 2.0


def theorem3_threshold() -> float:
    """Exact density ``1/2 + 1/e`` at which the single-link witness switches on."""
    return 0.5 + math.exp(-1.0)
