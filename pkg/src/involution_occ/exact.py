"""Exact rational evaluation of occurrence averages and second moments.

All results are :class:`fractions.Fraction` values computed from the closed
counting formulas in ``m`` (universe size), ``f`` (number of fixed points of
the involution) and ``k`` (occurrence count).

The sum of squares ``S2 = sum_x m_k(x)^2`` is split by ordered pairs of ids
``(y, y')``:

* ``y == y'``: the diagonal, equal to ``m**(m/2+1) * A``;
* ``y' == psi(y)``, both non-fixed: ``U1``;
* ``y, y'`` non-fixed and unrelated: ``U2``;
* one fixed, one non-fixed (even ``k`` only): ``V2``;
* both fixed, distinct (even ``k`` only): ``V3``.

For ``k = 0`` the same expressions hold (both ids absent); this agrees with the
exhaustive oracle for every ``m <= 8``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import OddSize, ParityMismatch, RangeError

__all__ = [
    "ExactStats",
    "check_args",
    "average_exact",
    "average_numerator",
    "s2_exact",
    "s2_normalized",
    "variance_exact",
    "second_moment_about",
    "exact_stats",
]


@dataclass(frozen=True)
class ExactStats:
    m: int
    f: int
    k: int
    a: Fraction
    s2: int
    s2_normalized: Fraction
    variance: Fraction


def check_args(m: int, f: int, k: int) -> None:
    if m < 2:
        raise RangeError(f"m must be >= 2, got {m}")
    if m % 2:
        raise OddSize(f"m must be even, got {m}")
    if not 0 <= f <= m:
        raise RangeError(f"f must lie in 0..{m}, got {f}")
    if (m - f) % 2:
        raise ParityMismatch(f"m - f must be even, got m={m}, f={f}")
    if not 0 <= k <= m:
        raise RangeError(f"k must lie in 0..{m}, got {k}")


def _term(coeffs: tuple[int, ...], base: int, exponent: int) -> int:
    # Zero coefficients short-circuit before the power, whose base may be
    # negative (or whose exponent negative) only on such unreachable branches.
    prod = 1
    for c in coeffs:
        if c == 0:
            return 0
        prod *= c
    if exponent < 0:
        raise AssertionError(f"negative exponent {exponent} behind non-zero coefficient")
    return prod * base**exponent  # Python defines 0**0 == 1


def _u1(m: int, f: int, k: int) -> int:
    h = m // 2
    return _term((m - f, comb(h, k), 2**k), m - 2, h - k)


def _u2(m: int, f: int, k: int) -> int:
    h = m // 2
    return _term(
        ((m - f) * (m - f - 2), comb(h, k), 2**k, comb(h - k, k) if h >= k else 0, 2**k),
        m - 4,
        h - 2 * k,
    )


def _v2(m: int, f: int, k: int) -> int:
    h = m // 2
    j = k // 2
    return _term(
        (2 * f * (m - f), comb(h, j), comb(h - j, k) if h >= j else 0, 2**k),
        m - 3,
        h - 3 * j,
    )


def _v3(m: int, f: int, k: int) -> int:
    h = m // 2
    j = k // 2
    return _term((f * (f - 1), comb(h, j), comb(h - j, j) if h >= j else 0), m - 2, h - k)


def average_numerator(m: int, f: int, k: int) -> int:
    """``sum_x m_k(x)``, i.e. ``A(k, m) * m**(m/2 + 1)``."""
    check_args(m, f, k)
    h = m // 2
    total = _u1(m, f, k)  # non-fixed ids: one occurrence per matching free slot
    if k % 2 == 0:
        total += _term((f, comb(h, k // 2)), m - 1, h - k // 2)
    return total


def average_exact(m: int, f: int, k: int) -> Fraction:
    """Mean of ``m_k(x) / m`` over all psi-symmetric vectors."""
    return Fraction(average_numerator(m, f, k), m ** (m // 2 + 1))


def s2_exact(m: int, f: int, k: int) -> int:
    """``sum_x m_k(x)^2`` over all psi-symmetric vectors."""
    total = average_numerator(m, f, k) + _u1(m, f, k) + _u2(m, f, k)
    if k % 2 == 0:
        total += _v2(m, f, k) + _v3(m, f, k)
    return total


def s2_normalized(m: int, f: int, k: int) -> Fraction:
    return Fraction(s2_exact(m, f, k), m ** (m // 2 + 2))


def variance_exact(m: int, f: int, k: int) -> Fraction:
    return s2_normalized(m, f, k) - average_exact(m, f, k) ** 2


def second_moment_about(m: int, f: int, k: int, center: float) -> float:
    """Mean squared deviation of ``m_k/m`` from ``center``.

    Evaluated as ``Var + (A - center)^2`` so both pieces stay non-negative.
    """
    center = float(center)
    if center != center or center in (float("inf"), float("-inf")):
        raise RangeError(f"center must be finite, got {center}")
    a = average_exact(m, f, k)
    return float(variance_exact(m, f, k)) + (float(a) - center) ** 2


def exact_stats(m: int, f: int, k: int) -> ExactStats:
    a = average_exact(m, f, k)
    s2 = s2_exact(m, f, k)
    s2n = Fraction(s2, m ** (m // 2 + 2))
    return ExactStats(m=m, f=f, k=k, a=a, s2=s2, s2_normalized=s2n, variance=s2n - a * a)
