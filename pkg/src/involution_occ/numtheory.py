"""Factorials modulo a prime viewed as a sequence over the nonzero residues.

Residue class ``c`` in ``1..p-1`` is identified with element id ``c - 1``, so
the sequence ``1!, 2!, ..., (p-1)! mod p`` has length ``M = p - 1`` over a
universe of size ``M``, matching the occurrence model.  Modular inversion is an
involution on that universe with exactly two fixed points (``1`` and ``p-1``).

The comparison with the model is heuristic: the factorial sequence is not
claimed to be a uniform symmetric vector.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from sympy import isprime

from .asymptotic import main_term
from .core import Involution, OccurrenceProfile, occurrence_profile, validate_involution
from .errors import NotPrime, RangeError

log = logging.getLogger(__name__)

P_MAX = 2**61 - 1


@dataclass(frozen=True)
class FactorialProfile:
    p: int
    residues: tuple[int, ...]
    profile: OccurrenceProfile
    distinct_count: int

    @property
    def wilson_ok(self) -> bool:
        return self.residues[-1] == self.p - 1


@dataclass(frozen=True)
class ComparisonRow:
    k: int
    empirical_ratio: float
    model_ratio: float
    abs_gap: float


def check_prime(p: int) -> None:
    if p < 3 or p > P_MAX:
        if p == 2 or (p > P_MAX and isprime(p)):
            raise RangeError(f"p must lie in 3..2**61-1, got {p}")
        raise NotPrime(f"{p} is not an odd prime")
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")


def factorial_residues(p: int) -> tuple[int, ...]:
    out = []
    acc = 1
    for n in range(1, p):
        acc = acc * n % p
        out.append(acc)
    return tuple(out)


def factorial_profile(p: int) -> FactorialProfile:
    check_prime(p)
    residues = factorial_residues(p)
    profile = occurrence_profile([r - 1 for r in residues], m=p - 1)
    return FactorialProfile(p=p, residues=residues, profile=profile, distinct_count=(p - 1) - profile[0])


def inverse_involution(p: int) -> Involution:
    """Modular inversion on ids ``0..p-2`` (id ``i`` is the class ``i + 1``)."""
    check_prime(p)
    mapping = [pow(c, -1, p) - 1 for c in range(1, p)]
    return validate_involution(p - 1, mapping)


def poisson_comparison(profile: FactorialProfile, k_max: int) -> list[ComparisonRow]:
    """Empirical ``m_k/M`` against the model density at ``theta = 2/(p-1)``."""
    m = profile.p - 1
    if k_max < 0:
        raise RangeError(f"k_max must be >= 0, got {k_max}")
    k_max = min(k_max, m)
    theta = 2 / m
    rows = []
    for k in range(k_max + 1):
        emp = profile.profile[k] / m
        model = main_term(k, theta)
        rows.append(ComparisonRow(k, emp, model, abs(emp - model)))
    return rows


def distinct_lower_bound(p: int) -> int:
    """``floor(0.9 * sqrt(2p))``, a soft sanity floor for the distinct count."""
    return math.floor(0.9 * math.sqrt(2 * p))


def soft_distinct_check(profile: FactorialProfile) -> bool:
    bound = distinct_lower_bound(profile.p)
    ok = profile.distinct_count >= bound
    if not ok:
        log.warning("p=%d: %d distinct factorials < %d", profile.p, profile.distinct_count, bound)
    return ok
