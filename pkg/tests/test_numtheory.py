import logging

import pytest
from sympy import primerange

from involution_occ.core import validate_involution
from involution_occ.errors import NotPrime, RangeError
from involution_occ.numtheory import (
    factorial_profile,
    inverse_involution,
    poisson_comparison,
    soft_distinct_check,
)


def test_p13_profile():
    fp = factorial_profile(13)
    assert fp.residues == (1, 2, 6, 11, 3, 5, 9, 7, 11, 6, 1, 12)
    assert fp.profile.counts[:3] == (3, 6, 3)
    assert fp.distinct_count == 9
    assert fp.wilson_ok


def test_p5_profile():
    fp = factorial_profile(5)
    assert fp.residues == (1, 2, 1, 4)
    assert fp.profile.counts[:3] == (1, 2, 1)


def test_not_prime():
    with pytest.raises(NotPrime):
        factorial_profile(4)
    with pytest.raises(NotPrime):
        inverse_involution(1)
    with pytest.raises(RangeError):
        factorial_profile(2)


def test_inverse_involution():
    psi = inverse_involution(7)
    # classes 2<->4, 3<->5, ids are class - 1
    assert psi.map == (0, 3, 4, 1, 2, 5)
    assert psi.fixed_count == 2
    assert inverse_involution(3).map == (0, 1)
    assert inverse_involution(13).fixed_count == 2


def test_inverse_always_valid():
    for p in primerange(3, 2000):
        psi = inverse_involution(p)
        assert validate_involution(psi.m, psi.map).fixed_count == 2


def test_wilson_exhaustive():
    for p in primerange(3, 10**4):
        assert factorial_profile(p).residues[-1] == p - 1


def test_poisson_comparison():
    fp = factorial_profile(13)
    rows = poisson_comparison(fp, 20)
    assert len(rows) == 13  # clipped to k_max = p - 1
    assert rows[0].empirical_ratio == 0.25
    # model at theta = 2/12
    assert rows[0].model_ratio == pytest.approx((10 / 12) / 2.718281828459045 + (2 / 12) * 2.718281828459045**-0.5)
    assert rows[0].abs_gap == pytest.approx(abs(0.25 - rows[0].model_ratio))


def test_soft_distinct_check_logs(caplog):
    fp = factorial_profile(13)
    with caplog.at_level(logging.WARNING):
        assert soft_distinct_check(fp)
    assert not caplog.records
