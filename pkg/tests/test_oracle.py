import pytest

from involution_occ.core import canonical_involution, validate_involution
from involution_occ.errors import TooLarge
from involution_occ.oracle import enumerate_vectors, oracle_report

from .test_core import random_involution


def test_enumerate_small():
    assert [x.as_tuple() for x in enumerate_vectors(validate_involution(2, [1, 0]))] == [(0, 1), (1, 0)]
    assert [x.as_tuple() for x in enumerate_vectors(validate_involution(2, [0, 1]))] == [(0, 0), (1, 1)]
    xs = list(enumerate_vectors(canonical_involution(4, 0)))
    assert len(xs) == 16
    assert xs[0].as_tuple() == (0, 0, 1, 1)


@pytest.mark.parametrize(
    "mapping, k, s, sq",
    [([1, 0, 3, 2], 1, 32, 128), ([0, 1], 0, 2, 2), ([1, 0], 1, 4, 8)],
)
def test_oracle_report_values(mapping, k, s, sq):
    rep = oracle_report(validate_involution(len(mapping), mapping))
    assert rep.sum_mk(k) == s
    assert rep.sum_mk_sq(k) == sq


@pytest.mark.parametrize("m", [2, 4, 6])
def test_report_invariants(m):
    for f in range(0, m + 1, 2):
        rep = oracle_report(canonical_involution(m, f))
        assert sum(s for _, s, _ in rep.per_k) == m * rep.total_vectors
        assert sum(k * s for k, s, _ in rep.per_k) == m * rep.total_vectors


def test_conjugacy_independence():
    import random

    rng = random.Random(5)
    for f in (0, 2, 4, 6):
        base = oracle_report(canonical_involution(6, f))
        for _ in range(4):
            assert oracle_report(random_involution(6, f, rng)).per_k == base.per_k


def test_enumeration_limit():
    with pytest.raises(TooLarge):
        oracle_report(canonical_involution(16, 0))
    with pytest.raises(TooLarge):
        next(enumerate_vectors(canonical_involution(4, 0), limit=10))
