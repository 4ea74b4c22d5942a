"""Exit criteria, one test per criterion; each logs a PASS/FAIL line."""

import math
import time
from fractions import Fraction

import pytest

from involution_occ.asymptotic import average_log, chebyshev_bound
from involution_occ.core import canonical_involution
from involution_occ.exact import average_exact, s2_exact
from involution_occ.experiments import threshold_experiment, witness_experiment
from involution_occ.montecarlo import estimate
from involution_occ.numtheory import distinct_lower_bound, factorial_profile, soft_distinct_check
from involution_occ.oracle import oracle_report
from sympy import primerange


def record(log, n, ok, detail):
    log.append(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}")
    assert ok, detail


def f_grid(m):
    half = m // 2
    return sorted({0, half - half % 2, m})


def test_c1_oracle_equivalence(acceptance_log):
    t0 = time.perf_counter()
    mismatches = []
    for m in (2, 4, 6):
        for f in range(0, m + 1, 2):
            rep = oracle_report(canonical_involution(m, f))
            for k, s, sq in rep.per_k:
                if average_exact(m, f, k) != Fraction(s, m * rep.total_vectors) or s2_exact(m, f, k) != sq:
                    mismatches.append((m, f, k))
    elapsed = time.perf_counter() - t0
    record(acceptance_log, 1, not mismatches and elapsed < 10,
           f"oracle == closed forms exactly, mismatches={mismatches}, {elapsed:.2f}s < 10s")


def test_c2_closed_form_identities(acceptance_log):
    t0 = time.perf_counter()
    bad = []
    for m in range(2, 65, 2):
        for f in f_grid(m):
            vals = [average_exact(m, f, k) for k in range(m + 1)]
            if sum(vals) != 1 or sum(k * v for k, v in enumerate(vals)) != 1:
                bad.append((m, f))
    elapsed = time.perf_counter() - t0
    record(acceptance_log, 2, not bad and elapsed < 30,
           f"sum A = 1 and sum k A = 1 exactly for M <= 64, failures={bad}, {elapsed:.2f}s < 30s")


def test_c3_float_cross_check(acceptance_log):
    worst = 0.0
    for m in range(2, 65, 2):
        for f in f_grid(m):
            for k in range(m + 1):
                a = average_exact(m, f, k)
                if a > 0:
                    worst = max(worst, abs(average_log(m, f, k) - float(a)) / float(a))
    record(acceptance_log, 3, worst <= 1e-9, f"max relative error {worst:.2e} <= 1e-9")


def test_c4_main_term_convergence(acceptance_log):
    rows = []
    ok = True
    for m in (100, 10**3, 10**4, 10**5, 10**6):
        g0 = abs(average_log(m, 0, 0) - math.exp(-1)) * m
        g1 = abs(average_log(m, m, 0) - math.exp(-0.5)) * m
        ok &= g0 <= 0.5 and g1 <= 0.5
        rows.append(f"M={m}: {g0:.3f},{g1:.3f}")
    record(acceptance_log, 4, ok, "M*|A - MT| <= 0.5 for f=0 and f=M; " + "; ".join(rows))


def test_c5_concentration(acceptance_log):
    m = 1000
    t0 = time.perf_counter()
    summary = estimate(canonical_involution(m, 0), 2, 10**4, seed=1, window=m**-0.25)
    elapsed = time.perf_counter() - t0
    ok = elapsed < 120
    parts = []
    for k in (0, 1, 2):
        st = summary.stat(k)
        bound = chebyshev_bound(m, 0, k, summary.window)
        z = abs(st.mean_ratio - average_log(m, 0, k)) / summary.standard_error(k)
        ok &= st.within_window_fraction >= bound - 0.01 and z < 5
        parts.append(f"k={k} frac={st.within_window_fraction:.4f} bound={bound:.4f} z={z:.2f}")
    record(acceptance_log, 5, ok, "; ".join(parts) + f"; {elapsed:.1f}s < 120s")


@pytest.fixture(scope="module")
def threshold_report():
    return threshold_experiment(2000, 100, seed=1, mu=0.003, upper=0.87, lower=0.86, random_phis=100)


def test_c6_threshold_positive(acceptance_log, threshold_report):
    passing = threshold_report.band_passing
    failures = sum(t.upper_failures for t in passing)
    checked = sum(t.upper_checked for t in passing)
    ok = bool(passing) and failures == 0
    record(acceptance_log, 6, ok,
           f"{len(passing)}/100 vectors in band, witness found in {checked - failures}/{checked} (b, phi) cases at 0.87")


def test_c7_threshold_negative(acceptance_log, threshold_report):
    passing = threshold_report.band_passing
    blocked = sum(t.lower_succeeded and t.lower_witness is None for t in passing)
    ok = bool(passing) and blocked == len(passing)
    record(acceptance_log, 7, ok, f"adversarial phi at 0.86 leaves no witness in {blocked}/{len(passing)} vectors")


def test_c8_witness_grid(acceptance_log):
    parts = []
    ok = True
    for r, s in ((0, 1), (1, 1), (2, 2)):
        rep = witness_experiment(2000, r, s, seed=1, mu=0.01, vectors=50)
        found = sum(t.witness is not None for t in rep.trials)
        ok &= rep.band_passing == 50 and found == len(rep.trials)
        parts.append(f"(r,s)=({r},{s}) |b|={rep.b_size} {found}/{len(rep.trials)}")
    record(acceptance_log, 8, ok, "; ".join(parts))


def test_c9_factorial(acceptance_log):
    fp = factorial_profile(13)
    ok = fp.profile.counts[:3] == (3, 6, 3) and fp.distinct_count == 9
    wilson = all(factorial_profile(p).wilson_ok for p in primerange(3, 10**4))
    soft = []
    for p in (1009, 10007, 100003):
        prof = factorial_profile(p)
        soft_distinct_check(prof)  # warning only
        soft.append(f"p={p}: {prof.distinct_count} >= {distinct_lower_bound(p)}")
    record(acceptance_log, 9, ok and wilson, f"p=13 profile (3,6,3), 9 distinct; Wilson p<1e4: {wilson}; " + "; ".join(soft))
