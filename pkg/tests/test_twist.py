"""Twisted series: truncation, sign change, greedy induction."""

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetalab.errors import AnnulusGap, CaseUnreachable, NoSuchIndex, \
    SignChangeNotBracketed
from zetalab.series import Alpha, PeriodicFunction
from zetalab.twist import (BlockSchedule, GreedyState, TwistedSeries,
                           choose_case_sigma, find_sigma0, greedy_step,
                           run_schedule, truncation_index)
from zetalab.twist import _correction

ONE = PeriodicFunction.constant()
SQRT2 = Alpha.quadratic(0, 1, 2)


def head_and_bound(f, alpha, delta, m):
    a = float(alpha)
    head = math.fsum(f(n) / (n + a) ** (1 + delta) for n in range(m + 1))
    bound = f.max_abs * (m + a) ** (-delta) / delta
    return head, bound


def test_truncation_examples():
    # delta = 1, alpha = 1: head(0) = 1 equals the bound, head(1) beats it
    assert truncation_index(ONE, 1.0, 1.0) == 1
    h, b = head_and_bound(ONE, 1.0, 1.0, 0)
    assert not h > b
    h, b = head_and_bound(ONE, 1.0, 1.0, 1)
    assert h > b
    # huge delta: the first term dominates alone
    assert truncation_index(ONE, 1.0, 10.0) == 0
    # the returned index satisfies the inequality it claims
    m = truncation_index(ONE, 1.0, 0.35)
    h, b = head_and_bound(ONE, 1.0, 0.35, m)
    assert h > b
    h, b = head_and_bound(ONE, 1.0, 0.35, m - 1)
    assert not h > b


def test_truncation_small_delta_grows_fast():
    m = truncation_index(ONE, 1.0, 0.01)
    assert m > 1e25          # exp-scale growth in 1/delta
    # the inequality holds at the returned index, checked through the
    # split-tail evaluator (term-by-term is impossible here)
    from zetalab.series import series_head
    s = 1.01
    head = series_head(s + 0j, ONE, 1.0, m, tol=1e-9).real
    bound = (m + 1.0) ** -0.01 / 0.01
    assert head > bound


def test_truncation_rejects_nonpositive_residue():
    with pytest.raises(NoSuchIndex):
        truncation_index(PeriodicFunction((1.0, -1.0)), 1.0, 1.0)
    with pytest.raises(NoSuchIndex):
        truncation_index(PeriodicFunction((-1.0,)), 1.0, 1.0)


def test_head_minus_bound_monotone_for_positive_f():
    f = PeriodicFunction((1.0, 0.5, 1.4))
    gaps = []
    for m in range(0, 60):
        h, b = head_and_bound(f, 0.8, 0.5, m)
        gaps.append(h - b)
    assert all(b > a for a, b in zip(gaps, gaps[1:]))


def test_find_sigma0_classic():
    # flip after n = 1: F(s) = 2(1 + 2^-s) - zeta(s); root frozen from an
    # independent mpmath root-find of that closed form
    series = TwistedSeries(ONE, 1.0, flip_index=1)
    sigma0 = find_sigma0(series, 1.0, tol=1e-10)
    assert abs(sigma0 - 1.4740898895836146) < 1e-7
    assert abs(series.evaluate(complex(sigma0, 0)).real) <= 1e-10
    with mp.workdps(30):
        root = mp.findroot(lambda s: 2 * (1 + 2 ** -s) - mp.zeta(s), 1.5)
        assert abs(sigma0 - float(root)) < 1e-8


def test_sign_flip_positive_at_right_endpoint():
    rng = np.random.default_rng(2)
    for _ in range(5):
        q = int(rng.integers(1, 5))
        f = PeriodicFunction(tuple(rng.uniform(0.5, 1.5, q)))
        alpha = float(rng.uniform(0.3, 3))
        delta = float(rng.uniform(0.2, 1.5))
        m = truncation_index(f, alpha, delta)
        series = TwistedSeries(f, alpha, flip_index=m)
        assert series.evaluate(complex(1 + delta, 0)).real > 0
        sigma0 = find_sigma0(series, delta)
        assert 1 < sigma0 < 1 + delta


def test_sign_flip_identity_against_brute_force():
    f = PeriodicFunction((1.2, 0.9))
    m = 7
    series = TwistedSeries(f, 1.3, flip_index=m)
    s = 3 + 0j
    brute = math.fsum((f(n) if n <= m else -f(n)) / (n + 1.3) ** 3
                      for n in range(400_000))
    assert abs(series.evaluate(s).real - brute) < 1e-10


def test_find_sigma0_requires_bracket():
    falt = PeriodicFunction((1.0, -1.0))   # no pole: F does not blow down
    series = TwistedSeries(falt, 1.0, flip_index=3)
    with pytest.raises(SignChangeNotBracketed):
        find_sigma0(series, 1.0)


@given(st.complex_numbers(max_magnitude=1e6, allow_nan=False,
                          allow_infinity=False),
       st.floats(1e-9, 1e6))
@settings(max_examples=300, deadline=None)
def test_correction_rule_identity(lam, s3):
    z = _correction(lam, s3)
    assert abs(abs(lam + z) - max(0.0, abs(lam) - s3)) <= 1e-12 * max(1.0, abs(lam))


def test_correction_rule_cases():
    assert _correction(0j, 2.0) == 0j
    assert _correction(3 + 0j, 5.0) == -3 + 0j          # full cancellation
    z = _correction(10 + 0j, 4.0)
    assert abs(z - (-4 + 0j)) < 1e-14                   # clamped pullback
    assert abs(abs(10 + z) - 6.0) < 1e-14


def test_greedy_step_examples():
    state = GreedyState(0, 0j, 0, 0, 0, 0, 0j)
    free = [(11, 1.0), (12, 1.0), (13, 1.0)]
    new, angles = greedy_step(state, free, fixed_sum=0j, fixed_mass=0.0,
                              tail_mass=1.0)
    assert new.correction == 0j
    assert abs(new.partial) <= 1e-9

    state = GreedyState(0, 3 + 0j, 0, 0, 0, 0, 0j)
    new, _ = greedy_step(state, free, 0j, 0.0, 1.0)
    assert new.correction == -3 + 0j
    assert abs(new.partial) <= 1e-9

    state = GreedyState(0, 10 + 0j, 0, 0, 0, 0, 0j)
    free4 = [(n, 1.0) for n in range(4)]
    new, _ = greedy_step(state, free4, 0j, 0.0, 1.0)
    assert abs(new.correction + 4) < 1e-12
    assert abs(abs(new.partial) - 6.0) <= 1e-9


def test_greedy_step_annulus_gap():
    state = GreedyState(0, 1 + 0j, 0, 0, 0, 0, 0j)
    with pytest.raises(AnnulusGap):
        greedy_step(state, [(5, 1.0)], 0j, 0.0, 1.0)
    with pytest.raises(AnnulusGap):
        greedy_step(state, [(5, 1.0), (6, 3.0)], 0j, 0.0, 1.0)


def test_case_sigma_found_and_unreachable():
    sigma = choose_case_sigma(ONE, SQRT2, 1000)
    assert 1 < sigma < 2
    from zetalab.series import series_head, series_tail
    head = series_head(sigma + 0j, ONE, SQRT2, 1000, tol=1e-9).real
    tail = series_tail(sigma + 0j, ONE, SQRT2, 1001, tol=1e-9).real
    assert head < 1e-2 * tail
    with pytest.raises(CaseUnreachable):
        choose_case_sigma(PeriodicFunction((1.0, -1.0)), SQRT2, 1000)


def test_fixed_sigma_too_large_halts():
    # an exponent with a small tail cannot satisfy the damping inequality
    schedule = BlockSchedule(n1=1000, num_blocks=3, sigma=1.5)
    report = run_schedule(ONE, SQRT2, schedule, hp_check=False)
    assert not report.ok
    assert report.halted_at == 1
    assert not report.blocks[0].damping_ok


def test_short_authentic_run():
    schedule = BlockSchedule(n1=1000, num_blocks=5)
    report = run_schedule(ONE, SQRT2, schedule, hp_check=False)
    assert report.ok and report.halted_at is None
    assert len(report.blocks) == 5
    a = SQRT2.value
    for row in report.blocks:
        assert row.damping_ok
        assert row.damping_lhs < row.damping_rhs
        assert row.realize_err < 1e-8
        assert row.pair_ratio < 3.0
        # masses recomputed from scratch here
        s2 = math.fsum(1.0 / (n + a) ** report.sigma
                       for n in range(row.n_start + 1, row.n_end + 1)
                       if n not in range(0))  # all block terms
        assert row.s2 + row.s3 <= s2 + 1e-12
        assert abs((row.s2 + row.s3) - s2) < 1e-9


def test_greedy_blocks_partition():
    schedule = BlockSchedule(n1=500, num_blocks=4)
    report = run_schedule(ONE, SQRT2, schedule, hp_check=False)
    prev_end = None
    for row in report.blocks:
        assert row.free_count + row.fixed_count == row.n_end - row.n_start
        if prev_end is not None:
            assert row.n_start == prev_end
        prev_end = row.n_end


def test_synthetic_mode_deterministic():
    schedule = BlockSchedule(n1=2000, num_blocks=3, mode="synthetic",
                             synthetic_density=0.7)
    r1 = run_schedule(ONE, SQRT2, schedule, chi_seed=5, hp_check=False)
    r2 = run_schedule(ONE, SQRT2, schedule, chi_seed=5, hp_check=False)
    assert [b.to_json() for b in r1.blocks] == [b.to_json() for b in r2.blocks]
    r3 = run_schedule(ONE, SQRT2, schedule, chi_seed=6, hp_check=False)
    assert [b.free_count for b in r1.blocks] != [b.free_count for b in r3.blocks]


def test_hp_recheck_agrees_with_float():
    schedule = BlockSchedule(n1=800, num_blocks=3)
    report = run_schedule(ONE, SQRT2, schedule, hp_check=True)
    for row in report.blocks:
        assert row.damping_ok_hp
        assert abs(row.damping_lhs - row.damping_lhs_hp) < 1e-9
        assert abs(row.damping_rhs - row.damping_rhs_hp) < 1e-9
