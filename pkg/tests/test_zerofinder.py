"""Winding counts, Newton refinement, certificates, pipeline honesty."""

import cmath
import math

import pytest

from zetalab.errors import (LeftHalfPlane, NegativeMargin, NoConvergence,
                            ZeroOnBoundary)
from zetalab.series import Alpha, PeriodicFunction, lfunction
from zetalab.twist import TwistedSeries, find_sigma0, truncation_index
from zetalab.zerofinder import (PipelineBudget, QuadratureSpec, Rectangle,
                                argument_count,
                                argument_count_circle, find_zero_pipeline,
                                newton_refine, rouche_certificate,
                                rouche_check)
from zetalab.kronecker import SearchBudget

ONE = PeriodicFunction.constant()


def dirichlet_poly(s):
    # zeros exactly at 1.05 + 2 pi i k / log 2
    return 1 - 2 ** 1.05 * 2 ** (-s)


def test_argument_count_dirichlet_poly():
    count = argument_count(dirichlet_poly, Rectangle(1.01, 1.1, -1.0, 20.0))
    assert count == 3


def test_argument_count_zeta_zero_free():
    ev = lambda s: lfunction(s, ONE, 1.0, tol=1e-10)
    assert argument_count(ev, Rectangle(1.1, 2.0, 0.0, 30.0)) == 0


def test_argument_count_polynomial():
    pol = lambda s: (s - (1.2 + 5j)) * (s - (1.3 + 7j))
    assert argument_count(pol, Rectangle(1.05, 2.0, 0.0, 10.0)) == 2
    assert argument_count(pol, Rectangle(1.05, 2.0, 0.0, 6.0)) == 1
    assert argument_count(pol, Rectangle(1.05, 2.0, 8.0, 10.0)) == 0


def test_argument_count_refinement_invariant():
    rect = Rectangle(1.01, 1.1, -1.0, 20.0)
    base = argument_count(dirichlet_poly, rect,
                          QuadratureSpec(initial_points=64))
    doubled = argument_count(dirichlet_poly, rect,
                             QuadratureSpec(initial_points=128))
    redoubled = argument_count(dirichlet_poly, rect,
                               QuadratureSpec(initial_points=256))
    assert base == doubled == redoubled == 3


def test_zero_on_boundary_detected():
    pol = lambda s: s - (1.5 + 5j)
    with pytest.raises(ZeroOnBoundary):
        argument_count(pol, Rectangle(1.5 - 1e-15, 2.0, 4.0, 6.0),
                       QuadratureSpec(initial_points=64, zero_floor=1e-9))


def test_rectangle_validation():
    with pytest.raises(ValueError):
        Rectangle(0.9, 2.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        Rectangle(1.2, 1.1, 0.0, 1.0)


def test_conjugate_rectangle_count():
    pol = lambda s: (s - (1.2 + 5j)) * (s - (1.2 - 5j))   # real coefficients
    up = argument_count(pol, Rectangle(1.05, 2.0, 4.0, 6.0))
    down = argument_count(pol, Rectangle(1.05, 2.0, -6.0, -4.0))
    assert up == down == 1


def test_newton_dirichlet_poly():
    rec = newton_refine(dirichlet_poly, 1.04 + 9j, tol=1e-12)
    assert abs(rec.s - complex(1.05, 2 * math.pi / math.log(2))) < 1e-8
    assert rec.residual <= 1e-12


def test_newton_polynomial_exact():
    rec = newton_refine(lambda s: s - (1.2 + 5j), 1.5 + 4.5j, tol=1e-14)
    assert abs(rec.s - (1.2 + 5j)) < 1e-12


def test_newton_failure_modes():
    ev = lambda s: lfunction(s, ONE, 1.0, tol=1e-10)
    with pytest.raises((NoConvergence, LeftHalfPlane)):
        newton_refine(ev, 1.5 + 10j, tol=1e-12)


def synthetic_pair(rng):
    """A comparison function with one known zero and a perturbed target.

    F(s) = (s - z0) * g(s) with |g| bounded away from zero; L = F + c for a
    random constant c, so sup |L - F| = |c| exactly on any circle.
    """
    z0 = complex(rng.uniform(1.2, 1.6), rng.uniform(-2, 2))
    slope = complex(rng.uniform(0.5, 2.0), rng.uniform(-0.5, 0.5))
    F = lambda s: (s - z0) * slope
    c = rng.uniform(0.0, 0.6) * cmath.exp(2j * math.pi * rng.uniform())
    L = lambda s: F(s) + c
    return z0, F, L, c


def test_rouche_synthetic_cross_validation(rng):
    false_positives = 0
    for _ in range(50):
        z0, F, L, c = synthetic_pair(rng)
        radius = rng.uniform(0.1, 0.3)
        cert = rouche_certificate(F, lambda s: c, z0.real, radius,
                                  samples=256, f_deriv_bound=2.5,
                                  diff_deriv_bound=0.0, diff_tail=0.0)
        center = complex(z0.real, 0.0)
        inside = abs(center - z0) < radius
        if cert.margin > 0:
            count_l = argument_count_circle(L, center, radius)
            count_f = argument_count_circle(F, center, radius)
            if count_l != count_f:
                false_positives += 1
            # the certified disk really contains a zero of L iff F had one
            assert count_f == (1 if inside else 0)
    assert false_positives == 0


def test_rouche_identity_comparison():
    # comparison against itself: sup_diff = 0, margin = eps_min > 0, and
    # the disk winding agrees with the comparison function's own count
    series = TwistedSeries(ONE, 2.0)     # plain series, no twist
    cert = rouche_check(ONE, 2.0, series, sigma0=1.8, delta1=0.3, t=0.0,
                        samples=128, n_cut=64)
    assert cert.sup_diff == 0.0
    assert cert.margin == cert.eps_min > 0
    assert cert.inner_count == 0         # no zeros, counts agree at zero


def test_rouche_adversarial_shift_fails():
    m = truncation_index(ONE, 1.0, 1.0)
    series = TwistedSeries(ONE, 1.0, flip_index=m)
    sigma0 = find_sigma0(series, 1.0)
    with pytest.raises(NegativeMargin):
        rouche_check(ONE, 1.0, series, sigma0, delta1=0.2, t=0.1,
                     samples=128, n_cut=500)


def test_pipeline_residue_zero():
    res = find_zero_pipeline(PeriodicFunction((1.0, -1.0)), 1.0, 0.5)
    assert not res.success
    assert res.failed_stage == "residue"
    assert res.failure["error"] == "ResidueZero"


def test_pipeline_rational_shift_honest():
    budget = PipelineBudget(kron=SearchBudget(max_t=2e3,
                                              max_iterations=500_000))
    res = find_zero_pipeline(ONE, Alpha.rational(1, 3), 0.5, budget)
    if res.success:
        assert res.record.certificate.margin > 0
        assert res.record.residual <= budget.newton_tol
    else:
        assert res.failed_stage in ("kronecker", "certificate",
                                    "circle_geometry", "newton")
        assert res.failure is not None


def test_pipeline_smoke_structured():
    budget = PipelineBudget(kron=SearchBudget(max_t=5e3,
                                              max_iterations=400_000))
    res = find_zero_pipeline(ONE, Alpha.decimal("0.7853981634"), 0.5, budget)
    # all early stages ran and were recorded
    assert "truncation_index" in res.stages
    assert "sigma0" in res.stages
    assert 1 < res.stages["sigma0"] < 1.5
    payload = res.to_json()
    assert payload["success"] == res.success
    if res.success:
        assert res.record.certificate.margin > 0
    else:
        assert res.failed_stage is not None and res.failure is not None
