"""Locating and certifying zeros in the half-plane of absolute convergence.

Three layers:

* argument-principle counting: the winding number of an analytic function
  along a rectangle (or circle) boundary, computed by adaptive phase
  tracking with every consecutive argument step forced below pi/2;

* Newton refinement of individual zeros with a central-difference
  derivative;

* Rouche certificates: on a circle around a real zero sigma0 of a
  comparison function F, verify sup |L(s + it) - F(s)| < min |F(s)| with
  explicit inter-sample Lipschitz slack and a rigorous series tail bound,
  so a positive margin certifies a zero of L(. + it) inside the disk.  The
  certificate is cross-checked against the winding count.

A pipeline chains truncation index -> real zero of the sign-flip twist ->
phase matching (Kronecker search) -> certificate -> Newton refinement, with
every stage failure reported as structured data.  Honest failure at desk
scale is expected and never upgraded to a claim.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (FVanishesOnCircle, LeftHalfPlane, NegativeMargin,
                     NoConvergence, QuadratureStalled, ResidueZero,
                     ZeroOnBoundary, ZetalabError)
from .kronecker import KroneckerProblem, SearchBudget, solve
from .series import PeriodicFunction, lfunction
from .twist import (TwistedSeries, find_sigma0, tail_bound, truncation_index)

__all__ = [
    "Rectangle", "QuadratureSpec", "RoucheCertificate", "ZeroRecord",
    "argument_count", "argument_count_circle", "newton_refine",
    "rouche_certificate", "rouche_check", "PipelineBudget", "PipelineResult",
    "find_zero_pipeline",
]


@dataclass(frozen=True)
class Rectangle:
    """Axis-aligned rectangle inside the half-plane sigma > 1."""

    sigma_min: float
    sigma_max: float
    t_min: float
    t_max: float

    def __post_init__(self):
        if not (self.sigma_min > 1.0):
            raise ValueError("rectangle must satisfy sigma_min > 1")
        if not (self.sigma_min < self.sigma_max and self.t_min < self.t_max):
            raise ValueError("degenerate rectangle")

    def boundary(self, u: float) -> complex:
        """Counterclockwise boundary point for u in [0, 1)."""
        u = u % 1.0
        w, h = self.sigma_max - self.sigma_min, self.t_max - self.t_min
        per = 2 * (w + h)
        d = u * per
        if d < w:
            return complex(self.sigma_min + d, self.t_min)
        d -= w
        if d < h:
            return complex(self.sigma_max, self.t_min + d)
        d -= h
        if d < w:
            return complex(self.sigma_max - d, self.t_max)
        d -= w
        return complex(self.sigma_min, self.t_max - d)


@dataclass(frozen=True)
class QuadratureSpec:
    initial_points: int = 256
    max_points: int = 200_000
    zero_floor: float = 1e-12


def _winding(evaluator, to_point, quad: QuadratureSpec) -> int:
    """Winding number of evaluator along the closed loop u -> to_point(u).

    Each initial segment is subdivided until its argument step is clearly
    below pi/2 and its modulus jump is moderate; the accumulated phase then
    telescopes to the winding number up to rounding noise, and the result
    is accepted only within 0.25 of an integer.
    """
    n0 = max(quad.initial_points, 16)
    spent = [0]

    def sample(u: float) -> complex:
        if spent[0] >= quad.max_points:
            raise QuadratureStalled("refinement cap reached",
                                    points=spent[0])
        spent[0] += 1
        v = evaluator(to_point(u))
        if abs(v) < quad.zero_floor:
            pt = to_point(u)
            raise ZeroOnBoundary("contour value below the zero floor",
                                 at=[pt.real, pt.imag], value=abs(v))
        return v

    us = [i / n0 for i in range(n0)]
    vals = [sample(u) for u in us]
    pieces = []
    for i in range(n0):
        u1, v1 = us[i], vals[i]
        u2 = us[i + 1] if i + 1 < n0 else 1.0
        v2 = vals[(i + 1) % n0]
        stack = [(u1, v1, u2, v2)]
        while stack:
            a, va, b, vb = stack.pop()
            d = cmath.phase(vb / va)
            if abs(d) < math.pi / 2 and abs(math.log(abs(vb / va))) < 1.2:
                pieces.append(d)
                continue
            um = 0.5 * (a + b)
            vm = sample(um)
            stack.append((um, vm, b, vb))
            stack.append((a, va, um, vm))
    total = math.fsum(pieces) / (2 * math.pi)
    nearest = round(total)
    if abs(total - nearest) > 0.25:
        raise QuadratureStalled("phase accounting did not settle",
                                raw=total, points=spent[0])
    return int(nearest)


def argument_count(evaluator, rect: Rectangle,
                   quad: QuadratureSpec | None = None) -> int:
    """Number of zeros (with multiplicity) of evaluator inside rect.

    The evaluator must be analytic on the closed rectangle and nonvanishing
    on the boundary (checked by minimum-modulus sampling; move or shrink
    the rectangle on ZeroOnBoundary).
    """
    quad = quad or QuadratureSpec()
    count = _winding(evaluator, rect.boundary, quad)
    if count < 0:
        raise ZetalabError("negative winding for an analytic integrand",
                           count=count)
    return count


def argument_count_circle(evaluator, center: complex, radius: float,
                          quad: QuadratureSpec | None = None) -> int:
    quad = quad or QuadratureSpec()
    center = complex(center)

    def to_point(u: float) -> complex:
        return center + radius * cmath.exp(2j * math.pi * u)

    count = _winding(evaluator, to_point, quad)
    if count < 0:
        raise ZetalabError("negative winding for an analytic integrand",
                           count=count)
    return count


@dataclass(frozen=True)
class RoucheCertificate:
    """A verified strict inequality sup |L(s+it) - F(s)| < min |F(s)| on
    the circle |s - sigma0| = delta1.

    eps_min and sup_diff are the safe values: sampled extrema already
    tightened/widened by the inter-sample derivative slack and (for
    sup_diff) the series tail beyond the matched cut.  margin > 0 is the
    certificate; inner_count records the winding cross-check."""

    sigma0: float
    delta1: float
    t: float
    eps_min: float
    sup_diff: float
    samples: int
    margin: float
    inner_count: int | None = None

    def to_json(self) -> dict:
        return {"sigma0": self.sigma0, "delta1": self.delta1, "t": self.t,
                "eps_min": self.eps_min, "sup_diff": self.sup_diff,
                "samples": self.samples, "margin": self.margin,
                "inner_count": self.inner_count}


@dataclass(frozen=True)
class ZeroRecord:
    """One finite witness: a certified zero location in sigma > 1."""

    s: complex
    residual: float
    method: str
    certificate: RoucheCertificate | None = None

    def to_json(self) -> dict:
        return {"s": [self.s.real, self.s.imag], "residual": self.residual,
                "method": self.method,
                "certificate": self.certificate.to_json()
                if self.certificate else None}


def newton_refine(evaluator, s0: complex, tol: float = 1e-10,
                  max_iter: int = 50, step: float = 1e-6,
                  sigma_floor: float = 1.0,
                  escape_radius: float = 20.0) -> ZeroRecord:
    """Newton iteration with central-difference derivative.

    Stays in sigma > sigma_floor or raises LeftHalfPlane; NoConvergence
    after max_iter steps or when the iterate leaves the basin (an escape
    guard keeps divergence on zero-free regions from running away)."""
    s = complex(s0)
    for _ in range(max_iter):
        v = evaluator(s)
        if abs(v) <= tol:
            return ZeroRecord(s=s, residual=abs(v), method="newton")
        d = (evaluator(s + step) - evaluator(s - step)) / (2 * step)
        if d == 0:
            raise NoConvergence("vanishing numerical derivative",
                                at=[s.real, s.imag])
        s = s - v / d
        if s.real <= sigma_floor:
            raise LeftHalfPlane("iterate crossed the convergence boundary",
                                at=[s.real, s.imag])
        if abs(s - s0) > escape_radius:
            raise NoConvergence("iterate escaped the search region",
                                at=[s.real, s.imag], start=[s0.real, s0.imag])
    raise NoConvergence("iteration cap reached", at=[s.real, s.imag],
                        residual=abs(evaluator(s)))


def rouche_certificate(f_eval, diff_eval, center: float, radius: float,
                       samples: int, f_deriv_bound: float,
                       diff_deriv_bound: float, diff_tail: float,
                       t: float = 0.0) -> RoucheCertificate:
    """Assemble a certificate from callables on the circle.

    f_eval(s) is the comparison function; diff_eval(s) the difference
    against the shifted target.  Derivative bounds convert the sampled
    extrema into bounds over the whole circle; diff_tail is added to the
    sampled sup (series mass not represented in diff_eval).  May return a
    certificate with nonpositive margin; raising on that is the caller's
    policy."""
    arc = math.pi * radius / samples
    eps_min = math.inf
    sup = 0.0
    for i in range(samples):
        s = center + radius * cmath.exp(2j * math.pi * i / samples)
        eps_min = min(eps_min, abs(f_eval(s)))
        sup = max(sup, abs(diff_eval(s)))
    eps_safe = eps_min - f_deriv_bound * arc
    sup_safe = sup + diff_deriv_bound * arc + diff_tail
    return RoucheCertificate(sigma0=center, delta1=radius, t=t,
                             eps_min=eps_safe, sup_diff=sup_safe,
                             samples=samples, margin=eps_safe - sup_safe)


def _abs_log_weight_sum(f: PeriodicFunction, alpha: float, sigma: float,
                        cut: int) -> float:
    """sum_n |f(n)| |log(n+alpha)| (n+alpha)^(-sigma): exact head to cut
    plus an integral bound for the rest (a derivative bound for the
    series)."""
    a = float(alpha)
    ns = np.arange(cut + 1, dtype=float) + a
    coeffs = np.array([abs(f(n)) for n in range(cut + 1)])
    head = float((coeffs * np.abs(np.log(ns)) * ns ** (-sigma)).sum())
    x = cut + 1 + a
    s1 = sigma - 1.0
    tail = f.max_abs * x ** (-s1) * (math.log(x) / s1 + 1.0 / (s1 * s1))
    return head + tail


def rouche_check(f: PeriodicFunction, alpha, series: TwistedSeries,
                 sigma0: float, delta1: float, t: float,
                 samples: int = 720, n_cut: int = 2000,
                 quad: QuadratureSpec | None = None) -> RoucheCertificate:
    """Certificate that L(s + it, f, alpha) has a zero in |s - sigma0| < delta1.

    Requires 1 + delta1 < sigma0 so the circle stays in the half-plane of
    absolute convergence.  The difference against the twisted comparison
    series is evaluated termwise up to n_cut; beyond it a rigorous tail
    bound (weight factor 2 for unimodular weight mismatch) widens sup_diff.
    Raises FVanishesOnCircle when the comparison minimum cannot be
    separated from zero, NegativeMargin when the inequality fails; on
    success the winding count on the disk is cross-checked to be >= 1.
    """
    if not 1.0 + delta1 < sigma0:
        raise ValueError("need 1 + delta1 < sigma0")
    a = float(alpha)
    sigma_min = sigma0 - delta1

    d_f = _abs_log_weight_sum(f, a, sigma_min, min(n_cut, 4000))

    ns = np.arange(n_cut + 1, dtype=float) + a
    wts = np.array([series.weight(n) for n in range(n_cut + 1)],
                   dtype=complex)
    coeffs = np.array([f(n) for n in range(n_cut + 1)], dtype=float) \
        * (np.exp(-1j * t * np.log(ns)) - wts)
    logns = np.log(ns)

    def diff_eval(s: complex) -> complex:
        return complex((coeffs * np.exp(-s * logns)).sum())

    d_diff = float((np.abs(coeffs) * np.abs(logns) * ns ** (-sigma_min)).sum())
    if series.is_identity and t == 0.0:
        tail = 0.0
    else:
        tail = 2.0 * tail_bound(f, a, sigma_min, n_cut)

    cert = rouche_certificate(
        lambda s: series.evaluate(s, tol=1e-12), diff_eval, sigma0, delta1,
        samples, f_deriv_bound=d_f, diff_deriv_bound=d_diff, diff_tail=tail,
        t=t)
    if cert.eps_min <= 0:
        raise FVanishesOnCircle(
            "comparison minimum not separated from zero on the circle",
            eps_min=cert.eps_min, delta1=delta1)
    if cert.margin <= 0:
        raise NegativeMargin("certificate inequality fails at this shift",
                             certificate=cert.to_json())
    # a positive margin forces equal zero counts inside the disk
    count_l = argument_count_circle(
        lambda s: lfunction(s + 1j * t, f, alpha, tol=1e-12),
        complex(sigma0, 0.0), delta1, quad)
    count_f = argument_count_circle(
        lambda s: series.evaluate(s, tol=1e-12),
        complex(sigma0, 0.0), delta1, quad)
    if count_l != count_f:
        raise ZetalabError(
            "positive margin but unequal windings: certificate machinery broken",
            certificate=cert.to_json(), count_shifted=count_l,
            count_comparison=count_f)
    return RoucheCertificate(sigma0=cert.sigma0, delta1=cert.delta1, t=cert.t,
                             eps_min=cert.eps_min, sup_diff=cert.sup_diff,
                             samples=cert.samples, margin=cert.margin,
                             inner_count=count_l)


# ---------------------------------------------------------------------------
# end-to-end pipeline
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PipelineBudget:
    kron: SearchBudget = field(default_factory=lambda: SearchBudget(
        max_t=2e5, max_iterations=20_000_000))
    n_cut_max: int = 6
    samples: int = 360
    newton_tol: float = 1e-9
    delta1_tries: int = 3
    t_min: float = 0.0


@dataclass
class PipelineResult:
    success: bool
    record: ZeroRecord | None
    failed_stage: str | None
    failure: dict | None
    stages: dict

    def to_json(self) -> dict:
        return {"success": self.success,
                "record": self.record.to_json() if self.record else None,
                "failed_stage": self.failed_stage,
                "failure": self.failure,
                "stages": self.stages}


def find_zero_pipeline(f: PeriodicFunction, alpha, delta: float,
                       budget: PipelineBudget | None = None) -> PipelineResult:
    """Chain the sign-flip construction into a zero certificate.

    Stages: residue normalization, truncation index, real zero of the
    twist, circle geometry, matched-phase search, Rouche certificate,
    Newton refinement.  Any stage failure is returned as structured data
    with the stage name; a ZeroRecord is only emitted with residual within
    tolerance and a strictly positive certificate margin.
    """
    budget = budget or PipelineBudget()
    stages: dict = {}

    def fail(stage: str, err: ZetalabError) -> PipelineResult:
        return PipelineResult(success=False, record=None, failed_stage=stage,
                              failure=err.to_json(), stages=stages)

    # residue hypothesis
    r = f.residue
    if abs(r) < 1e-15:
        return fail("residue", ResidueZero("series has no pole", residue=r))
    if r < 0:
        f = f.negated()
    stages["residue"] = r

    try:
        m = truncation_index(f, alpha, delta)
    except ZetalabError as e:
        return fail("truncation", e)
    stages["truncation_index"] = m
    series = TwistedSeries(f, alpha, flip_index=m)

    try:
        sigma0, lo, hi = find_sigma0(series, delta, tol=1e-10,
                                     with_bracket=True)
    except ZetalabError as e:
        return fail("sign_change", e)
    stages["sigma0"] = sigma0
    stages["sigma0_bracket"] = [lo, hi]

    a = float(alpha)
    delta1 = 0.5 * min(sigma0 - 1.0, delta)
    last_exc: ZetalabError | None = None
    for _ in range(budget.delta1_tries):
        sigma_min = sigma0 - delta1
        stages["theta"] = 0.5 * (sigma_min - 1.0)
        # probe the comparison minimum to size the error budget
        probe = min(abs(series.evaluate(
            complex(sigma0 + delta1 * math.cos(th),
                    delta1 * math.sin(th)), tol=1e-10))
            for th in np.linspace(0, 2 * math.pi, 64, endpoint=False))
        stages["delta1"] = delta1
        stages["eps_probe"] = probe
        if probe <= 0:
            delta1 *= 0.5
            last_exc = FVanishesOnCircle("probe minimum is zero",
                                         delta1=delta1)
            continue

        # matched cut from the tail budget; cap and proceed honestly
        target_tail = probe / 8.0
        n_cut = budget.n_cut_max
        capped = 2.0 * tail_bound(f, a, sigma_min, n_cut) > target_tail
        stages["n_cut"] = n_cut
        stages["tail_budget_met"] = not capped

        ns = np.arange(n_cut + 1, dtype=float) + a
        matched_mass = float((np.abs([f(n) for n in range(n_cut + 1)])
                              * ns ** (-sigma_min)).sum())
        chord = probe / (4.0 * matched_mass)
        delta_phase = min(chord / (2 * math.pi), 0.45)
        freqs = tuple(math.log(n + a) / (2 * math.pi)
                      for n in range(n_cut + 1))
        targets = tuple(0.0 if series.weight(n) == 1.0 else 0.5
                        for n in range(n_cut + 1))
        stages["kron_delta"] = delta_phase
        try:
            sol = solve(KroneckerProblem(freqs, targets, delta=delta_phase,
                                         t_min=budget.t_min), budget.kron)
        except ZetalabError as e:
            return fail("kronecker", e)
        stages["t"] = sol.t
        stages["kron_error"] = sol.max_error

        try:
            cert = rouche_check(f, alpha, series, sigma0, delta1, sol.t,
                                samples=budget.samples, n_cut=n_cut)
        except FVanishesOnCircle as e:
            delta1 *= 0.5
            last_exc = e
            continue
        except ZetalabError as e:
            return fail("certificate", e)
        stages["certificate"] = cert.to_json()
        if not cert.inner_count or cert.inner_count < 1:
            return fail("certificate", ZetalabError(
                "certificate carries no zero despite the bracketed sign change",
                certificate=cert.to_json()))

        try:
            record = newton_refine(
                lambda s: lfunction(s + 1j * sol.t, f, alpha, tol=1e-12),
                complex(sigma0, 0.0), tol=budget.newton_tol)
        except ZetalabError as e:
            return fail("newton", e)
        record = ZeroRecord(s=record.s + 1j * sol.t, residual=record.residual,
                            method="sign-flip pipeline", certificate=cert)
        return PipelineResult(success=True, record=record, failed_stage=None,
                              failure=None, stages=stages)
    return fail("circle_geometry",
                last_exc or FVanishesOnCircle("no usable circle radius"))
