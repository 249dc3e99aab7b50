"""Search for simultaneous inhomogeneous approximations.

Given frequencies w_1..w_N (rationally independent, by the caller's
assumption) and target phases b_1..b_N, find t > t_min with

    || t*w_n - b_n ||  <  delta   for every n,

where ||.|| is distance to the nearest integer.  Existence for independent
frequencies is Kronecker's theorem, which is non-effective; these solvers
therefore carry explicit work budgets and either return a solution that has
been re-verified by direct arithmetic or report BudgetExhausted.  A failure
never refutes independence.

All distances live on R/Z (phase units).  The series application supplies
w_n = log(n + alpha) / 2pi and unimodular targets g = exp(-2pi i b); a phase
distance of eps transfers to |exp(-2pi i t w) - g| <= 2pi * eps (chord is
bounded by arc, Lipschitz constant 2pi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExhausted, DegenerateInput

__all__ = ["KroneckerProblem", "KroneckerSolution", "SearchBudget",
           "solve", "verify", "solve_character_targets", "PHASE_LIPSCHITZ"]

# chord length on the unit circle per unit of phase distance
PHASE_LIPSCHITZ = 2.0 * math.pi


@dataclass(frozen=True)
class KroneckerProblem:
    frequencies: tuple
    targets: tuple
    delta: float
    t_min: float = 0.0

    def __post_init__(self):
        w = tuple(float(x) for x in self.frequencies)
        b = tuple(float(x) % 1.0 for x in self.targets)
        if len(w) != len(b) or len(w) < 1:
            raise ValueError("frequency and target lists must match, N >= 1")
        if not (0.0 < self.delta < 0.5):
            raise ValueError("delta must lie in (0, 1/2)")
        if len(set(w)) != len(w):
            raise DegenerateInput("duplicate frequencies", frequencies=list(w))
        object.__setattr__(self, "frequencies", w)
        object.__setattr__(self, "targets", b)


@dataclass(frozen=True)
class KroneckerSolution:
    t: float
    integer_parts: tuple
    max_error: float


@dataclass(frozen=True)
class SearchBudget:
    max_t: float = 1e6
    max_iterations: int = 50_000_000
    strategy: str = "auto"      # auto | grid | lattice


def _circle_dist(x: np.ndarray) -> np.ndarray:
    f = np.mod(x, 1.0)
    return np.minimum(f, 1.0 - f)


def verify(problem: KroneckerProblem, t: float) -> float:
    """max_n || t*w_n - b_n ||, recomputed by direct arithmetic."""
    w = np.asarray(problem.frequencies)
    b = np.asarray(problem.targets)
    return float(_circle_dist(t * w - b).max())


def _nearest_ints(problem: KroneckerProblem, t: float) -> tuple:
    w = np.asarray(problem.frequencies)
    b = np.asarray(problem.targets)
    return tuple(int(x) for x in np.rint(t * w - b))


def _finish(problem: KroneckerProblem, t: float) -> KroneckerSolution | None:
    if t <= problem.t_min:
        return None
    err = verify(problem, t)
    if err < problem.delta:
        return KroneckerSolution(t=t, integer_parts=_nearest_ints(problem, t),
                                 max_error=err)
    return None


def _solve_single(problem: KroneckerProblem, budget: SearchBudget):
    """Closed form for N = 1: t = (b + k)/w for the smallest admissible k."""
    w = problem.frequencies[0]
    b = problem.targets[0]
    if w == 0.0:
        raise DegenerateInput("zero frequency", frequencies=[w])
    k = math.ceil(problem.t_min * w - b)
    for _ in range(4):
        t = (b + k) / w
        sol = _finish(problem, t)
        if sol is not None:
            return sol
        k += 1 if w > 0 else -1
    raise BudgetExhausted("no admissible k for the single-frequency form",
                          t_min=problem.t_min)


def _solve_grid(problem: KroneckerProblem, budget: SearchBudget):
    w = np.asarray(problem.frequencies)
    b = np.asarray(problem.targets)
    wmax = float(np.abs(w).max())
    step = problem.delta / (PHASE_LIPSCHITZ * wmax)
    chunk = 1 << 15
    t0 = problem.t_min + step
    used = 0
    best = (math.inf, None)
    while t0 <= budget.max_t and used < budget.max_iterations:
        ts = t0 + step * np.arange(chunk)
        errs = _circle_dist(ts[:, None] * w[None, :] - b[None, :]).max(axis=1)
        hit = np.nonzero(errs < problem.delta)[0]
        if hit.size:
            t = float(ts[hit[0]])
            sol = _finish(problem, t)
            if sol is not None:
                return sol
        i = int(np.argmin(errs))
        if errs[i] < best[0]:
            best = (float(errs[i]), float(ts[i]))
        used += chunk
        t0 = float(ts[-1]) + step
    raise BudgetExhausted("grid scan found no witness",
                          best_error=best[0], best_t=best[1],
                          points_scanned=used, max_t=budget.max_t)


def _lll(basis: np.ndarray, delta: float = 0.75) -> np.ndarray:
    """Floating-point LLL reduction of the rows of basis."""
    b = basis.astype(float).copy()
    n = b.shape[0]

    def gso(bb):
        star = np.zeros_like(bb)
        mu = np.zeros((n, n))
        for i in range(n):
            star[i] = bb[i]
            for j in range(i):
                denom = star[j] @ star[j]
                mu[i, j] = (bb[i] @ star[j]) / denom if denom > 0 else 0.0
                star[i] = star[i] - mu[i, j] * star[j]
        return star, mu

    star, mu = gso(b)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            m = round(mu[k, j])
            if m != 0:
                b[k] -= m * b[j]
        star, mu = gso(b)
        lhs = star[k] @ star[k]
        rhs = (delta - mu[k, k - 1] ** 2) * (star[k - 1] @ star[k - 1])
        if lhs >= rhs:
            k += 1
        else:
            b[[k, k - 1]] = b[[k - 1, k]]
            star, mu = gso(b)
            k = max(k - 1, 1)
    return b


def _babai(basis: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Nearest-plane rounding; returns the lattice point (not coefficients)."""
    star = np.zeros_like(basis)
    n = basis.shape[0]
    for i in range(n):
        star[i] = basis[i]
        for j in range(i):
            star[i] -= (basis[i] @ star[j]) / (star[j] @ star[j]) * star[j]
    y = target.astype(float).copy()
    v = np.zeros_like(target, dtype=float)
    for i in range(n - 1, -1, -1):
        c = round((y @ star[i]) / (star[i] @ star[i]))
        y -= c * basis[i]
        v += c * basis[i]
    return v


def _solve_lattice(problem: KroneckerProblem, budget: SearchBudget):
    """Heuristic search via closest-vector rounding on a phase lattice.

    Candidate multipliers t = t_min + k*h are produced by Babai rounding on
    the lattice spanned by (h*w_1, ..., h*w_N, c) and the integer shifts;
    every candidate is verified exactly, so a wrong heuristic answer can
    only cost budget, never correctness.
    """
    w = np.asarray(problem.frequencies)
    b = np.asarray(problem.targets)
    n = w.size
    wmax = float(np.abs(w).max())
    h = problem.delta / (PHASE_LIPSCHITZ * wmax)
    used = 0
    best = (math.inf, None)
    k_max_global = int((budget.max_t - problem.t_min) / h)
    for scale_exp in range(8, 64):
        k_cap = min(1 << scale_exp, k_max_global)
        if k_cap < 4:
            continue
        c = 1.0 / k_cap
        basis = np.zeros((n + 1, n + 1))
        basis[0, :n] = h * w
        basis[0, n] = c
        for i in range(n):
            basis[i + 1, i] = 1.0
        red = _lll(basis)
        for frac in (0.25, 0.5, 0.75, 1.0):
            target = np.zeros(n + 1)
            target[:n] = b - problem.t_min * w
            target[n] = c * k_cap * frac
            v = _babai(red, target)
            k = v[n] / c
            k0 = int(round(k))
            for dk in range(-6, 7):
                kk = k0 + dk
                if kk < 1 or kk > k_max_global:
                    continue
                used += 1
                sol = _finish(problem, problem.t_min + kk * h)
                if sol is not None:
                    return sol
        if used > budget.max_iterations or (1 << scale_exp) >= k_max_global:
            break
    # lattice rounding came up empty: fall back to the sound scan with the
    # remaining budget
    rem = SearchBudget(max_t=budget.max_t,
                       max_iterations=max(budget.max_iterations - used, 0),
                       strategy="grid")
    try:
        return _solve_grid(problem, rem)
    except BudgetExhausted as e:
        raise BudgetExhausted("lattice candidates and grid fallback exhausted",
                              **e.details)


def solve(problem: KroneckerProblem, budget: SearchBudget | None = None
          ) -> KroneckerSolution:
    """Find t > t_min with all phase errors below delta, or raise.

    The returned solution always satisfies its invariants: it was re-checked
    with verify() before being handed back.
    """
    budget = budget or SearchBudget()
    n = len(problem.frequencies)
    if n == 1:
        return _solve_single(problem, budget)
    strategy = budget.strategy
    if strategy == "auto":
        strategy = "grid" if n <= 4 else "lattice"
    if strategy == "grid":
        return _solve_grid(problem, budget)
    if strategy == "lattice":
        return _solve_lattice(problem, budget)
    raise ValueError(f"unknown strategy {strategy!r}")


def solve_character_targets(alpha, basis, chi_on_basis, epsilon: float,
                            t_min: float = 0.0,
                            budget: SearchBudget | None = None):
    """Find t making every s_j^(-it) land within eps/(M*l) of chi(s_j).

    basis is a MultiplicativeBasis over positive field elements; the error
    budget per basis element propagates through exponent vectors bounded by
    M across l elements, so the product bound

        |(n+alpha)^(-it) - chi(n+alpha)| <= M * sum_j |s_j^(-it) - chi(s_j)|

    comes out below epsilon for every represented n.  The conclusion is
    re-verified directly on all n before returning.

    Returns (solution, chi_values) with chi_values[n] the target character
    value on n + alpha.
    """
    import cmath

    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    chi = [complex(c) for c in chi_on_basis]
    if len(chi) != len(basis.elements):
        raise ValueError("one unit target per basis element required")
    for c in chi:
        if abs(abs(c) - 1.0) > 1e-12:
            raise ValueError("targets must be unimodular")
    m_bound = max(basis.exponent_bound, 1)
    ell = len(basis.elements)
    per = epsilon / (m_bound * ell)
    delta_phase = min(per / PHASE_LIPSCHITZ, 0.49)

    freqs = [math.log(e.approx()) / (2.0 * math.pi) for e in basis.elements]
    targets = [(-cmath.phase(c) / (2.0 * math.pi)) % 1.0 for c in chi]
    problem = KroneckerProblem(tuple(freqs), tuple(targets),
                               delta=delta_phase, t_min=t_min)
    sol = solve(problem, budget)

    chi_values = {}
    worst = 0.0
    for n, u in basis.exponents.items():
        val = 1.0 + 0j
        for cj, uj in zip(chi, u):
            val *= cj ** uj
        x = float(n) + alpha.value
        attained = cmath.exp(-1j * sol.t * math.log(x))
        worst = max(worst, abs(attained - val))
        chi_values[n] = val
    if worst >= epsilon:
        raise BudgetExhausted(
            "verified product error not below epsilon; tighten the budget",
            worst=worst, epsilon=epsilon, t=sol.t)
    return sol, chi_values
