"""Auxiliary twisted series engineered to vanish just right of s = 1.

Two constructions are provided.

Sign flip: weights +1 up to a truncation index m and -1 after.  When the
mean of f is positive, m is chosen so the head dominates the tail at
s = 1 + delta; the twisted sum is then positive there but tends to minus
infinity as s -> 1+, so it has a real zero sigma0 in (1, 1+delta), located
by bisection.

Greedy character: for a quadratic irrational shift, unimodular values are
assigned to prime ideals block by block.  In each block (N_j, N_j + M_j]
the integers owning a private prime ideal form the free set; their
character values can be steered to any correction z inside the reachable
annulus of their weights, and z is chosen to cancel as much of the running
sum as the free mass S3 allows.  The ledger of every block records the
masses S1..S4, the correction, and the damping inequality

    |sum_{n <= N_{j+1}} f(n) chi(n+alpha) / (n+alpha)^sigma| < 1e-2 * tail,

each side recomputed from scratch (optionally in software high precision).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import mpmath as mp

from .annulus import AnnulusSpec, realize_phases
from .errors import (AnnulusGap, CaseUnreachable, NoSuchIndex, ResidueZero,
                     SignChangeNotBracketed)
from .quadfield import private_primes, _factorizer
from .series import Alpha, PeriodicFunction, lfunction, series_head, series_tail

__all__ = [
    "TwistedSeries", "GreedyState", "BlockSchedule", "BlockLedger",
    "ScheduleReport", "truncation_index", "find_sigma0", "greedy_step",
    "run_schedule", "choose_case_sigma", "tail_bound",
]


def tail_bound(f: PeriodicFunction, alpha, sigma: float, start: int) -> float:
    """Rigorous upper bound for sum_{n > start} |f(n)| (n+alpha)^(-sigma),
    by comparison with the integral from start."""
    a = float(alpha)
    if sigma <= 1:
        return math.inf
    return f.max_abs * (start + a) ** (1.0 - sigma) / (sigma - 1.0)


@dataclass(frozen=True)
class TwistedSeries:
    """Series sum f(n) w(n) (n+alpha)^(-s) with unimodular weights w.

    flip_index m: w = +1 for n <= m, -1 for n > m.
    character:    w(n) = chi(n+alpha), given for a contiguous range of n.
    Neither set:  w = 1 identically (the plain series).
    """

    f: PeriodicFunction
    alpha: object
    flip_index: int | None = None
    character: dict | None = None

    def weight(self, n: int) -> complex:
        if self.flip_index is not None:
            return 1.0 if n <= self.flip_index else -1.0
        if self.character is not None:
            return self.character[n]
        return 1.0

    @property
    def is_identity(self) -> bool:
        return self.flip_index is None and self.character is None

    def evaluate(self, s, tol: float = 1e-12, dps: int | None = None):
        """Value of the twisted series at s (Re s > 1 for the twisted forms).

        Sign-flip evaluation uses F(s) = 2 * head_m(s) - L(s); this works
        for truncation indices far beyond anything summable term by term.
        Character evaluation needs the assigned range to carry the mass:
        the unassigned tail bound must fall below tol.
        """
        s = complex(s)
        if self.flip_index is not None:
            head = series_head(s, self.f, self.alpha, self.flip_index,
                               tol=tol / 4)
            full = lfunction(s, self.f, self.alpha, tol=tol / 4, dps=dps)
            return 2 * head - full
        if self.character is not None:
            top = max(self.character)
            tb = tail_bound(self.f, float(self.alpha), s.real, top)
            if tb > tol:
                raise ValueError(
                    f"character assignment up to n={top} leaves a tail bound "
                    f"{tb:.3g} above tol={tol:.3g}")
            a = float(self.alpha)
            total = 0j
            for n in range(top + 1):
                total += (self.f(n) * self.character[n]
                          * (n + a) ** (-s))
            return total
        return lfunction(s, self.f, self.alpha, tol=tol, dps=dps)


def truncation_index(f: PeriodicFunction, alpha, delta: float,
                     linear_cap: int = 100_000, max_doublings: int = 600) -> int:
    """Smallest m whose head dominates the bounded tail at s = 1 + delta.

    The condition is head(m) > max|f| * (m+alpha)^(-delta) / delta, the
    right side being a rigorous integral bound for the tail from m+1 on.
    Small m are scanned exactly; past the linear cap the index is bracketed
    by doubling and pinned by bisection (the condition is monotone for
    nonnegative f, which is the regime where huge indices occur).
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    if f.residue <= 0:
        raise NoSuchIndex("mean of f is not positive", residue=f.residue)
    a = float(alpha)
    s = 1.0 + delta
    mf = f.max_abs

    def bound(m: float) -> float:
        return mf * (m + a) ** (-delta) / delta

    # exact linear scan
    acc = 0.0
    for m in range(linear_cap + 1):
        acc += f(m) * (m + a) ** (-s)
        if acc > bound(m):
            return m

    eval_tol = max(1e-12, 1e-15 / delta)   # the pole inflates magnitudes

    def head(m: float) -> float:
        full = lfunction(s, f, alpha, tol=eval_tol)
        return (full - series_tail(s, f, alpha, int(m) + 1, tol=eval_tol)).real

    lo = linear_cap
    hi = None
    m = 2 * linear_cap
    for _ in range(max_doublings):
        if head(m) > bound(m):
            hi = m
            break
        lo = m
        m *= 2
    if hi is None:
        raise NoSuchIndex("no dominating index within the doubling budget",
                          delta=delta, last_tried=lo)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if head(mid) > bound(mid):
            hi = mid
        else:
            lo = mid
    return hi


def find_sigma0(series: TwistedSeries, delta: float, tol: float = 1e-10,
                sigma_floor: float = 1e-8, with_bracket: bool = False):
    """Real zero of the sign-flip series in (1, 1 + delta), by bisection.

    The right endpoint must be positive (that is what the truncation index
    guarantees); a negative value is hunted geometrically toward 1, down to
    the precision floor where cancellation near the pole takes over.
    """
    if series.flip_index is None:
        raise ValueError("sign-flip series required")

    def F(x: float) -> float:
        # evaluation accuracy tracks the pole blow-up at x -> 1+
        local = max(min(tol / 4, 1e-12), 4e-15 / (x - 1.0))
        return series.evaluate(complex(x, 0.0), tol=local).real

    b = 1.0 + delta
    fb = F(b)
    if fb <= 0:
        raise SignChangeNotBracketed("series not positive at 1 + delta",
                                     value=fb, at=b)
    a = None
    step = delta
    while True:
        step /= 2.0
        x = 1.0 + step
        if step < sigma_floor:
            raise SignChangeNotBracketed(
                "no negative value found above the precision floor",
                floor=sigma_floor)
        if F(x) < 0:
            a = x
            break
    lo, hi = a, b
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        v = F(mid)
        if abs(v) <= tol:
            return (mid, lo, hi) if with_bracket else mid
        if v < 0:
            lo = mid
        else:
            hi = mid
    # interval collapsed to rounding width; the midpoint is the zero
    mid = 0.5 * (lo + hi)
    if abs(F(mid)) <= tol:
        return (mid, lo, hi) if with_bracket else mid
    raise SignChangeNotBracketed("bisection stalled above tolerance",
                                 lo=lo, hi=hi, value=F(mid))


# ---------------------------------------------------------------------------
# greedy character induction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GreedyState:
    """Running ledger after a block: the settled partial sum and masses."""

    block_index: int
    partial: complex          # sum over n <= block end
    s1: float                 # |previous partial|
    s2: float                 # fixed-part mass in the block
    s3: float                 # free-part mass in the block
    s4: float                 # tail mass past the block
    correction: complex       # chosen z


def _correction(lam: complex, s3: float) -> complex:
    if lam == 0:
        return 0j
    mag = abs(lam)
    if mag <= s3:
        return -lam
    return -s3 * lam / mag


def greedy_step(state: GreedyState, free_weights, fixed_sum: complex,
                fixed_mass: float, tail_mass: float,
                tol: float = 1e-9):
    """One block of the induction.

    free_weights: list of (n, w_n) for the steerable part; fixed_sum and
    fixed_mass are the complex contribution and absolute mass of the rest
    of the block.  Requires the free multiset to reach the full disk (inner
    radius zero); returns the new state plus phase angles on the free part
    realizing the correction.
    """
    lam = state.partial + fixed_sum
    weights = [w for _, w in free_weights]
    s3 = math.fsum(weights)
    angles: dict[int, float] = {}
    if free_weights:
        spec = AnnulusSpec(tuple(weights))
        if spec.inner > 0.0:
            raise AnnulusGap("free weights do not reach the full disk",
                             inner=spec.inner, count=len(weights))
        z = _correction(lam, s3)
        phases = realize_phases(spec, z, tol=tol)
        order = sorted(range(len(weights)), key=lambda i: weights[i])
        for slot, i in enumerate(order):
            angles[free_weights[i][0]] = phases[slot]
        realized = sum(w * cmath.exp(1j * angles[n]) for n, w in free_weights)
    else:
        z = 0j
        realized = 0j
    new_partial = lam + realized
    new_state = GreedyState(block_index=state.block_index + 1,
                            partial=new_partial, s1=abs(state.partial),
                            s2=fixed_mass, s3=s3, s4=tail_mass, correction=z)
    return new_state, angles


@dataclass(frozen=True)
class BlockSchedule:
    """Parameterized block layout for the induction.

    M_j = max(1, floor(N_j * scale_num / scale_den)), N_{j+1} = N_j + M_j.
    sigma is searched (exploiting the pole) when not fixed.  In synthetic
    mode the free sets are sampled with the given density instead of coming
    from ideal factorizations.
    """

    n1: int = 1000
    num_blocks: int = 50
    scale_num: int = 1
    scale_den: int = 100
    sigma: float | None = None
    delta: float = 1.0
    mode: str = "authentic"          # "authentic" | "synthetic"
    synthetic_density: float = 0.55

    def block_length(self, n: int) -> int:
        return max(1, n * self.scale_num // self.scale_den)


@dataclass
class BlockLedger:
    j: int
    n_start: int
    n_end: int
    free_count: int
    fixed_count: int
    s1: float
    s2: float
    s3: float
    s4: float
    lam: complex
    correction: complex
    realize_err: float
    damping_lhs: float
    damping_rhs: float
    damping_ok: bool
    damping_lhs_hp: float | None
    damping_rhs_hp: float | None
    damping_ok_hp: bool | None
    chain_lhs: float            # S1 + S2 - S3, each recomputed from scratch
    chain_ok: bool
    ratio: float
    ratio_ok: bool
    bound_ok: bool
    pair_ratio: float
    pair_ratio_ok: bool
    census_ok: bool
    density: float

    def to_json(self) -> dict:
        out = dict(vars(self))
        out["lam"] = [self.lam.real, self.lam.imag]
        out["correction"] = [self.correction.real, self.correction.imag]
        return out


@dataclass
class ScheduleReport:
    sigma: float
    blocks: list
    ok: bool
    halted_at: int | None
    prime_angles: dict = field(default_factory=dict, repr=False)

    def to_json(self) -> dict:
        return {"sigma": self.sigma, "ok": self.ok, "halted_at": self.halted_at,
                "blocks": [b.to_json() for b in self.blocks]}


def choose_case_sigma(f: PeriodicFunction, alpha, n1: int, delta: float = 1.0,
                      margin: float = 0.8, floor: float = 1e-9) -> float:
    """Exponent sigma in (1, min(1+delta, 2)) making the initial head small:
    head(n1) < margin * 1e-2 * tail(n1).  The pole guarantees existence for
    positive residue; sigma walks geometrically toward 1 until the
    inequality holds."""
    span = min(delta, 1.0)
    step = span
    while True:
        step /= 2.0
        if step < floor:
            raise CaseUnreachable(
                "no exponent satisfies the head bound above the floor",
                floor=floor, n1=n1)
        sigma = 1.0 + step
        local = max(1e-11, 1e-14 / step)
        head = abs(series_head(sigma + 0j, f, alpha, n1, tol=local))
        tail = series_tail(sigma + 0j, f, alpha, n1 + 1, tol=local).real
        if head < margin * 1e-2 * tail:
            return sigma


def run_schedule(f: PeriodicFunction, alpha: Alpha, schedule: BlockSchedule,
                 chi_seed: int = 0, hp_check: bool = True,
                 hp_dps: int = 30) -> ScheduleReport:
    """Run the greedy character induction over the block schedule.

    Authentic mode pulls the free sets from ideal factorizations (integers
    owning a private prime); synthetic mode samples them with the given
    density and seed.  Character values live on prime ideals as phase
    angles; every ledger row recomputes the settled sum and the tail from
    scratch, in floats and (optionally) in software high precision.

    Processing halts at the first block whose damping inequality fails (the
    offending row stays in the report with ok=False).  A free set whose
    annulus has positive inner radius raises AnnulusGap; blocks where the
    census falls below ceil(27 M / 50) or the mass ratio below 101/99 are
    flagged but not fatal.
    """
    if f.residue <= 0:
        raise ResidueZero("induction needs positive residue",
                          residue=f.residue)
    positive = min(f.values) > 0
    sigma = schedule.sigma or choose_case_sigma(f, alpha, schedule.n1,
                                                schedule.delta)
    a = float(alpha)

    authentic = schedule.mode == "authentic"
    rng = None
    if not authentic:
        import random
        rng = random.Random(chi_seed)

    fz = _factorizer(alpha, None) if authentic else None
    prime_angles: dict = {}
    synthetic_chi: dict[int, float] = {}

    def weight(n: int) -> float:
        return f(n) / (n + a) ** sigma

    def chi_angle(n: int) -> float:
        if not authentic:
            return synthetic_chi.get(n, 0.0)
        total = 0.0
        for prime, e in fz.factor(n).factors:
            total += e * prime_angles[prime]
        return math.fmod(total, 2.0 * math.pi)

    def settled_sum(top: int) -> complex:
        acc = 0j
        for n in range(top + 1):
            acc += weight(n) * cmath.exp(1j * chi_angle(n))
        return acc

    def settled_sum_hp(top: int):
        with mp.workdps(hp_dps):
            a_mp = alpha.value_mp() if isinstance(alpha, Alpha) else mp.mpf(a)
            total = mp.mpc(0)
            for n in range(top + 1):
                ang = mp.mpf(chi_angle(n))
                total += (f(n) * (mp.cos(ang) + 1j * mp.sin(ang))
                          / (n + a_mp) ** sigma)
            return total

    def tail_hp(start: int):
        # independent high-precision tail through mpmath's own zeta
        with mp.workdps(hp_dps):
            a_mp = alpha.value_mp() if isinstance(alpha, Alpha) else mp.mpf(a)
            q = f.period
            total = mp.mpf(0)
            for r in range(q):
                c = f(start + r)
                if c:
                    total += c * mp.zeta(mp.mpf(sigma), (a_mp + start + r) / q)
            return mp.power(q, -mp.mpf(sigma)) * total

    # first block preassignment: everything visible up to n1 is pinned at 1
    n1 = schedule.n1
    if authentic:
        for prime in fz.denominator:
            prime_angles[prime] = 0.0
        for n in range(n1 + 1):
            for prime in fz.factor(n).primes():
                prime_angles.setdefault(prime, 0.0)

    state = GreedyState(block_index=0, partial=settled_sum(n1) if authentic
                        else sum(weight(n) for n in range(n1 + 1)) + 0j,
                        s1=0.0, s2=0.0, s3=0.0, s4=0.0, correction=0j)

    rows: list[BlockLedger] = []
    ok = True
    halted = None
    n_cur = n1
    for j in range(1, schedule.num_blocks + 1):
        m_len = schedule.block_length(n_cur)
        top = n_cur + m_len
        block_ns = list(range(n_cur + 1, top + 1))

        if authentic:
            census = private_primes(n_cur, m_len, alpha)
            free_ns = sorted(census.private)
            witnesses = census.private
        else:
            free_ns = sorted(n for n in block_ns
                             if rng.random() < schedule.synthetic_density)
            witnesses = {}
        fixed_ns = [n for n in block_ns if n not in set(free_ns)]

        if authentic:
            # new primes in this block that are nobody's witness get value 1
            witness_set = set(witnesses.values())
            for n in block_ns:
                for prime in fz.factor(n).primes():
                    if prime not in prime_angles and prime not in witness_set:
                        prime_angles[prime] = 0.0

        fixed_sum = sum(weight(n) * cmath.exp(1j * chi_angle(n))
                        for n in fixed_ns)
        fixed_mass = math.fsum(weight(n) for n in fixed_ns) if positive else \
            math.fsum(abs(weight(n)) for n in fixed_ns)
        free_weights = [(n, weight(n)) for n in free_ns]
        tail_tol = max(1e-11, 1e-14 / (sigma - 1.0))
        tail_mass = series_tail(sigma + 0j, f, alpha, top + 1,
                                tol=tail_tol).real

        lam = state.partial + fixed_sum
        state, angles = greedy_step(state, free_weights, fixed_sum,
                                    fixed_mass, tail_mass)

        # push the realized phases down onto the witness primes
        if authentic:
            for n in free_ns:
                e_w = dict(fz.factor(n).factors)[witnesses[n]]
                known = 0.0
                for prime, e in fz.factor(n).factors:
                    if prime != witnesses[n]:
                        known += e * prime_angles[prime]
                prime_angles[witnesses[n]] = math.fmod(
                    (angles[n] - known) / e_w, 2.0 * math.pi)
        else:
            for n in free_ns:
                synthetic_chi[n] = angles[n]

        resum = settled_sum(top)
        realize_err = abs(resum - state.partial)
        lhs = abs(resum)
        rhs = 1e-2 * tail_mass
        damping_ok = lhs < rhs
        # the chain form, every mass recomputed from scratch: the settled
        # sum up to the block start plus the fixed mass minus the free mass
        chain_lhs = abs(settled_sum(n_cur)) + state.s2 - state.s3
        chain_ok = chain_lhs < rhs
        lhs_hp = rhs_hp = None
        ok_hp = None
        if hp_check:
            with mp.workdps(hp_dps):
                lhs_hp_v = abs(settled_sum_hp(top))
                rhs_hp_v = mp.mpf("0.01") * tail_hp(top + 1)
                ok_hp = bool(lhs_hp_v < rhs_hp_v)
                lhs_hp, rhs_hp = float(lhs_hp_v), float(rhs_hp_v)

        s2, s3 = state.s2, state.s3
        ratio = s3 / s2 if s2 > 0 else math.inf
        ws = [w for _, w in free_weights]
        pair_ratio = max(ws) / min(ws) if ws else 1.0

        rows.append(BlockLedger(
            j=j, n_start=n_cur, n_end=top, free_count=len(free_ns),
            fixed_count=len(fixed_ns), s1=state.s1, s2=s2, s3=s3,
            s4=state.s4, lam=lam,
            correction=state.correction, realize_err=realize_err,
            damping_lhs=lhs, damping_rhs=rhs, damping_ok=damping_ok,
            damping_lhs_hp=lhs_hp, damping_rhs_hp=rhs_hp, damping_ok_hp=ok_hp,
            chain_lhs=chain_lhs, chain_ok=chain_ok,
            ratio=ratio, ratio_ok=ratio > 101.0 / 99.0,
            bound_ok=100.0 * (s3 - s2) > s3 + s2,
            pair_ratio=pair_ratio, pair_ratio_ok=pair_ratio < 3.0,
            census_ok=len(free_ns) >= math.ceil(27 * m_len / 50),
            density=len(free_ns) / m_len))

        if not damping_ok or (hp_check and not ok_hp):
            ok = False
            halted = j
            break
        n_cur = top

    return ScheduleReport(sigma=sigma, blocks=rows, ok=ok, halted_at=halted,
                          prime_angles=prime_angles)
