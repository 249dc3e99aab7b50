"""Evaluation of Hurwitz-type series with periodic coefficients.

The central objects are

    zeta(s, a)      = sum_{n>=0} (n + a)^(-s)
    L(s, f, a)      = sum_{n>=0} f(n) (n + a)^(-s),   f periodic with period q

both absolutely convergent for Re(s) > 1.  Splitting the sum over residue
classes mod q gives the working identity

    L(s, f, a) = q^(-s) * sum_{b=0..q-1} f(b) zeta(s, (a + b)/q)

(f(0) = f(q) by periodicity), which also shows L extends meromorphically
with at most a simple pole at s = 1 of residue (1/q) sum_b f(b).

zeta(s, a) itself is evaluated by Euler-Maclaurin summation: a direct block
of M terms, the integral tail (M+a)^(1-s)/(s-1), the half term, and ten
even-order Bernoulli corrections with a rigorous remainder bound that is
checked against the requested tolerance (M is doubled until it holds).
"""

from __future__ import annotations

import math
import cmath
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import mpmath as mp

from .errors import PoleAt1, PrecisionUnreachable

__all__ = [
    "Alpha", "PeriodicFunction", "hurwitz_zeta", "lfunction", "decompose",
    "residue", "lfunction_direct", "series_tail", "series_head",
]

# Bernoulli correction order is fixed: terms B_2 .. B_20, remainder from B_22.
_EM_ORDER = 10

# Cutoff rule M = max(ceil|t|, 20) + ceil(a) is meant for shifts of a few
# units; for very large shifts the +ceil(a) term is pointless (the remainder
# bound is already tiny) and would make the direct block unpayable.
_SHIFT_CAP = 10_000

_MAX_DIRECT = 40_000_000


def _bernoulli_even(count: int) -> list[Fraction]:
    """B_2, B_4, ..., B_{2*count} by the defining recurrence, exact."""
    n = 2 * count + 1
    b = [Fraction(0)] * n
    b[0] = Fraction(1)
    for m in range(1, n):
        acc = Fraction(0)
        for j in range(m):
            acc += Fraction(math.comb(m + 1, j)) * b[j]
        b[m] = -acc / (m + 1)
    return [b[2 * k] for k in range(1, count + 1)]

_B_EVEN = _bernoulli_even(_EM_ORDER + 1)
# B_{2k} / (2k)! as floats, k = 1 .. order+1
_C_EVEN = [float(_B_EVEN[k - 1] / Fraction(math.factorial(2 * k)))
           for k in range(1, _EM_ORDER + 2)]


def _is_squarefree(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class Alpha:
    """The positive shift of the series, tagged by its arithmetic nature.

    kind "rational"  : p/q in lowest terms,
    kind "quadratic" : a + b*sqrt(d) with a, b rational, d >= 2 squarefree,
    kind "decimal"   : a high-precision literal, used as a stand-in for a
                       transcendental shift.  The literal is taken as exact
                       at its stated precision; nothing here checks (or
                       could check) transcendence.
    """

    kind: str
    data: tuple

    @classmethod
    def rational(cls, p: int, q: int) -> "Alpha":
        if q == 0:
            raise ValueError("zero denominator")
        g = math.gcd(p, q)
        p, q = p // g, q // g
        if q < 0:
            p, q = -p, -q
        if p <= 0:
            raise ValueError("shift must be positive")
        return cls("rational", (p, q))

    @classmethod
    def quadratic(cls, a, b, d: int) -> "Alpha":
        a, b = Fraction(a), Fraction(b)
        if b == 0:
            raise ValueError("quadratic shift needs b != 0")
        if not _is_squarefree(d):
            raise ValueError("d must be squarefree and >= 2")
        if float(a) + float(b) * math.sqrt(d) <= 0:
            raise ValueError("shift must be positive")
        return cls("quadratic", (a, b, d))

    @classmethod
    def decimal(cls, literal: str) -> "Alpha":
        if float(literal) <= 0:
            raise ValueError("shift must be positive")
        return cls("decimal", (str(literal),))

    @classmethod
    def parse(cls, text: str) -> "Alpha":
        """Parse 'rat:p,q' | 'quad:a,b,d' | 'dec:<literal>'."""
        head, _, rest = text.partition(":")
        if head == "rat":
            p, q = (int(x) for x in rest.split(","))
            return cls.rational(p, q)
        if head == "quad":
            a, b, d = rest.split(",")
            return cls.quadratic(Fraction(a), Fraction(b), int(d))
        if head == "dec":
            return cls.decimal(rest)
        raise ValueError(f"unknown shift encoding {text!r}")

    @property
    def value(self) -> float:
        if self.kind == "rational":
            p, q = self.data
            return p / q
        if self.kind == "quadratic":
            a, b, d = self.data
            return float(a) + float(b) * math.sqrt(d)
        return float(self.data[0])

    def value_mp(self) -> mp.mpf:
        """Render at the current mpmath working precision."""
        if self.kind == "rational":
            p, q = self.data
            return mp.mpf(p) / q
        if self.kind == "quadratic":
            a, b, d = self.data
            return (mp.mpf(a.numerator) / a.denominator
                    + mp.mpf(b.numerator) / b.denominator * mp.sqrt(d))
        return mp.mpf(self.data[0])

    def encode(self) -> str:
        if self.kind == "rational":
            return "rat:%d,%d" % self.data
        if self.kind == "quadratic":
            a, b, d = self.data
            return f"quad:{a},{b},{d}"
        return f"dec:{self.data[0]}"

    def __float__(self) -> float:
        return self.value


def _shift_value(alpha) -> float:
    if isinstance(alpha, Alpha):
        return alpha.value
    a = float(alpha)
    if a <= 0:
        raise ValueError("shift must be positive")
    return a


def _shift_value_mp(alpha) -> mp.mpf:
    if isinstance(alpha, Alpha):
        return alpha.value_mp()
    if isinstance(alpha, mp.mpf):
        return alpha
    return mp.mpf(alpha)


@dataclass(frozen=True)
class PeriodicFunction:
    """Real coefficient function of period q; values[i] is f(i+1).

    Periodicity puts f(0) = f(q).  The mean of the values is the residue of
    L(s, f, alpha) at s = 1; the max/min ratio is defined only for strictly
    positive values.
    """

    values: tuple

    def __post_init__(self):
        if len(self.values) < 1:
            raise ValueError("need at least one value")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    @classmethod
    def constant(cls, c: float = 1.0, q: int = 1) -> "PeriodicFunction":
        return cls((c,) * q)

    @property
    def period(self) -> int:
        return len(self.values)

    def __call__(self, n: int) -> float:
        return self.values[(n - 1) % len(self.values)]

    @property
    def residue(self) -> float:
        return math.fsum(self.values) / len(self.values)

    @property
    def ratio(self) -> float:
        if min(self.values) <= 0:
            raise ValueError("ratio defined only for positive values")
        return max(self.values) / min(self.values)

    @property
    def max_abs(self) -> float:
        return max(abs(v) for v in self.values)

    def negated(self) -> "PeriodicFunction":
        return PeriodicFunction(tuple(-v for v in self.values))


def residue(f: PeriodicFunction) -> float:
    """Residue of L(s, f, alpha) at s = 1; zero means the function is entire."""
    return f.residue


# ----------------------------------------------------------------------------
# Euler-Maclaurin core
# ----------------------------------------------------------------------------

def _em_cutoff(t: float, a: float) -> int:
    m = max(math.ceil(abs(t)), 20)
    if a <= _SHIFT_CAP:
        m += math.ceil(a)
    return m


def _direct_block_real(s: float, a: float, m: int) -> tuple[float, float]:
    """(sum, sum of |terms|) of (n+a)^(-s) for n = 0..m-1, exactly rounded."""
    pieces = []
    for lo in range(0, m, 1 << 19):
        hi = min(lo + (1 << 19), m)
        terms = (np.arange(lo, hi, dtype=float) + a) ** (-s)
        pieces.append(terms)
    total = math.fsum(float(x) for p in pieces for x in p) if m <= 4096 else \
        math.fsum(float(p.sum()) for p in pieces)
    mag = math.fsum(float(np.abs(p).sum()) for p in pieces)
    return total, mag


def _direct_block_complex(s: complex, a: float, m: int) -> tuple[complex, float]:
    re_parts, im_parts, mags = [], [], []
    for lo in range(0, m, 1 << 19):
        hi = min(lo + (1 << 19), m)
        terms = (np.arange(lo, hi, dtype=float) + a) ** (-s)
        re_parts.append(float(terms.real.sum()))
        im_parts.append(float(terms.imag.sum()))
        mags.append(float(np.abs(terms).sum()))
    return complex(math.fsum(re_parts), math.fsum(im_parts)), math.fsum(mags)


def _em_once(s: complex, a: float, m: int):
    """One Euler-Maclaurin pass at cutoff m.

    Returns (value, remainder bound, magnitude scale).  The remainder bound
    is the standard one: |first omitted correction| * |s+2K+1| / (sigma+2K+1),
    valid here since sigma + 2K + 1 > 0.
    """
    real_axis = (s.imag == 0)
    if real_axis:
        sr = s.real
        direct, mag = _direct_block_real(sr, a, m)
        p = m + a
        tail = p ** (1.0 - sr) / (sr - 1.0)
        half = 0.5 * p ** (-sr)
        rise = sr
        pw = p ** (-sr - 1.0)
        corr = 0.0
        for k in range(1, _EM_ORDER + 1):
            corr += _C_EVEN[k - 1] * rise * pw
            rise *= (sr + 2 * k - 1) * (sr + 2 * k)
            pw /= p * p
        # |s+2K+1|/(sigma+2K+1) = 1 on the real axis with sigma > 1/2
        rem = abs(_C_EVEN[_EM_ORDER] * rise * pw)
        value: complex = complex(direct + tail + half + corr, 0.0)
        scale = mag + abs(tail) + abs(half)
        return value, rem, scale
    direct, mag = _direct_block_complex(s, a, m)
    p = m + a
    lp = math.log(p)
    tail = cmath.exp((1 - s) * lp) / (s - 1)
    half = 0.5 * cmath.exp(-s * lp)
    rise = s
    pw = cmath.exp((-s - 1) * lp)
    corr = 0j
    for k in range(1, _EM_ORDER + 1):
        corr += _C_EVEN[k - 1] * rise * pw
        rise *= (s + 2 * k - 1) * (s + 2 * k)
        pw /= p * p
    rem = abs(_C_EVEN[_EM_ORDER] * rise * pw)
    rem *= abs(s + 2 * _EM_ORDER + 1) / (s.real + 2 * _EM_ORDER + 1)
    value = direct + tail + half + corr
    scale = mag + abs(tail) + abs(half)
    return value, rem, scale


def _em_once_mp(s, a, m: int):
    direct = mp.fsum((n + a) ** (-s) for n in range(m))
    mag = mp.fsum(abs((n + a) ** (-s)) for n in range(m))
    p = m + a
    tail = p ** (1 - s) / (s - 1)
    half = p ** (-s) / 2
    rise = s
    pw = p ** (-s - 1)
    corr = mp.mpc(0)
    for k in range(1, _EM_ORDER + 1):
        c = mp.mpf(_B_EVEN[k - 1].numerator) / _B_EVEN[k - 1].denominator
        c /= mp.factorial(2 * k)
        corr += c * rise * pw
        rise *= (s + 2 * k - 1) * (s + 2 * k)
        pw /= p * p
    c = mp.mpf(_B_EVEN[_EM_ORDER].numerator) / _B_EVEN[_EM_ORDER].denominator
    c /= mp.factorial(2 * _EM_ORDER + 2)
    rem = abs(c * rise * pw) * abs(s + 2 * _EM_ORDER + 1) / (mp.re(s) + 2 * _EM_ORDER + 1)
    value = direct + tail + half + corr
    scale = mag + abs(tail) + abs(half)
    return value, rem, scale


def hurwitz_zeta(s, alpha, tol: float = 1e-12, dps: int | None = None):
    """zeta(s, alpha) with absolute error at most tol.

    Requires Re(s) > 1/2 and s != 1.  At real s the result has zero
    imaginary part.  With dps set, evaluation runs in mpmath software
    precision (for certificate margins that double precision cannot carry).
    """
    s = complex(s)
    if abs(s - 1) < 1e-12:
        raise PoleAt1("s is within 1e-12 of the pole at 1", s=[s.real, s.imag])
    if s.real <= 0.5:
        raise ValueError("evaluation requires Re(s) > 1/2")
    a = _shift_value(alpha)

    if dps is not None:
        with mp.workdps(dps + 10):
            a_mp = _shift_value_mp(alpha)
            sm = mp.mpc(s.real, s.imag) if s.imag else mp.mpf(s.real)
            m = _em_cutoff(s.imag, float(a_mp))
            floor_eps = mp.mpf(10) ** (5 - dps)
            while True:
                value, rem, scale = _em_once_mp(sm, a_mp, m)
                if tol < floor_eps * scale:
                    raise PrecisionUnreachable(
                        "tolerance below reachable floor",
                        tol=tol, floor=float(floor_eps * scale))
                if rem <= tol:
                    return value if s.imag else mp.re(value)
                if m > _MAX_DIRECT:
                    raise PrecisionUnreachable("cutoff growth exhausted",
                                               tol=tol, cutoff=m)
                m *= 2

    m = _em_cutoff(s.imag, a)
    while True:
        if m > _MAX_DIRECT:
            raise PrecisionUnreachable("cutoff beyond the direct-block cap",
                                       tol=tol, cutoff=m)
        value, rem, scale = _em_once(s, a, m)
        # the direct block is exactly rounded (fsum); a few ulps of the
        # magnitude scale is what double precision can actually deliver
        floor = 4 * np.finfo(float).eps * scale
        if tol < floor:
            raise PrecisionUnreachable(
                "tolerance below double-precision floor",
                tol=tol, floor=floor)
        if rem <= tol:
            return value
        m *= 2


def decompose(s, f: PeriodicFunction, alpha, tol: float = 1e-12,
              dps: int | None = None):
    """The residue-class split q^(-s) sum_b f(b) zeta(s, (alpha+b)/q).

    The split runs over the residues b = 0..q-1 (with f(0) = f(q) by
    periodicity) so that the n = 0 term of the defining series is covered;
    the result equals the full series for Re(s) > 1.
    """
    s = complex(s)
    if abs(s - 1) < 1e-12:
        raise PoleAt1("s is within 1e-12 of the pole at 1", s=[s.real, s.imag])
    q = f.period
    a = _shift_value(alpha)
    weight = q ** (-s.real) * (math.fsum(abs(v) for v in f.values) + 1.0)
    each = 0.5 * tol / weight
    if dps is not None:
        with mp.workdps(dps + 10):
            a_mp = _shift_value_mp(alpha)
            total = mp.mpf(0)
            for b in range(q):
                if f(b) == 0.0:
                    continue
                total += f(b) * hurwitz_zeta(s, (a_mp + b) / q,
                                             tol=each, dps=dps)
            sm = mp.mpc(s.real, s.imag) if s.imag else mp.mpf(s.real)
            return mp.power(q, -sm) * total
    total = 0j
    for b in range(q):
        if f(b) == 0.0:
            continue
        total += f(b) * hurwitz_zeta(s, (a + b) / q, tol=each, dps=dps)
    if s.imag == 0:
        return complex((q ** (-s.real)) * total.real, 0.0)
    return (q ** (-s)) * total


def series_tail(s, f: PeriodicFunction, alpha, start: int,
                tol: float = 1e-12, dps: int | None = None):
    """sum_{n >= start} f(n) (n+alpha)^(-s) via the residue-class split.

    Works for astronomically large start (the split shifts the zeta
    arguments by start/q; no term-by-term summation happens here).
    """
    s = complex(s)
    q = f.period
    weight = q ** (-s.real) * (math.fsum(abs(v) for v in f.values) + 1.0)
    each = 0.5 * tol / weight
    if dps is not None:
        with mp.workdps(dps + 10):
            a_mp = _shift_value_mp(alpha)
            total = mp.mpf(0)
            for r in range(q):
                c = f(start + r)
                if c == 0.0:
                    continue
                total += c * hurwitz_zeta(s, (a_mp + start + r) / q,
                                          tol=each, dps=dps)
            sm = mp.mpc(s.real, s.imag) if s.imag else mp.mpf(s.real)
            return mp.power(q, -sm) * total
    a = _shift_value(alpha)
    total = 0j
    for r in range(q):
        c = f(start + r)
        if c == 0.0:
            continue
        total += c * hurwitz_zeta(s, (a + start + r) / q, tol=each, dps=dps)
    if s.imag == 0:
        return complex((q ** (-s.real)) * total.real, 0.0)
    return (q ** (-s)) * total


def series_head(s, f: PeriodicFunction, alpha, upto: int,
                tol: float = 1e-12, direct_cap: int = 200_000,
                dps: int | None = None):
    """sum_{n = 0..upto} f(n) (n+alpha)^(-s), inclusive.

    Small ranges are summed directly (exactly-rounded fsum); huge ranges go
    through head = full series minus tail.
    """
    s = complex(s)
    if upto < 0:
        return mp.mpf(0) if dps is not None else 0j
    if upto <= direct_cap:
        if dps is not None:
            with mp.workdps(dps + 10):
                a_mp = _shift_value_mp(alpha)
                sm = mp.mpc(s.real, s.imag) if s.imag else mp.mpf(s.real)
                return mp.fsum(f(n) * (n + a_mp) ** (-sm)
                               for n in range(upto + 1))
        a = _shift_value(alpha)
        ns = np.arange(upto + 1, dtype=float)
        coeffs = np.array([f(n) for n in range(upto + 1)], dtype=float)
        if s.imag == 0:
            terms = coeffs * (ns + a) ** (-s.real)
            return complex(math.fsum(map(float, terms)), 0.0)
        terms = coeffs * (ns + a) ** (-s)
        return complex(math.fsum(map(float, terms.real)),
                       math.fsum(map(float, terms.imag)))
    full = lfunction(s, f, alpha, tol=tol / 2, dps=dps)
    return full - series_tail(s, f, alpha, upto + 1, tol=tol / 2, dps=dps)


def lfunction(s, f: PeriodicFunction, alpha, tol: float = 1e-12,
              dps: int | None = None, head_terms: int | None = None):
    """L(s, f, alpha) for s != 1 (meromorphic continuation for Re(s) > 1/2).

    Evaluation sums a short head of the defining series directly and pushes
    the rest through the residue-class split, so agreement with decompose()
    is a genuine consistency check of the index-shift identities rather
    than a comparison of one code path with itself.
    """
    s = complex(s)
    if abs(s - 1) < 1e-12:
        raise PoleAt1("s is within 1e-12 of the pole at 1", s=[s.real, s.imag])
    q = f.period
    h = 16 * q if head_terms is None else head_terms
    head = series_head(s, f, alpha, h - 1, tol=tol / 2, dps=dps) if h > 0 else 0j
    tail = series_tail(s, f, alpha, h, tol=tol / 2, dps=dps)
    out = head + tail
    if dps is not None or s.imag != 0:
        return out
    return complex(out.real, 0.0)


def lfunction_direct(s, f: PeriodicFunction, alpha, n_terms: int):
    """Brute-force partial sum with a rigorous tail bound.

    Returns (partial, bound) where |L(s,f,alpha) - partial| <= bound.  The
    bound is max|f| * integral_{n_terms-1}^inf (x+alpha)^(-sigma) dx and
    needs sigma > 1.  Independent of the Euler-Maclaurin machinery; this is
    the test oracle for everything above.
    """
    s = complex(s)
    if s.real <= 1:
        raise ValueError("direct summation needs Re(s) > 1")
    a = _shift_value(alpha)
    partial = series_head(s, f, alpha, n_terms - 1, direct_cap=max(n_terms, 1))
    sigma = s.real
    bound = f.max_abs * (n_terms - 1 + a) ** (1 - sigma) / (sigma - 1)
    return partial, bound
