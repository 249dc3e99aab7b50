import math

import numpy as np
import pytest


def brute_series(f, alpha, s, n_terms):
    """Independent oracle: exactly-rounded partial sum of the defining
    series plus a rigorous tail bracket (integral bounds on |f| <= max|f|).

    Returns (value, halfwidth) with |true - value| <= halfwidth.  Needs
    Re(s) > 1.  No Euler-Maclaurin, no residue-class splitting.
    """
    s = complex(s)
    a = float(alpha)
    sigma = s.real
    assert sigma > 1
    terms_re, terms_im = [], []
    for n in range(n_terms):
        w = f(n) * (n + a) ** (-s)
        terms_re.append(w.real)
        terms_im.append(w.imag)
    partial = complex(math.fsum(terms_re), math.fsum(terms_im))
    mf = max(abs(v) for v in f.values)
    hi = mf * (n_terms - 1 + a) ** (1 - sigma) / (sigma - 1)
    return partial, hi


def brute_hurwitz(s, a, n_terms):
    class One:
        values = (1.0,)

        def __call__(self, n):
            return 1.0

    return brute_series(One(), a, s, n_terms)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260810)
