"""Structured failure classes.

Every non-trivial operation in the package fails loudly with one of these
exceptions.  Each carries a ``details`` dict so that callers (and the CLI)
can serialize the failure as JSON instead of scraping message strings.
"""

from __future__ import annotations


class ZetalabError(Exception):
    """Base class; ``details`` holds JSON-serializable diagnostics."""

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_json(self) -> dict:
        return {"error": type(self).__name__, "message": self.message,
                "details": self.details}


# --- series evaluation ------------------------------------------------------

class PoleAt1(ZetalabError):
    """Evaluation requested within 1e-12 of the simple pole at s = 1."""


class PrecisionUnreachable(ZetalabError):
    """Requested tolerance is below the floor of the working precision."""


# --- simultaneous approximation ---------------------------------------------

class BudgetExhausted(ZetalabError):
    """No witness t found within the search budget.

    This never refutes rational independence of the frequencies; it only
    says the bounded search came up empty.
    """


class DegenerateInput(ZetalabError):
    """Duplicate frequencies make the approximation problem ill-posed."""


# --- twist construction ------------------------------------------------------

class NoSuchIndex(ZetalabError):
    """No truncation index can dominate the tail (mean of f not positive)."""


class SignChangeNotBracketed(ZetalabError):
    """The twisted series does not change sign on the target interval."""


class AnnulusGap(ZetalabError):
    """The free-weight multiset has a positive inner radius, so the
    correction disk is not fully reachable."""


class CaseUnreachable(ZetalabError):
    """No exponent makes the initial head small against the tail."""


# --- annulus calculus ---------------------------------------------------------

class NotInAnnulus(ZetalabError):
    """Target lies outside the reachable annulus."""


# --- quadratic field arithmetic ----------------------------------------------

class NotQuadratic(ZetalabError):
    """Operation requires a quadratic irrational shift."""


# --- zero location -------------------------------------------------------------

class ZeroOnBoundary(ZetalabError):
    """Contour passes too close to a zero; shrink or move the region."""


class QuadratureStalled(ZetalabError):
    """Adaptive boundary refinement hit its point cap before stabilizing."""


class LeftHalfPlane(ZetalabError):
    """Newton iterate escaped the half-plane of absolute convergence."""


class NoConvergence(ZetalabError):
    """Newton refinement did not meet tolerance within the iteration cap."""


class FVanishesOnCircle(ZetalabError):
    """Comparison function vanishes (or nearly) on the certificate circle."""


class NegativeMargin(ZetalabError):
    """Certificate margin is not positive; the shift t is inadequate."""


class ResidueZero(ZetalabError):
    """The series has no pole at s = 1, so the construction does not apply."""


# --- CLI -----------------------------------------------------------------------

class ConfigInvalid(ZetalabError):
    """Run configuration failed validation."""
