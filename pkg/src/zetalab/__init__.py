"""zetalab: a numerical laboratory for Hurwitz-type series.

Evaluation of zeta(s, alpha) and L(s, f, alpha) with periodic coefficients,
simultaneous Diophantine approximation, the annulus calculus of unimodular
sums, quadratic-field ideal factorization with private-prime censuses,
twisted-series constructions, and argument-principle / Rouche zero
certificates.
"""

from .annulus import AnnulusSpec, contains, radii, realize, realize_phases, \
    sample_oracle
from .errors import ZetalabError
from .kronecker import KroneckerProblem, KroneckerSolution, SearchBudget, \
    solve, solve_character_targets, verify
from .quadfield import CasselsBlock, IdealFactorization, MultiplicativeBasis, \
    PrimeIdeal, QuadElement, QuadraticField, factor_shift, fundamental_unit, \
    ideal_denominator, multiplicative_basis, private_primes
from .series import Alpha, PeriodicFunction, decompose, hurwitz_zeta, \
    lfunction, lfunction_direct, residue, series_head, series_tail
from .twist import BlockSchedule, GreedyState, ScheduleReport, TwistedSeries, \
    choose_case_sigma, find_sigma0, greedy_step, run_schedule, \
    truncation_index
from .zerofinder import PipelineBudget, PipelineResult, QuadratureSpec, \
    Rectangle, RoucheCertificate, ZeroRecord, argument_count, \
    argument_count_circle, find_zero_pipeline, newton_refine, \
    rouche_certificate, rouche_check

__version__ = "0.1.0"
