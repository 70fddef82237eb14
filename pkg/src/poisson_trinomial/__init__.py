"""Poisson trinomial distributions: sums of independent {0, 1/2, 1}-valued trials.

Modules:
    distribution: models, the exact PMF by convolution, and the parity moments
        (mean, a = E[(-1)^S], b = E[X (-1)^S], conditional means).
    parity: even/odd split of the generating function, conditional laws,
        modes, log-concavity and Poisson binomial factorization.
    oracle: exact rational ground truth by brute-force enumeration.
    matchup: linear win/tie/loss model and lineup ordering optimization.
    verify: seeded property suites exercising every invariant.
    cli: the ``poisson-trinomial`` command.
"""

from .distribution import (
    DegenerateForm,
    HalfLatticePMF,
    MomentReport,
    TrialParams,
    TrinomialModel,
    alternating_a,
    alternating_b,
    b_minus_a_mu,
    build_model,
    detect_degenerate,
    mean,
    moment_report,
    pmf,
)
from .errors import (
    DomainViolation,
    EmptyParity,
    HypothesisNotMet,
    NotRealRooted,
    SizeExceeded,
    TrinomialError,
    ValidationError,
)
from .parity import (
    conditional_pmf,
    factor_poisson_binomial,
    hurwitz_check,
    is_log_concave,
    split_parity,
    structure_report,
)

__version__ = "0.1.0"
