"""Team match play under a linear win/tie/loss model.

Team A's lineup is fixed with strengths ``a_1 >= ... >= a_n``.  Team B picks an
ordering ``sigma`` (a 1-based tuple): B's player ``sigma[i-1]`` meets A's
player ``i``.  B's total score ``X_sigma`` is Poisson trinomial and B wants to
maximize ``P(X_sigma >= k)`` for a threshold ``k`` on the half-integer grid.

With ``s = b - a`` the strength differential from B's side::

    W(s) = alpha * s + beta,   L(s) = -alpha * s + beta,   T = 1 - 2 * beta
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ._numbers import half_grid_index, to_fraction
from .distribution import TrinomialModel, TrialParams, build_model, pmf
from .errors import DomainViolation, SizeExceeded, ValidationError

log = logging.getLogger(__name__)

MAX_EXHAUSTIVE_N = 9
TIE_ATOL = 1e-12
BORDER_ATOL = 1e-9

STRONG_VS_STRONG = "StrongVsStrong"
STRONG_VS_WEAK = "StrongVsWeak"
INDETERMINATE = "IndeterminateBand"

Ordering = Tuple[int, ...]


@dataclass(frozen=True)
class LinearModel:
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", to_fraction(self.alpha, "alpha"))
        object.__setattr__(self, "beta", to_fraction(self.beta, "beta"))
        if not self.alpha > 0:
            raise ValidationError(f"alpha must be positive, got {self.alpha}")
        if not 0 < self.beta <= Fraction(1, 2):
            raise ValidationError(f"beta must lie in (0, 1/2], got {self.beta}")

    @property
    def tie_prob(self):
        return 1 - 2 * self.beta

    @property
    def has_ties(self):
        return self.beta < Fraction(1, 2)

    def max_differential(self):
        """Half-width of the open interval of admissible differentials."""
        return min(self.beta, 1 - self.beta) / self.alpha


@dataclass(frozen=True)
class Team:
    strengths: Tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(to_fraction(x, "strength") for x in self.strengths)
        if any(x < y for x, y in zip(vals, vals[1:])):
            raise ValidationError("team strengths must be sorted non-increasing")
        object.__setattr__(self, "strengths", vals)

    def __len__(self):
        return len(self.strengths)


@dataclass(frozen=True)
class MatchupInstance:
    team_a: Team
    team_b: Team
    model: LinearModel
    k2: int

    def __post_init__(self):
        n = len(self.team_a)
        if n == 0 or len(self.team_b) != n:
            raise ValidationError("teams must be non-empty and of equal size")
        if not (isinstance(self.k2, int) and 0 <= self.k2 <= 2 * n):
            raise ValidationError(f"k2 = {self.k2!r} must be an integer in 0..{2 * n}")
        bound = self.model.max_differential()
        for a in self.team_a.strengths:
            for b in self.team_b.strengths:
                if not abs(b - a) < bound:
                    raise DomainViolation(float(a), float(b), float(b - a))

    @property
    def n(self):
        return len(self.team_a)

    @property
    def k(self):
        return self.k2 / 2

    def with_k2(self, k2):
        return MatchupInstance(self.team_a, self.team_b, self.model, k2)


def make_instance(alpha, beta, team_a, team_b, k) -> MatchupInstance:
    """Build an instance; ``k`` must sit on the half-integer grid."""
    return MatchupInstance(Team(tuple(team_a)), Team(tuple(team_b)),
                           LinearModel(alpha, beta), half_grid_index(k))


def instance_from_json(data) -> MatchupInstance:
    try:
        return make_instance(data["alpha"], data["beta"], data["team_a"], data["team_b"], data["k"])
    except KeyError as exc:
        raise ValidationError(f"instance JSON: missing field {exc}") from exc


def identity(n) -> Ordering:
    return tuple(range(1, n + 1))


def reversal(n) -> Ordering:
    return tuple(range(n, 0, -1))


def _check_ordering(sigma, n):
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValidationError(f"{sigma!r} is not a permutation of 1..{n}")


def _exact_win_loss(model, a, b):
    s = to_fraction(b) - to_fraction(a)
    w = model.alpha * s + model.beta
    l = -model.alpha * s + model.beta
    if not (0 <= w <= 1 and 0 <= l <= 1):
        raise DomainViolation(float(a), float(b), float(s))
    return w, l


def trial_from_strengths(model: LinearModel, a, b) -> TrialParams:
    """Trial for B's player of strength ``b`` against A's player of strength ``a``."""
    w, l = _exact_win_loss(model, a, b)
    return TrialParams(tie_prob=float(model.tie_prob), win_prob=float(w), loss_prob=float(l))


def build_distribution(instance: MatchupInstance, sigma: Sequence[int]) -> TrinomialModel:
    """Trials of ``X_sigma`` in match order."""
    n = instance.n
    _check_ordering(sigma, n)
    pairs = []
    for i in range(n):
        a, b = instance.team_a.strengths[i], instance.team_b.strengths[sigma[i] - 1]
        w, _ = _exact_win_loss(instance.model, a, b)
        pairs.append((instance.model.tie_prob, w))
    return build_model(pairs)


def expected_score(instance: MatchupInstance) -> float:
    """``n/2 + alpha * (sum b - sum a)``; the same for every ordering."""
    m = instance.model
    return float(Fraction(instance.n, 2) + m.alpha * (sum(instance.team_b.strengths)
                                                      - sum(instance.team_a.strengths)))


def tail_probability(instance: MatchupInstance, sigma: Sequence[int], k2: Optional[int] = None) -> float:
    """``P(X_sigma >= k2 / 2)``; ``k2`` defaults to the instance threshold."""
    k2 = instance.k2 if k2 is None else k2
    probs = pmf(build_distribution(instance, sigma)).probs
    return float(probs[k2:].sum())


def swap_delta(instance: MatchupInstance, sigma: Sequence[int], i: int, j: int) -> float:
    """``-alpha^2 (a_i - a_j)(b_sigma(i) - b_sigma(j))`` for 1-based positions ``i < j``."""
    if not 1 <= i < j <= instance.n:
        raise ValidationError(f"need 1 <= i < j <= n, got i={i}, j={j}")
    a, b = instance.team_a.strengths, instance.team_b.strengths
    d = -instance.model.alpha ** 2 * (a[i - 1] - a[j - 1]) * (b[sigma[i - 1] - 1] - b[sigma[j - 1] - 1])
    return float(d)


def residual_statistic(instance: MatchupInstance, sigma: Sequence[int], i: int, j: int,
                       k2: Optional[int] = None) -> float:
    """``f(Y, k)`` where ``Y`` is the score from every match except ``i`` and ``j``.

    ``f(Y, k) = P(Y = k-2) - P(Y = k-1) + P(Y = k-3/2) - P(Y = k-1/2)``; in doubled
    units the arguments are ``k2 - 4, k2 - 2, k2 - 3, k2 - 1``.
    """
    if not 1 <= i < j <= instance.n:
        raise ValidationError(f"need 1 <= i < j <= n, got i={i}, j={j}")
    k2 = instance.k2 if k2 is None else k2
    full = build_distribution(instance, sigma)
    rest = [t for m, t in enumerate(full.trials) if m not in (i - 1, j - 1)]
    probs = np.array([1.0])
    for trial in rest:
        probs = np.convolve(probs, trial.triple)

    def at(h):
        return float(probs[h]) if 0 <= h < len(probs) else 0.0

    return (at(k2 - 4) - at(k2 - 2)) + (at(k2 - 3) - at(k2 - 1))


def compose_swap(sigma: Sequence[int], i: int, j: int) -> Ordering:
    """``sigma o (i j)``: the B players at positions ``i`` and ``j`` trade places."""
    out = list(sigma)
    out[i - 1], out[j - 1] = out[j - 1], out[i - 1]
    return tuple(out)


@dataclass(frozen=True)
class Decision:
    kind: str
    mu: float
    k: float
    band: Optional[Tuple[float, float]] = None
    borderline: bool = False

    def to_json(self):
        return {"kind": self.kind, "mu": self.mu, "k": self.k,
                "band": list(self.band) if self.band else None, "borderline": self.borderline}


def theorem_thresholds(model: LinearModel) -> Tuple[float, float]:
    """``(upper, lower)`` offsets from the mean: k >= mu + upper or k <= mu - lower."""
    return (2.5, 2.0) if model.has_ties else (2.0, 1.0)


def optimize_by_theorem(instance: MatchupInstance) -> Decision:
    """Classify the threshold into the strong-vs-strong, strong-vs-weak or open band."""
    mu = expected_score(instance)
    k = instance.k
    upper, lower = theorem_thresholds(instance.model)
    diff = k - mu
    borderline = abs(diff - upper) <= BORDER_ATOL or abs(diff + lower) <= BORDER_ATOL
    if borderline:
        log.debug("threshold k=%s is within %g of a regime boundary (mu=%r)", k, BORDER_ATOL, mu)
    if diff >= upper:
        return Decision(STRONG_VS_STRONG, mu, k, borderline=borderline)
    if diff <= -lower:
        return Decision(STRONG_VS_WEAK, mu, k, borderline=borderline)
    return Decision(INDETERMINATE, mu, k, band=(mu - lower, mu + upper), borderline=borderline)


@dataclass(frozen=True)
class SearchResult:
    strategy: str
    best_orderings: List[Ordering]
    tail: float
    evaluated: int
    path: Optional[List[Ordering]] = None

    def to_json(self):
        out = {"strategy": self.strategy, "best_orderings": [list(s) for s in self.best_orderings],
               "tail": self.tail, "evaluated": self.evaluated}
        if self.path is not None:
            out["path"] = [list(s) for s in self.path]
        return out


def tail_table(instance: MatchupInstance):
    """``(ordering, tail)`` for every ordering, in lexicographic order."""
    n = instance.n
    if n > MAX_EXHAUSTIVE_N:
        raise SizeExceeded(f"exhaustive search is capped at n = {MAX_EXHAUSTIVE_N}, got {n}")
    return [(sigma, tail_probability(instance, sigma)) for sigma in permutations(range(1, n + 1))]


def _directed(sigma, i, direction):
    """Whether swapping positions ``i, i+1`` moves toward the target ordering."""
    if direction == STRONG_VS_STRONG:
        return sigma[i - 1] > sigma[i]
    if direction == STRONG_VS_WEAK:
        return sigma[i - 1] < sigma[i]
    return False


def _local_search(instance, start):
    # In a theorem regime every swap toward the target is weakly improving, so
    # plateau moves (delta = 0 from equal strengths) are taken only in that
    # direction; the inversion count then bounds the number of such moves.
    direction = optimize_by_theorem(instance).kind
    sigma = tuple(start)
    current = tail_probability(instance, sigma)
    path, evaluated = [sigma], 1
    while True:
        best_gain, best_next, plateau = 0.0, None, None
        for i in range(1, instance.n):
            cand = compose_swap(sigma, i, i + 1)
            value = tail_probability(instance, cand)
            evaluated += 1
            gain = value - current
            # strict comparison keeps the lowest i among equal gains
            if gain > max(best_gain, TIE_ATOL):
                best_gain, best_next = gain, (cand, value)
            elif plateau is None and gain >= -TIE_ATOL and _directed(sigma, i, direction):
                plateau = (cand, value)
        step = best_next or plateau
        if step is None:
            return SearchResult("inversion_local_search", [sigma], current, evaluated, path)
        sigma, current = step
        path.append(sigma)


def optimize_search(instance: MatchupInstance, strategy: str = "exhaustive",
                    start: Optional[Sequence[int]] = None) -> SearchResult:
    """Search orderings for the largest tail.

    ``exhaustive`` returns every ordering within 1e-12 of the best tail.
    ``inversion_local_search`` starts from ``start`` (default: the identity)
    and applies the best improving adjacent swap until none improves; in the
    regimes where the threshold decides the optimum it also crosses plateaus
    by swaps that remove (or, below the mean, add) an inversion.
    """
    if strategy == "exhaustive":
        table = tail_table(instance)
        best = max(v for _, v in table)
        winners = [s for s, v in table if v >= best - TIE_ATOL]
        return SearchResult(strategy, winners, best, len(table))
    if strategy in ("inversion_local_search", "local"):
        start = identity(instance.n) if start is None else tuple(start)
        _check_ordering(start, instance.n)
        return _local_search(instance, start)
    raise ValidationError(f"unknown strategy {strategy!r}")
