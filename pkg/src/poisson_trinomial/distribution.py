"""Poisson trinomial models, their exact PMF and the parity moment quantities.

A model is a sequence of independent trials, each scoring 0, 1/2 or 1 with
probabilities ``(L, T, W)``.  The PMF of the total is stored on the doubled
lattice ``h = 2X`` so that every index is an integer.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Optional, Sequence, Tuple

import numpy as np

from ._numbers import to_fraction
from .errors import ValidationError

#: inputs within this distance of the probability simplex are clamped onto it
CLAMP_TOL = Fraction(1, 10**12)


@dataclass(frozen=True)
class TrialParams:
    """One trial: ``P(X_i = 1/2) = tie_prob``, ``P(X_i = 1) = win_prob``."""

    tie_prob: float
    win_prob: float
    loss_prob: float

    @property
    def triple(self):
        """Coefficients of ``L + T w + W w^2`` in increasing degree."""
        return (self.loss_prob, self.tie_prob, self.win_prob)


@dataclass(frozen=True)
class TrinomialModel:
    """An ordered family of trials.

    ``exact`` keeps the validated rational ``(T, W, L)`` triples the float
    parameters were rounded from, so the oracle can mirror the model exactly.
    """

    trials: Tuple[TrialParams, ...]
    exact: Tuple[Tuple[Fraction, Fraction, Fraction], ...]

    @property
    def n(self):
        return len(self.trials)

    @property
    def ties(self):
        return np.array([t.tie_prob for t in self.trials])

    @property
    def wins(self):
        return np.array([t.win_prob for t in self.trials])

    @property
    def losses(self):
        return np.array([t.loss_prob for t in self.trials])

    def to_json(self):
        """Shared model JSON, with exact rationals written as ``"p/q"`` strings."""
        return {"trials": [{"t": _rational_str(t), "w": _rational_str(w)} for t, w, _ in self.exact]}


def _rational_str(x):
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class HalfLatticePMF:
    """``probs[h] = P(X = h / 2)`` for ``h = 0, ..., 2n``."""

    n: int
    probs: np.ndarray

    @property
    def support(self):
        return np.arange(2 * self.n + 1) / 2.0

    def to_json(self):
        return {"n": int(self.n), "probs": [float(x) for x in self.probs]}

    @classmethod
    def from_json(cls, data):
        try:
            n = int(data["n"])
            probs = np.array([float(x) for x in data["probs"]], dtype=float)
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"PMF JSON: {exc}") from exc
        if n < 0 or probs.shape != (2 * n + 1,):
            raise ValidationError(f"PMF JSON: 'probs' must have 2n+1 = {2 * n + 1} entries")
        if np.any(probs < 0):
            raise ValidationError("PMF JSON: 'probs' has negative entries")
        return cls(n=n, probs=probs)


@dataclass(frozen=True)
class MomentReport:
    mu: float
    a: float
    b: float
    b_minus_a_mu: float
    mass_even: float
    mass_odd: float
    mu_even: Optional[float]
    mu_odd: Optional[float]


@dataclass(frozen=True)
class DegenerateForm:
    """A model with every ``T_i`` in {0, 1}: a Poisson binomial on ``k`` trials shifted by ``shift``."""

    k: int
    shift: float
    bernoulli_probs: Tuple[float, ...]


def _clamp(x, name):
    if x < 0:
        if x < -CLAMP_TOL:
            raise ValidationError(f"{name} = {float(x)!r} is negative")
        return Fraction(0)
    return x


def build_model(raw_pairs: Sequence) -> TrinomialModel:
    """Validate ``(T, W)`` pairs and derive ``L = 1 - T - W`` for each trial.

    Values may be ints, floats, Fractions, Decimals or strings like ``"1/3"``.
    Components within 1e-12 outside the simplex are clamped onto it; anything
    further off raises :class:`ValidationError` naming the trial index.
    """
    exact = []
    for i, pair in enumerate(raw_pairs):
        try:
            t_raw, w_raw = pair
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"trial {i}: expected a (T, W) pair, got {pair!r}") from exc
        t = _clamp(to_fraction(t_raw, f"trial {i} T"), f"trial {i} T")
        w = _clamp(to_fraction(w_raw, f"trial {i} W"), f"trial {i} W")
        excess = t + w - 1
        if excess > CLAMP_TOL:
            raise ValidationError(f"trial {i}: T + W = {float(t + w)!r} exceeds 1")
        if excess > 0:
            if t > 1:
                t, w = Fraction(1), Fraction(0)
            else:
                w = 1 - t
        exact.append((t, w, 1 - t - w))
    if not exact:
        raise ValidationError("a model needs at least one trial")
    trials = tuple(TrialParams(float(t), float(w), float(l)) for t, w, l in exact)
    return TrinomialModel(trials=trials, exact=tuple(exact))


def model_from_json(data) -> TrinomialModel:
    """Parse the shared model JSON ``{"trials": [{"t": ..., "w": ...}, ...]}``."""
    try:
        entries = data["trials"]
        pairs = [(e["t"], e["w"]) for e in entries]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"model JSON: missing or malformed field {exc}") from exc
    return build_model(pairs)


def pmf(model: TrinomialModel) -> HalfLatticePMF:
    """Exact-in-structure PMF by convolving trial triples left to right."""
    probs = np.array([1.0])
    for trial in model.trials:
        probs = np.convolve(probs, trial.triple)
    return HalfLatticePMF(n=model.n, probs=probs)


def mean(model: TrinomialModel) -> float:
    return float(sum(t.win_prob + t.tie_prob / 2 for t in model.trials))


def alternating_a(model: TrinomialModel) -> float:
    """``E[(-1)^S]`` where ``S`` counts the half-point outcomes."""
    return float(prod(1 - 2 * t.tie_prob for t in model.trials))


def _others(factors, i):
    return prod(f for j, f in enumerate(factors) if j != i)


def alternating_b(model: TrinomialModel) -> float:
    """``E[X (-1)^S]``."""
    factors = [1 - 2 * t.tie_prob for t in model.trials]
    return float(sum((t.win_prob - t.tie_prob / 2) * _others(factors, i)
                     for i, t in enumerate(model.trials)))


def b_minus_a_mu(model: TrinomialModel) -> Tuple[float, float]:
    """``b - a*mu`` computed directly and through the per-trial sum.

    The second form, ``sum T_i (W_i - L_i) prod_{j != i} (1 - 2 T_j)``, is what
    bounds the conditional means; agreement of the two is checked in tests.
    """
    direct = alternating_b(model) - alternating_a(model) * mean(model)
    factors = [1 - 2 * t.tie_prob for t in model.trials]
    lemma_form = sum(t.tie_prob * (t.win_prob - t.loss_prob) * _others(factors, i)
                     for i, t in enumerate(model.trials))
    return float(direct), float(lemma_form)


def is_structurally_degenerate(model: TrinomialModel) -> bool:
    """True iff one parity carries zero mass, i.e. every ``T_i`` is exactly 0 or 1."""
    return all(t in (0, 1) for t, _, _ in model.exact)


def moment_report(model: TrinomialModel) -> MomentReport:
    mu = mean(model)
    a = alternating_a(model)
    b = alternating_b(model)
    _, bam = b_minus_a_mu(model)
    mu_even = mu_odd = None
    if is_structurally_degenerate(model):
        # a is exactly +1 or -1 here: only one parity is populated
        n_ties = sum(1 for t, _, _ in model.exact if t == 1)
        even_side = n_ties % 2 == 0
        mass_even, mass_odd = (1.0, 0.0) if even_side else (0.0, 1.0)
        if even_side:
            mu_even = mu
        else:
            mu_odd = mu
    else:
        mass_even, mass_odd = (1 + a) / 2, (1 - a) / 2
        mu_even = (mu + b) / (1 + a)
        mu_odd = (mu - b) / (1 - a)
    return MomentReport(mu=mu, a=a, b=b, b_minus_a_mu=bam, mass_even=mass_even,
                        mass_odd=mass_odd, mu_even=mu_even, mu_odd=mu_odd)


def detect_degenerate(model: TrinomialModel) -> Optional[DegenerateForm]:
    """Return the shifted Poisson binomial form when every ``T_i`` is 0 or 1."""
    if not is_structurally_degenerate(model):
        return None
    probs = tuple(trial.win_prob for trial, (t, _, _) in zip(model.trials, model.exact) if t == 0)
    k = len(probs)
    return DegenerateForm(k=k, shift=(model.n - k) / 2, bernoulli_probs=probs)


def poisson_binomial_pmf(success_probs: Sequence[float]) -> np.ndarray:
    """PMF of a sum of independent Bernoulli trials, indexed by success count."""
    probs = np.array([1.0])
    for p in success_probs:
        probs = np.convolve(probs, (1 - p, p))
    return probs


def degenerate_pmf(form: DegenerateForm, n: int) -> np.ndarray:
    """Rebuild the doubled-lattice PMF of a degenerate model from its shifted form."""
    out = np.zeros(2 * n + 1)
    base = poisson_binomial_pmf(form.bernoulli_probs)
    offset = n - form.k  # doubled shift
    out[offset:offset + 2 * len(base):2] = base
    return out
