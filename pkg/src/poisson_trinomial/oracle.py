"""Exact ground truth by brute-force enumeration of outcome vectors.

Nothing here calls the convolution or optimizer code.  Each model is put over
a common denominator ``D`` so that every outcome vector contributes an
integer numerator over ``D**n``; the final values are exact ``Fraction``s.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import lcm
from typing import Dict, FrozenSet, Optional, Sequence, Tuple

from ._numbers import to_fraction
from .errors import SizeExceeded, ValidationError

MAX_ENUMERATION_N = 12
MAX_ORDERING_N = 7


@dataclass(frozen=True)
class RationalModel:
    """Exact ``(T, W, L)`` triples, each summing to exactly one."""

    trials: Tuple[Tuple[Fraction, Fraction, Fraction], ...]

    def __post_init__(self):
        for i, (t, w, l) in enumerate(self.trials):
            if min(t, w, l) < 0 or t + w + l != 1:
                raise ValidationError(f"trial {i}: ({t}, {w}, {l}) is not a probability triple")

    @property
    def n(self):
        return len(self.trials)


@dataclass(frozen=True)
class ExactPMF:
    probs: Tuple[Fraction, ...]

    def to_json(self):
        return {"n": (len(self.probs) - 1) // 2, "probs": [str(p) for p in self.probs]}


def rational_model(source) -> RationalModel:
    """Build a :class:`RationalModel` from a ``TrinomialModel`` or ``(T, W)`` pairs."""
    exact = getattr(source, "exact", None)
    if exact is not None:
        return RationalModel(tuple(exact))
    trials = []
    for i, (t, w) in enumerate(source):
        t, w = to_fraction(t, f"trial {i} T"), to_fraction(w, f"trial {i} W")
        trials.append((t, w, 1 - t - w))
    return RationalModel(tuple(trials))


def _integer_options(trials):
    """Per-trial ``(doubled score, numerator)`` options over one common denominator."""
    denom = lcm(*(x.denominator for trial in trials for x in trial)) if trials else 1
    options = []
    for t, w, l in trials:
        opts = [(h, int(p * denom)) for h, p in ((0, l), (1, t), (2, w))]
        options.append([o for o in opts if o[1]])
    return options, denom


def _enumerate_numerators(options):
    """Sum outcome-vector numerators by doubled score with a mixed-radix odometer."""
    n = len(options)
    acc = [0] * (2 * n + 1)
    if any(not opts for opts in options):
        return acc
    if n == 0:
        acc[0] = 1
        return acc
    digits = [0] * n
    # prefix[i] = (score, product) of the first i digits
    prefix_h = [0] * (n + 1)
    prefix_p = [1] * (n + 1)
    for i in range(n):
        h, p = options[i][0]
        prefix_h[i + 1] = prefix_h[i] + h
        prefix_p[i + 1] = prefix_p[i] * p
    radices = [len(opts) for opts in options]
    last = n - 1
    while True:
        acc[prefix_h[n]] += prefix_p[n]
        i = last
        while i >= 0 and digits[i] + 1 == radices[i]:
            digits[i] = 0
            i -= 1
        if i < 0:
            return acc
        digits[i] += 1
        for j in range(i, n):
            h, p = options[j][digits[j]]
            prefix_h[j + 1] = prefix_h[j] + h
            prefix_p[j + 1] = prefix_p[j] * p


def _check_size(n, cap):
    if n > cap:
        raise SizeExceeded(f"n = {n} exceeds the enumeration cap of {cap}")


def enumerate_pmf(model: RationalModel) -> ExactPMF:
    """Exact PMF of the doubled score by summing over all ``3**n`` outcome vectors."""
    _check_size(model.n, MAX_ENUMERATION_N)
    options, denom = _integer_options(model.trials)
    total = denom ** model.n
    return ExactPMF(tuple(Fraction(c, total) for c in _enumerate_numerators(options)))


def oracle_conditional_means(model: RationalModel) -> Tuple[Fraction, Optional[Fraction], Optional[Fraction]]:
    """Exact ``(mu, mu_even, mu_odd)``; a conditional mean is ``None`` when its mass is zero."""
    probs = enumerate_pmf(model).probs
    mu = sum(Fraction(h, 2) * p for h, p in enumerate(probs))
    means = []
    for parity in (0, 1):
        mass = sum(probs[parity::2])
        if mass == 0:
            means.append(None)
        else:
            means.append(sum(Fraction(h, 2) * probs[h] for h in range(parity, len(probs), 2)) / mass)
    return mu, means[0], means[1]


def oracle_tail(model: RationalModel, k2: int) -> Fraction:
    """Exact ``P(X >= k2 / 2)``."""
    if not 0 <= k2 <= 2 * model.n + 1:
        raise ValidationError(f"k2 = {k2} outside 0..{2 * model.n + 1}")
    return sum(enumerate_pmf(model).probs[k2:], Fraction(0))


def _exact_trial(alpha, beta, a, b):
    s = b - a
    w = alpha * s + beta
    l = -alpha * s + beta
    t = 1 - 2 * beta
    if not (0 <= w <= 1 and 0 <= l <= 1):
        raise ValidationError(f"differential {s} leaves the linear model's domain")
    return (t, w, l)


def oracle_tail_table(instance) -> Dict[Tuple[int, ...], Tuple[Fraction, ...]]:
    """Exact tails ``P(X_sigma >= k2/2)`` for every ordering and every ``k2 = 0..2n``.

    Orderings are 1-based tuples; ``sigma[i-1]`` is the team-B player facing
    team-A player ``i``.
    """
    alpha = to_fraction(instance.model.alpha)
    beta = to_fraction(instance.model.beta)
    a = [to_fraction(x) for x in instance.team_a.strengths]
    b = [to_fraction(x) for x in instance.team_b.strengths]
    n = len(a)
    _check_size(n, MAX_ORDERING_N)
    table = {}
    for sigma in permutations(range(1, n + 1)):
        trials = [_exact_trial(alpha, beta, a[i], b[sigma[i] - 1]) for i in range(n)]
        options, denom = _integer_options(trials)
        counts = _enumerate_numerators(options)
        total = denom ** n
        tails, running = [], 0
        for c in reversed(counts):
            running += c
            tails.append(Fraction(running, total))
        table[sigma] = tuple(reversed(tails))
    return table


def argmax_orderings(table, k2: int) -> FrozenSet[Tuple[int, ...]]:
    best = max(tails[k2] for tails in table.values())
    return frozenset(s for s, tails in table.items() if tails[k2] == best)


def oracle_ordering_optimum(instance) -> FrozenSet[Tuple[int, ...]]:
    """All orderings maximizing the exact tail at the instance's threshold."""
    return argmax_orderings(oracle_tail_table(instance), instance.k2)
