"""Parity split of the score distribution and its Poisson binomial structure.

With ``G(w) = sum_h P(2X = h) w^h`` written as ``p(w^2) + w q(w^2)``, the
integer-valued part of ``X`` is read off ``p`` and the half-integer part off
``q``.  Both polynomials have only real non-positive roots, so each
normalized part is a Poisson binomial law: log-concave with one mode or two
adjacent ones.
"""

import cmath
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .distribution import (
    HalfLatticePMF,
    MomentReport,
    TrialParams,
    TrinomialModel,
    detect_degenerate,
    moment_report,
    pmf,
    poisson_binomial_pmf,
)
from .errors import EmptyParity, HypothesisNotMet, NotRealRooted, ValidationError

MODE_RTOL = 1e-12
UNDERFLOW = 1e-300
FACTOR_RESIDUAL_MAX = 1e-8
# eigenvalues of clustered real roots pick up O(sqrt(eps)) imaginary noise
_IMAG_RTOL = 1e-4
_REAL_ATOL = 1e-8

EVEN, ODD = "even", "odd"


@dataclass(frozen=True)
class ParityDecomposition:
    p_coeffs: np.ndarray
    q_coeffs: np.ndarray
    p_norm: float
    q_norm: float

    def to_json(self):
        return {"p_coeffs": [float(x) for x in self.p_coeffs],
                "q_coeffs": [float(x) for x in self.q_coeffs],
                "p_norm": float(self.p_norm), "q_norm": float(self.q_norm)}


@dataclass(frozen=True)
class ConditionalDistribution:
    """Normalized parity part; ``probs[k]`` is the probability of ``X = k + offset``."""

    parity: str
    offset: float
    probs: np.ndarray
    modes: Tuple[float, ...]

    @property
    def support(self):
        return np.arange(len(self.probs)) + self.offset

    @property
    def mean(self):
        return float(np.dot(self.support, self.probs))

    def to_json(self):
        return {"offset": self.offset, "probs": [float(x) for x in self.probs],
                "modes": list(self.modes), "mean": self.mean}


@dataclass(frozen=True)
class PoissonBinomialFactorization:
    success_probs: Tuple[float, ...]
    residual: float

    def to_json(self):
        return {"success_probs": list(self.success_probs), "residual": self.residual}


@dataclass(frozen=True)
class StructureReport:
    moments: MomentReport
    even: Optional[ConditionalDistribution]
    odd: Optional[ConditionalDistribution]
    gaps: dict
    degenerate: Optional[object] = None

    def to_json(self):
        m = self.moments
        out = {"mu": m.mu, "a": m.a, "b": m.b, "b_minus_a_mu": m.b_minus_a_mu,
               "mass_even": m.mass_even, "mass_odd": m.mass_odd,
               "mu_even": m.mu_even, "mu_odd": m.mu_odd,
               "even": self.even.to_json() if self.even else None,
               "odd": self.odd.to_json() if self.odd else None,
               "gaps": self.gaps}
        if self.degenerate is not None:
            out["degenerate"] = {"k": self.degenerate.k, "shift": self.degenerate.shift,
                                 "bernoulli_probs": list(self.degenerate.bernoulli_probs)}
        return out


def split_parity(dist: HalfLatticePMF) -> ParityDecomposition:
    probs = np.asarray(dist.probs, dtype=float)
    p, q = probs[0::2].copy(), probs[1::2].copy()
    return ParityDecomposition(p_coeffs=p, q_coeffs=q, p_norm=float(p.sum()), q_norm=float(q.sum()))


def find_modes(probs: Sequence[float], rtol: float = MODE_RTOL) -> List[int]:
    """Indices whose mass is within ``rtol * max`` of the maximum."""
    probs = np.asarray(probs, dtype=float)
    top = probs.max()
    return [int(i) for i in np.flatnonzero(probs >= top - rtol * top)]


def conditional_pmf(decomp: ParityDecomposition, parity: str) -> ConditionalDistribution:
    if parity == EVEN:
        coeffs, norm, offset = decomp.p_coeffs, decomp.p_norm, 0.0
    elif parity == ODD:
        coeffs, norm, offset = decomp.q_coeffs, decomp.q_norm, 0.5
    else:
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    if norm <= 0 or len(coeffs) == 0:
        raise EmptyParity(f"the {parity} part has zero mass")
    probs = np.asarray(coeffs, dtype=float) / norm
    modes = tuple(k + offset for k in find_modes(probs))
    return ConditionalDistribution(parity=parity, offset=offset, probs=probs, modes=modes)


def is_log_concave(probs: Sequence[float], tol: float = 1e-12) -> Tuple[bool, Optional[int]]:
    """Check ``c_k^2 >= c_{k-1} c_{k+1}`` and contiguous support.

    Returns ``(True, None)`` or ``(False, k)`` with the first offending index.
    A support gap is reported at the first zero lying inside the support.
    """
    c = np.asarray(probs, dtype=float)
    if np.any(c < 0):
        raise ValidationError("log-concavity is defined for non-negative sequences")
    positive = np.flatnonzero(c >= UNDERFLOW)
    if len(positive):
        gap = np.flatnonzero(c[positive[0]:positive[-1] + 1] < UNDERFLOW)
        if len(gap):
            return False, int(positive[0] + gap[0])
    if len(c) < 3:
        return True, None
    scale = c.max() ** 2
    bad = np.flatnonzero(c[1:-1] ** 2 < c[:-2] * c[2:] - tol * scale)
    if len(bad):
        return False, int(bad[0] + 1)
    return True, None


def factor_poisson_binomial(coeffs: Sequence[float]) -> PoissonBinomialFactorization:
    """Write ``c(z) / c(1)`` as a product of Bernoulli generating functions.

    Each real root ``-beta <= 0`` becomes a success probability ``1 / (1 + beta)``.
    A zero constant term contributes certain successes, and missing top-degree
    terms contribute certain failures, so the result always has
    ``len(coeffs) - 1`` entries, sorted in decreasing order.
    """
    c = np.asarray(coeffs, dtype=float)
    if c.ndim != 1 or len(c) == 0:
        raise ValidationError("need a non-empty coefficient sequence")
    if np.any(c < 0):
        raise ValidationError("coefficients must be non-negative")
    total = c.sum()
    if not total > 0:
        raise ValidationError("coefficients must have positive sum")
    nominal = len(c) - 1
    nz = np.flatnonzero(c)
    lo, hi = int(nz[0]), int(nz[-1])
    core = c[lo:hi + 1]
    probs = [1.0] * lo + [0.0] * (nominal - hi)
    if len(core) > 1:
        roots = np.roots(core[::-1])
        for r in roots:
            if abs(r.imag) > _IMAG_RTOL * (1 + abs(r)) or r.real > _REAL_ATOL * (1 + abs(r)):
                raise NotRealRooted(f"root {r} is not real and non-positive")
        betas = np.clip(-roots.real, 0.0, None)
        probs.extend(1.0 / (1.0 + betas))
    probs.sort(reverse=True)
    recon = poisson_binomial_pmf(probs)
    residual = float(np.max(np.abs(recon - c / total)))
    if not residual <= FACTOR_RESIDUAL_MAX:
        raise NotRealRooted(f"reconstruction residual {residual:.3e} exceeds {FACTOR_RESIDUAL_MAX:g}")
    return PoissonBinomialFactorization(success_probs=tuple(float(p) for p in probs), residual=residual)


def hurwitz_check(trial: TrialParams) -> bool:
    """Whether both roots of ``L + T w + W w^2`` lie in the open left half-plane."""
    l, t, w = trial.loss_prob, trial.tie_prob, trial.win_prob
    if min(l, t, w) <= 0:
        raise HypothesisNotMet(f"need L, T, W > 0, got L={l}, T={t}, W={w}")
    disc = cmath.sqrt(t * t - 4 * l * w)
    roots = ((-t + disc) / (2 * w), (-t - disc) / (2 * w))
    return all(r.real < 0 for r in roots)


def _gap_block(moments, even, odd):
    mu = moments.mu
    gaps = {
        "mean_gap_even": None if moments.mu_even is None else abs(moments.mu_even - mu),
        "mean_gap_odd": None if moments.mu_odd is None else abs(moments.mu_odd - mu),
        "mode_gaps_even": [],
        "mode_gaps_odd": [],
        "mode_conditional_gaps_even": [],
        "mode_conditional_gaps_odd": [],
        "max_mode_pair_gap": None,
    }
    if even is not None and odd is not None:
        gaps["mean_pair_gap"] = abs(moments.mu_even - moments.mu_odd)
    else:
        gaps["mean_pair_gap"] = None
    for part, cond_mean, key in ((even, moments.mu_even, "even"), (odd, moments.mu_odd, "odd")):
        if part is None:
            continue
        gaps[f"mode_gaps_{key}"] = [abs(m - mu) for m in part.modes]
        gaps[f"mode_conditional_gaps_{key}"] = [abs(m - cond_mean) for m in part.modes]
    if even is not None and odd is not None:
        gaps["max_mode_pair_gap"] = max(abs(me - mo) for me in even.modes for mo in odd.modes)
    return gaps


def structure_report(model: TrinomialModel) -> StructureReport:
    """Moments, both conditional parts and every mode/mean gap of the structure theorem."""
    moments = moment_report(model)
    decomp = split_parity(pmf(model))
    parts = {}
    for parity, mass in ((EVEN, moments.mass_even), (ODD, moments.mass_odd)):
        # emptiness follows the structural classification, not the float mass
        parts[parity] = conditional_pmf(decomp, parity) if mass > 0 else None
    return StructureReport(moments=moments, even=parts[EVEN], odd=parts[ODD],
                           gaps=_gap_block(moments, parts[EVEN], parts[ODD]),
                           degenerate=detect_degenerate(model))


def coefficient_csv_rows(decomp: ParityDecomposition):
    """Rows ``(index, p_k, q_k)``; ``q_k`` is blank past the end of ``q``."""
    rows = []
    for k, pk in enumerate(decomp.p_coeffs):
        qk = decomp.q_coeffs[k] if k < len(decomp.q_coeffs) else None
        rows.append((k, float(pk), None if qk is None else float(qk)))
    return rows
