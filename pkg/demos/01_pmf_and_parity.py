"""
Sums of win/tie/loss trials and their two interleaved halves
=============================================================

Six independent matches, each worth 0, 1/2 or 1 point.  The total lives on
the half-integer lattice, and splits into an integer part (an even number
of ties) and a half-integer part (an odd number of ties).
"""

import json
from pathlib import Path

import numpy as np

from poisson_trinomial import distribution as dist
from poisson_trinomial import parity

with open(Path(__file__).parent / "data" / "ryder_day.json") as fh:
    model = dist.model_from_json(json.load(fh))

# exact PMF of the total score, indexed by h = 2X
law = dist.pmf(model)
for x, p in zip(law.support, law.probs):
    print(f"P(X = {x:4.1f}) = {p:.6f}")

# the parity moments: a = E[(-1)^S], b = E[X (-1)^S] with S the number of ties
mom = dist.moment_report(model)
print(f"\nmu = {mom.mu:.4f}, a = {mom.a:.4f}, b = {mom.b:.4f}")
print(f"P(X integer) = {mom.mass_even:.4f}, P(X half-integer) = {mom.mass_odd:.4f}")
print(f"mu_even = {mom.mu_even:.4f}, mu_odd = {mom.mu_odd:.4f}")

# both conditional means sit within 1/2 of the overall mean
print(f"|mu_even - mu| = {abs(mom.mu_even - mom.mu):.4f} <= 0.5")
print(f"|b - a mu| = {abs(mom.b_minus_a_mu):.4f} <= (1 - |a|)/2 = {(1 - abs(mom.a)) / 2:.4f}")

# conditional laws and their modes
report = parity.structure_report(model)
for part in (report.even, report.odd):
    print(f"\n{part.parity} part on Z + {part.offset}: modes {part.modes}, mean {part.mean:.4f}")
    print("  probs:", np.round(part.probs, 4))
print("\ngaps:", json.dumps(report.gaps, indent=1))

# a model where every T_i is 0 or 1 has only one populated half
flat = dist.build_model([(0, 0.5), (0, 0.3), (1, 0)])
print("\ndegenerate form:", dist.detect_degenerate(flat))
print("PMF:", dist.pmf(flat).probs)
