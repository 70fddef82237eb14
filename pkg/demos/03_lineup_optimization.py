"""
Choosing a singles lineup
=========================

Team B faces a fixed team A lineup and needs at least k points.  Under a
linear win/tie/loss model the expected score does not depend on the
ordering, but the chance of reaching k does.  Far above the mean, play
strength against strength; far below it, strength against weakness.
"""

import json
from pathlib import Path

from poisson_trinomial import matchup as M

with open(Path(__file__).parent / "data" / "instance.json") as fh:
    inst = M.instance_from_json(json.load(fh))

mu = M.expected_score(inst)
print(f"expected score {mu:.3f} for every ordering")

for k2 in range(2 * inst.n + 1):
    case = inst.with_k2(k2)
    decision = M.optimize_by_theorem(case)
    best = M.optimize_search(case, "exhaustive")
    print(f"k = {k2 / 2:4.1f}: {decision.kind:18s} best {best.best_orderings[0]} "
          f"tail {best.tail:.5f} ({len(best.best_orderings)} optimal)")

# the swap calculus behind the result: exchanging two opponents changes the
# tail by delta * f(Y, k)
sigma = (2, 1, 3, 5, 4)
gain = M.tail_probability(inst, M.compose_swap(sigma, 1, 2)) - M.tail_probability(inst, sigma)
print(f"\nswap gain {gain:.6e} = {M.swap_delta(inst, sigma, 1, 2):.4f} * "
      f"{M.residual_statistic(inst, sigma, 1, 2):.6f}")

# a twelve-match final day is out of reach for brute force; local search by
# adjacent swaps still finds the predicted order in the decided regimes
a = [3.0, 2.8, 2.5, 2.2, 2.0, 1.8, 1.5, 1.2, 1.0, 0.8, 0.5, 0.2]
b = [2.9, 2.6, 2.4, 2.1, 1.9, 1.6, 1.4, 1.1, 0.9, 0.7, 0.4, 0.1]
big = M.make_instance("1/20", "2/5", a, b, 9)
print(f"\nn = 12, mu = {M.expected_score(big):.2f}, k = 9: {M.optimize_by_theorem(big).kind}")
res = M.optimize_search(big, "inversion_local_search", start=M.reversal(12))
print(f"local search: {res.best_orderings[0]} after {len(res.path) - 1} swaps, tail {res.tail:.6f}")
