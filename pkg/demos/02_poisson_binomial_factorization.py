"""
Each half is a Poisson binomial law
====================================

The even and odd coefficient sequences of the generating function have only
real non-positive roots.  Each root -beta becomes a Bernoulli trial with
success probability 1/(1 + beta), so each half is a sum of independent coin
flips, which makes it log-concave.
"""

import numpy as np

from poisson_trinomial import distribution as dist
from poisson_trinomial import parity

model = dist.build_model([("1/5", "2/5"), ("1/3", "1/3"), ("3/5", "1/10"), ("1/8", "3/4"), ("1/2", "1/4")])
decomp = parity.split_parity(dist.pmf(model))

for name, coeffs in (("even", decomp.p_coeffs), ("odd", decomp.q_coeffs)):
    fac = parity.factor_poisson_binomial(coeffs)
    part = parity.conditional_pmf(decomp, name)
    rebuilt = dist.poisson_binomial_pmf(fac.success_probs)
    print(f"{name}: success probabilities {np.round(fac.success_probs, 5)}")
    print(f"  reconstruction residual {fac.residual:.2e}, "
          f"max |rebuilt - conditional| = {np.max(np.abs(rebuilt - part.probs)):.2e}")
    print(f"  log-concave: {parity.is_log_concave(part.probs)}")

# every factor L + T w + W w^2 with positive coefficients is Hurwitz stable,
# which is where the real-rootedness comes from
print("\nper-trial stability:", [parity.hurwitz_check(t) for t in model.trials])

# a sequence that is not log-concave is caught, with the offending index
print(parity.is_log_concave([0.4, 0.1, 0.4]))
