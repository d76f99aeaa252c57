"""
Comparing against GSVD precoding
================================

The two GSVD baselines send along the generalized singular vectors of
(H, G). Equal power (EP) splits power evenly across beams that favour the
receiver; optimized power (OP) searches the split. The solver optimizes
the beam directions too.
"""

import numpy as np

from wiretap import Channel, solve
from wiretap.baselines import gsvd_ep_rate, gsvd_op_rate, rank_one_oracle

rng = np.random.default_rng(1)
for k in range(5):
    ch = Channel(rng.standard_normal((2, 2)), rng.standard_normal((2, 2)))
    rates = [solve(ch, 4.0).rate, gsvd_op_rate(ch, 4.0), gsvd_ep_rate(ch, 4.0)]
    print(f"channel {k}: proposed {rates[0]:.4f}  op {rates[1]:.4f}  "
          f"ep {rates[2]:.4f}")

# %%
# EP loses ground at moderate power but closes in as power grows.
ch = Channel([[1.0, 0.4], [-0.2, 0.9]], [[0.6, -0.5], [0.3, 0.4]])
for p in (1.0, 10.0, 100.0, 1e4):
    print(f"P={p:>8g}  gap to EP {solve(ch, p).rate - gsvd_ep_rate(ch, p):.4f}")

# %%
# A single receive antenna makes the best covariance a single beam. With
# one eavesdropper antenna but two receive antennas this is no longer
# true: splitting power over both beams can pay off.
ch = Channel([[2.0, 0.0], [0.0, 1.0]], [[1.0, 0.0]])
print("one beam ", rank_one_oracle(ch, 2.0))
sol = solve(ch, 2.0)
print("solver   ", sol.rate, (sol.lambda1, sol.lambda2))
