"""
Optimal precoder for a two-antenna wiretap channel
==================================================

Solve one channel, look at the angle and power split it picks, and check
the answer against an exhaustive grid over all covariances.
"""

import math

import numpy as np

from wiretap import Channel, solve, lemma1_coefficients, objective_w
from wiretap.baselines import GridSpec, grid_oracle

# Legitimate receiver with two antennas, eavesdropper with one.
H = np.array([[1.2, -0.3], [0.4, 0.9]])
G = np.array([[0.8, 0.7]])
ch = Channel(H, G)

sol = solve(ch, 4.0)
print(f"rate    {sol.rate:.6f} bits")
print(f"theta   {sol.theta:.6f} rad")
print(f"lambda  ({sol.lambda1:.4f}, {sol.lambda2:.4f})  via {sol.branch.name}")
print("Q =\n", sol.q_matrix)

# %%
# For fixed powers the objective is a ratio of two sinusoids in 2*theta,
# so the best angle is available in closed form. A dense scan agrees.
gh, gg = ch.grams()
co = lemma1_coefficients(gh, gg, sol.lambda1, sol.lambda2)
thetas = np.linspace(0, math.pi, 20_001)
w = objective_w(co, thetas)
print("scan best theta", thetas[np.argmax(w)], " closed form", sol.theta)

# %%
# The grid oracle searches angle and power jointly. It can only match
# the solver up to its resolution, never beat it.
ref = grid_oracle(ch, 4.0, GridSpec(801, 801))
print(f"grid    {ref.rate:.6f} bits  (gap {sol.rate - ref.rate:.2e})")

# %%
# A degraded eavesdropper (one who sees everything the receiver sees,
# only better) leaves nothing to secure.
print("degraded:", solve(Channel(H, 2 * H), 4.0).rate)
