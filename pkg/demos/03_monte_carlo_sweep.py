"""
Average secrecy rate versus power
=================================

Average over i.i.d. Gaussian channels. Each trial has its own seed
derived from the experiment seed, so results are identical however the
trials are spread over processes.
"""

import numpy as np

from wiretap.montecarlo import ExperimentConfig, compare_antennas, run_sweep
from wiretap.formats import format_rows, render_svg, sweep_rows

cfg = ExperimentConfig(n_r=2, n_e=2, trials=200, seed=0,
                       methods=("proposed", "gsvd_op", "gsvd_ep"))
res = run_sweep(cfg)
print(format_rows(sweep_rows(res)))

# %%
# More eavesdropper antennas shrink the secure rate.
results = compare_antennas(ExperimentConfig(n_r=2, trials=200, seed=0),
                           [0, 1, 2, 4])
for r in results:
    print(f"n_e={r.config.n_e}: ", np.round(r.curve("proposed"), 3))

# %%
# Write a static chart of the first sweep.
series = [(m, 10 * np.log10(res.powers), res.curve(m)) for m in res.methods]
with open("sweep.svg", "w") as fh:
    fh.write(render_svg(series))
print("wrote sweep.svg")
