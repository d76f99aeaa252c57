"""
Command line tour
=================

The ``wiretap`` command wraps the library. Here it is driven in-process;
from a shell the same arguments work as ``wiretap solve ch.json`` or
``python -m wiretap solve ch.json``.
"""

import os
import tempfile

from wiretap.cli import main

tmp = tempfile.mkdtemp()
path = os.path.join(tmp, "ch.json")

# Dump a seeded random channel to a JSON file, then solve it with the
# baselines and the grid oracle alongside.
main(["dump", "--nr", "2", "--ne", "1", "--seed", "3", "-P", "4", "--out", path])
print(open(path).read())
main(["solve", path, "--baselines", "--oracle", "--grid", "401"])

# %%
# A small sweep to CSV on stdout, and a self-check of the solver.
main(["sweep", "--nr", "2", "--ne", "1", "--trials", "20", "--powers", "1,4,16",
      "--methods", "proposed,gsvd_ep"])
print("verify exit code:", main(["verify", "--cases", "4", "--grid", "401"]))
