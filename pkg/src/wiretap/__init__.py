"""
Secrecy capacity and capacity-achieving linear precoding for the Gaussian
MIMO wiretap channel with two transmit antennas.
"""

from .core import (Branch, Channel, InvalidInputError, NumericDomainError,
                   PrecoderSolution, SolverOptions, Sym2, build_precoder,
                   gram, is_zero_capacity, lemma1_coefficients, objective_w,
                   optimal_theta, power_candidates, power_quadratics,
                   secrecy_rate, solve, solve_miso, solve_no_eve,
                   solve_single_eve)
from .baselines import (GridSpec, grid_oracle, gsvd_beams, gsvd_ep_rate,
                        gsvd_op_rate, rank_one_oracle)
from .montecarlo import (ExperimentConfig, SweepResult, compare_antennas,
                         run_sweep, sample_channel, trial_seed)

__version__ = "0.1.0"
