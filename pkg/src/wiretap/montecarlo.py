"""
Seeded Monte Carlo sweeps of secrecy rate versus transmit power over
i.i.d. N(0, 1) real channels.

Every trial draws its channel from its own generator, seeded by mixing the
experiment seed with the trial index, so results do not depend on how the
trials are scheduled across worker processes.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .baselines import GridSpec, grid_oracle, gsvd_ep_rate, gsvd_op_rate
from .core import Channel, InvalidInputError, solve

__all__ = ["METHODS", "DEFAULT_POWERS", "ExperimentConfig", "SweepResult",
           "SweepError", "trial_seed", "sample_channel", "run_sweep",
           "compare_antennas"]

METHODS = ("proposed", "gsvd_ep", "gsvd_op", "grid_oracle")
DEFAULT_POWERS = tuple(0.5 * 2.0 ** k for k in range(8))   # 0.5 .. 64, log-spaced


class SweepError(RuntimeError):
    def __init__(self, trial, cause):
        super().__init__(f"trial {trial} failed: {cause!r}")
        self.trial = trial


@dataclass(frozen=True)
class ExperimentConfig:
    n_r: int = 2
    n_e: int = 1
    trials: int = 1000
    power_grid: tuple = DEFAULT_POWERS
    seed: int = 0
    methods: tuple = ("proposed",)
    grid: GridSpec = field(default_factory=GridSpec)

    def __post_init__(self):
        object.__setattr__(self, "power_grid",
                           tuple(float(p) for p in self.power_grid))
        object.__setattr__(self, "methods", tuple(self.methods))
        if self.n_r < 1 or self.n_e < 0:
            raise InvalidInputError("need n_r >= 1 and n_e >= 0")
        if self.trials < 1:
            raise InvalidInputError("trials must be >= 1")
        pg = np.asarray(self.power_grid)
        if pg.size == 0 or np.any(pg <= 0) or np.any(np.diff(pg) <= 0):
            raise InvalidInputError(
                "power_grid must be positive and strictly increasing")
        unknown = set(self.methods) - set(METHODS)
        if unknown or not self.methods:
            raise InvalidInputError(f"unknown methods {sorted(unknown)}")
        if not 0 <= self.seed < 2 ** 64:
            raise InvalidInputError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True, eq=False)
class SweepResult:
    """
    ``mean`` and ``stderr`` have shape ``(len(methods), len(powers))``;
    ``samples`` holds the per-trial rates, shape
    ``(trials, len(methods), len(powers))``.
    """
    config: ExperimentConfig
    mean: np.ndarray
    stderr: np.ndarray
    samples: np.ndarray

    @property
    def methods(self):
        return self.config.methods

    @property
    def powers(self):
        return np.asarray(self.config.power_grid)

    @property
    def trials(self):
        return self.config.trials

    def curve(self, method):
        return self.mean[self.methods.index(method)]


def trial_seed(seed: int, trial: int) -> int:
    """
    64-bit seed of one trial: the first word of numpy's ``SeedSequence``
    hash of ``seed`` with spawn key ``(trial,)``.
    """
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(trial),))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def sample_channel(n_r: int, n_e: int, trial_seed: int) -> Channel:
    """
    i.i.d. standard normal ``H`` (n_r x 2) then ``G`` (n_e x 2), filled
    row-major from a PCG64 generator (numpy ziggurat normals).
    """
    if n_r < 1 or n_e < 0:
        raise InvalidInputError("need n_r >= 1 and n_e >= 0")
    rng = np.random.Generator(np.random.PCG64(trial_seed))
    h = rng.standard_normal((n_r, 2))
    g = rng.standard_normal((n_e, 2))
    return Channel(h, g)


def _evaluate(method, ch, p, grid):
    if method == "proposed":
        return solve(ch, p).rate
    if method == "gsvd_ep":
        return gsvd_ep_rate(ch, p)
    if method == "gsvd_op":
        return gsvd_op_rate(ch, p)
    return grid_oracle(ch, p, grid).rate


def _run_trial(args):
    config, t = args
    try:
        ch = sample_channel(config.n_r, config.n_e,
                            trial_seed(config.seed, t))
        out = np.empty((len(config.methods), len(config.power_grid)))
        for i, m in enumerate(config.methods):
            for j, p in enumerate(config.power_grid):
                out[i, j] = _evaluate(m, ch, p, config.grid)
        return out
    except Exception as exc:
        raise SweepError(t, exc) from exc


def run_sweep(config: ExperimentConfig, workers: int = 1) -> SweepResult:
    """
    Evaluate every method at every power on ``config.trials`` channels.

    ``workers > 1`` spreads trials over processes; the per-trial values
    and their index-ordered reduction are identical either way.
    """
    jobs = [(config, t) for t in range(config.trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_trial, jobs,
                                 chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        rows = [_run_trial(j) for j in jobs]
    samples = np.stack(rows)
    mean = samples.mean(axis=0)
    if config.trials > 1:
        stderr = samples.std(axis=0, ddof=1) / math.sqrt(config.trials)
    else:
        stderr = np.full_like(mean, np.nan)
    return SweepResult(config=config, mean=mean, stderr=stderr,
                       samples=samples)


def compare_antennas(base: ExperimentConfig, ne_list,
                     workers: int = 1) -> list[SweepResult]:
    """One sweep per eavesdropper antenna count, all with the same seed."""
    return [run_sweep(replace(base, n_e=int(ne)), workers=workers)
            for ne in ne_list]
