"""
Acceptance gate. Each test checks one numbered criterion at its stated
tolerance and records a PASS/FAIL line, summarized at the end of the run.

The oracle comparison uses full 2001 x 2001 grids on 7500 channel/power
pairs and takes several minutes on one core.
"""

import math

import numpy as np
import pytest

import oracles
from wiretap.baselines import grid_oracle, gsvd_ep_rate, rank_one_oracle
from wiretap.cli import main
from wiretap.core import (Channel, gram, lemma1_coefficients, objective_w,
                          critical_thetas, optimal_theta, solve)
from wiretap.montecarlo import (DEFAULT_POWERS, ExperimentConfig,
                                compare_antennas, run_sweep, sample_channel,
                                trial_seed)

ORACLE_CONFIGS = ((1, 1), (1, 2), (2, 1), (2, 2), (4, 2))
ORACLE_POWERS = (1.0, 4.0, 16.0)
ORACLE_CHANNELS = 500


@pytest.fixture(scope="module")
def oracle_runs():
    runs = []
    for k, (nr, ne) in enumerate(ORACLE_CONFIGS):
        for i in range(ORACLE_CHANNELS):
            ch = sample_channel(nr, ne, trial_seed(100 + k, i))
            for p in ORACLE_POWERS:
                runs.append(dict(nr=nr, ne=ne, p=p, ch=ch, sol=solve(ch, p),
                                 grid=grid_oracle(ch, p).rate))
    return runs


@pytest.fixture(scope="module")
def antenna_sweeps():
    base = ExperimentConfig(n_r=2, trials=1000, power_grid=DEFAULT_POWERS,
                            seed=0, methods=("proposed", "gsvd_op", "gsvd_ep"))
    return compare_antennas(base, [1, 2])


def _random_coefficients(rng):
    nr, ne = rng.integers(1, 5, size=2)
    gh = gram(rng.standard_normal((nr, 2)))
    gg = gram(rng.standard_normal((ne, 2)))
    l1, l2 = rng.uniform(0, 10, size=2)
    return gh, gg, l1, l2


def test_c01_oracle_equivalence(oracle_runs, criterion):
    gaps = np.array([abs(r["sol"].rate - r["grid"]) for r in oracle_runs])
    worst = int(np.argmax(gaps))
    w = oracle_runs[worst]
    ok = criterion(1, gaps.max() <= 1e-3,
                   f"{len(gaps)} cases, max |solve - grid| = {gaps.max():.2e} "
                   f"(n_r={w['nr']}, n_e={w['ne']}, P={w['p']:g}); tol 1e-3")
    assert ok


def test_c02_stationarity_and_classification(criterion):
    rng = np.random.default_rng(2)
    h = 1e-4
    worst_res = worst_d2 = -math.inf
    branch_violations = 0
    for _ in range(10_000):
        co = lemma1_coefficients(*_random_coefficients(rng))
        t = optimal_theta(co)
        if math.hypot(co.a, co.b) > 0:
            worst_res = max(worst_res, abs(co.a * math.sin(2 * t)
                                           + co.b * math.cos(2 * t) + co.c))
        d2 = (objective_w(co, t + h) - 2 * objective_w(co, t)
              + objective_w(co, t - h)) / h ** 2
        worst_d2 = max(worst_d2, d2)
        t_min, t_max = critical_thetas(co)
        branch_violations += objective_w(co, t_min) > objective_w(co, t_max)
    ok = criterion(2, worst_res <= 1e-9 and worst_d2 <= 1e-6
                   and branch_violations == 0,
                   f"10^4 sets, max residual {worst_res:.2e} (tol 1e-9), "
                   f"max W'' {worst_d2:.2e} (tol 1e-6), "
                   f"first branch above second: {branch_violations}")
    assert ok


def test_c03_swap_symmetry(criterion):
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(10_000):
        gh, gg, l1, l2 = _random_coefficients(rng)
        t = rng.uniform(0, math.pi)
        w1 = objective_w(lemma1_coefficients(gh, gg, l1, l2), t)
        w2 = objective_w(lemma1_coefficients(gh, gg, l2, l1), t + math.pi / 2)
        worst = max(worst, abs(w1 - w2))
    ok = criterion(3, worst <= 1e-12,
                   f"10^4 tuples, max |W - W_swapped| = {worst:.2e}; tol 1e-12")
    assert ok


def test_c04_full_or_zero_power(oracle_runs, criterion):
    sols = [(r["sol"], r["p"]) for r in oracle_runs]
    rng = np.random.default_rng(4)
    for _ in range(1000):
        ch = Channel(rng.standard_normal((rng.integers(1, 5), 2)),
                     rng.standard_normal((rng.integers(0, 5), 2)))
        p = float(rng.choice([0.5, 2.0, 10.0, 1e4]))
        sols.append((solve(ch, p), p))
    bad = sum(min(abs(s.lambda1 + s.lambda2), abs(s.lambda1 + s.lambda2 - p))
              > 1e-9 for s, p in sols)
    ok = criterion(4, bad == 0, f"{len(sols)} solutions, {bad} with "
                   "lambda1 + lambda2 outside {0, P} (tol 1e-9)")
    assert ok


def test_c05_unit_rank_cases(oracle_runs, criterion):
    runs = [r for r in oracle_runs if r["nr"] == 1 or r["ne"] == 1]
    rank_bad, match_bad, gains = {}, {}, []
    for r in runs:
        key = (r["nr"], r["ne"])
        sol = r["sol"]
        r1 = rank_one_oracle(r["ch"], r["p"])
        rank_bad[key] = rank_bad.get(key, 0) + (min(sol.lambda1, sol.lambda2) > 1e-9)
        miss = abs(sol.rate - r1) > 1e-6
        match_bad[key] = match_bad.get(key, 0) + miss
        if miss:
            gains.append(sol.rate - r1)
    detail = ", ".join(f"(n_r={k[0]},n_e={k[1]}): full-rank {rank_bad[k]}, "
                       f"rank-one mismatch {match_bad[k]}" for k in sorted(rank_bad))
    if gains:
        detail += (f"; every mismatch has solve above rank-one "
                   f"(min gain {min(gains):.2e}, max {max(gains):.3f} bits)"
                   if min(gains) > 0 else f"; min gain {min(gains):.2e}")
    ok = criterion(5, not any(rank_bad.values()) and not any(match_bad.values()),
                   f"{len(runs)} cases; {detail}")
    assert ok


def test_c06_no_eavesdropper(criterion):
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(1000):
        h = rng.standard_normal((rng.integers(1, 5), 2))
        p = float(rng.uniform(0.01, 100))
        worst = max(worst, abs(solve(Channel(h), p).rate
                               - oracles.mimo_capacity(h, p)))
    ex = solve(Channel([[2, 0], [0, 1]]), 2.0)
    lam_ok = (abs(ex.lambda1 - 1.375) <= 1e-6 and abs(ex.lambda2 - 0.625) <= 1e-6)
    rate_ok = abs(ex.rate - 1.6011) <= 1e-6
    ok = criterion(6, worst <= 1e-9 and lam_ok and rate_ok,
                   f"10^3 channels max |solve - water-filling| = {worst:.2e} "
                   f"(tol 1e-9); example lambda = ({ex.lambda1:.6f}, "
                   f"{ex.lambda2:.6f}) vs (1.375, 0.625); example rate "
                   f"{ex.rate:.6f} vs stated 1.6011 (tol 1e-6)")
    assert ok


def test_c07_baseline_ordering(antenna_sweeps, criterion):
    parts, ok = [], True
    for res in antenna_sweeps:
        s = res.samples
        a = int(np.sum(s[:, 0] < s[:, 1] - 1e-9))
        b = int(np.sum(s[:, 1] < s[:, 2] - 1e-9))
        ok &= a == 0 and b == 0
        parts.append(f"n_e={res.config.n_e}: {res.trials} trials x "
                     f"{len(res.powers)} powers, violations {a} + {b}")
    assert criterion(7, ok, "; ".join(parts) + " (tol 1e-9)")


def test_c08_halving_trend(antenna_sweeps, criterion):
    r1, r2 = antenna_sweeps
    j = list(r1.powers).index(4.0)
    m1, m2 = r1.curve("proposed")[j], r2.curve("proposed")[j]
    se = (m2 / m1) * math.hypot(r1.stderr[0, j] / m1, r2.stderr[0, j] / m2)
    ratio = m2 / m1
    ok = criterion(8, 0.35 <= ratio <= 0.65,
                   f"mean(n_e=2) / mean(n_e=1) at P=4 = {m2:.4f} / {m1:.4f} "
                   f"= {ratio:.4f} (approx. se {se:.3f}); band [0.35, 0.65]")
    assert ok


def test_c09_saturation(criterion):
    res = run_sweep(ExperimentConfig(n_r=4, n_e=16, trials=1000,
                                     power_grid=(10.0,), seed=0))
    m = res.mean[0, 0]
    assert criterion(9, m <= 0.05,
                     f"n_r=4, n_e=16, P=10 mean rate {m:.4f} "
                     f"(se {res.stderr[0, 0]:.4f}); limit 0.05")


def test_c10_gsvd_ep_asymptotic(criterion):
    shrunk = zero = 0
    for t in range(100):
        ch = sample_channel(2, 2, trial_seed(0, t))
        g_lo = solve(ch, 1.0).rate - gsvd_ep_rate(ch, 1.0)
        g_hi = solve(ch, 1e4).rate - gsvd_ep_rate(ch, 1e4)
        shrunk += g_hi < g_lo
        zero += g_lo == 0 and g_hi == 0
    ok = criterion(10, shrunk >= 95,
                   f"gap at P=1e4 strictly below gap at P=1 in {shrunk}/100; "
                   f"{zero} channels have zero gap at both powers; need >= 95")
    assert ok


def test_c11_cli_determinism(tmp_path, capsys, criterion):
    args = ["sweep", "--nr", "2", "--ne", "2", "--trials", "200", "--seed",
            "11", "--methods", "proposed,gsvd_ep,gsvd_op"]
    paths = [tmp_path / f"{k}.csv" for k in range(3)]
    codes = [main(args + ["--out", str(paths[0])]),
             main(args + ["--out", str(paths[1])]),
             main(args + ["--workers", "2", "--out", str(paths[2])])]
    capsys.readouterr()
    blobs = [p.read_bytes() for p in paths]
    ok = criterion(11, codes == [0, 0, 0] and blobs[0] == blobs[1] == blobs[2],
                   f"exit codes {codes}; two serial runs identical: "
                   f"{blobs[0] == blobs[1]}; serial vs 2 workers identical: "
                   f"{blobs[0] == blobs[2]} ({len(blobs[0])} bytes)")
    assert ok
