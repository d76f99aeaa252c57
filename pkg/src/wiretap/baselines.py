"""
Reference methods: an exhaustive grid oracle, the rank-one generalized
eigenvalue bound, and GSVD-style beamforming with equal (EP) or optimized
(OP) power allocation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg
from scipy import optimize

from .core import Channel, InvalidInputError, Sym2, _rate_from_grams, _trig_terms

__all__ = ["GridSpec", "GridResult", "BeamPair", "grid_oracle",
           "rank_one_oracle", "gsvd_beams", "gsvd_ep_rate", "gsvd_op_rate"]

_EPS = 1e-12


@dataclass(frozen=True)
class GridSpec:
    theta_points: int = 2001
    lambda_points: int = 2001
    include_zero_power: bool = True

    def __post_init__(self):
        if self.theta_points < 2 or self.lambda_points < 2:
            raise InvalidInputError("grid needs at least 2 points per axis")


class GridResult(NamedTuple):
    rate: float
    theta: float
    lambda1: float
    lambda2: float


def grid_oracle(ch: Channel, p_total: float, spec: GridSpec = GridSpec(),
                chunk: int = 128) -> GridResult:
    """
    Brute-force maximum of the secrecy rate over a ``(theta, lambda1)``
    grid with ``lambda2 = P - lambda1``.

    ``theta`` runs over ``[0, pi)`` and ``lambda1`` over ``[0, P]``. Ties
    go to the smallest angle index, then the smallest power index. With
    ``include_zero_power`` the no-transmission point (rate 0) competes too.
    """
    gh, gg = ch.grams()
    p = float(p_total)
    thetas = np.linspace(0.0, math.pi, spec.theta_points, endpoint=False)
    lams = np.linspace(0.0, p, spec.lambda_points)
    a1, b1, c1 = _trig_terms(gh, lams, p - lams)
    a2, b2, c2 = _trig_terms(gg, lams, p - lams)
    s2, co2 = np.sin(2 * thetas), np.cos(2 * thetas)

    best_w, best_idx = -np.inf, (0, 0)
    for start in range(0, spec.theta_points, chunk):
        s, co = s2[start:start + chunk], co2[start:start + chunk]
        num = np.multiply.outer(s, a1)
        num += np.multiply.outer(co, b1)
        num += c1
        den = np.multiply.outer(s, a2)
        den += np.multiply.outer(co, b2)
        den += c2
        num /= den
        k = int(np.argmax(num))
        w = num.flat[k]
        # strict > keeps the earliest (smallest theta) chunk on ties
        if w > best_w:
            best_w = w
            best_idx = (start + k // len(lams), k % len(lams))

    rate = 0.5 * math.log2(best_w)
    i, j = best_idx
    if spec.include_zero_power and rate <= 0:
        return GridResult(0.0, 0.0, 0.0, 0.0)
    return GridResult(rate, float(thetas[i]), float(lams[j]),
                      float(p - lams[j]))


def rank_one_oracle(ch: Channel, p_total: float) -> float:
    """
    Best unit-rank secrecy rate: ``max(0, 1/2 log2 mu_max)`` with
    ``mu_max`` the largest generalized eigenvalue of
    ``(I + P H^t H, I + P G^t G)``.
    """
    gh, gg = ch.grams()
    eye = np.eye(2)
    mu = scipy.linalg.eigh(eye + p_total * gh.matrix(),
                           eye + p_total * gg.matrix(), eigvals_only=True)
    return max(0.0, 0.5 * math.log2(mu[-1]))


@dataclass(frozen=True, eq=False)
class BeamPair:
    """Unit beam directions with legitimate (r) and eavesdropper (e) gains."""
    v1: np.ndarray
    v2: np.ndarray
    r1: float
    r2: float
    e1: float
    e2: float


def gsvd_beams(gh: Sym2, gg: Sym2) -> BeamPair:
    """
    Transmit directions of the GSVD of ``(H, G)``: generalized eigenvectors
    of the pencil ``(gh, gg + eps I)``, unit-normalized, strongest
    legitimate-to-eavesdropper gain ratio first.
    """
    a = gh.matrix()
    b = gg.matrix() + _EPS * np.eye(2)
    if not np.any(gh.matrix()) and not np.any(gg.matrix()):
        raise InvalidInputError("both Gram matrices are zero")
    # Same eigenvectors as (a, b) but with a well-conditioned right side.
    _, vecs = scipy.linalg.eigh(a, a + b)
    beams = []
    for k in range(2):
        v = vecs[:, k] / np.linalg.norm(vecs[:, k])
        r, e = float(v @ a @ v), float(v @ gg.matrix() @ v)
        beams.append(((r + _EPS) / (e + _EPS), v, r, e))
    beams.sort(key=lambda t: -t[0])
    (_, v1, r1, e1), (_, v2, r2, e2) = beams
    return BeamPair(v1=v1, v2=v2, r1=r1, r2=r2, e1=e1, e2=e2)


def _beam_rate(gh, gg, beams: BeamPair, p1, p2) -> float:
    q = p1 * np.outer(beams.v1, beams.v1) + p2 * np.outer(beams.v2, beams.v2)
    return _rate_from_grams(gh, gg, q)


def gsvd_ep_rate(ch: Channel, p_total: float) -> float:
    """
    GSVD beamforming with equal power over the beams whose legitimate gain
    exceeds the eavesdropper gain. Zero if no beam qualifies.
    """
    gh, gg = ch.grams()
    if p_total == 0 or (not np.any(gh) and not np.any(gg)):
        return 0.0
    beams = gsvd_beams(gh, gg)
    use = [beams.r1 > beams.e1, beams.r2 > beams.e2]
    n = sum(use)
    if n == 0:
        return 0.0
    share = p_total / n
    rate = _beam_rate(gh, gg, beams, share * use[0], share * use[1])
    return max(0.0, rate)


def gsvd_op_rate(ch: Channel, p_total: float, coarse: int = 257) -> float:
    """
    GSVD beamforming with the power split ``(p1, P - p1)`` chosen to
    maximize the exact secrecy rate.

    A coarse scan picks the bracket, a bounded scalar search refines it to
    ``1e-10`` in ``p1``; the edges and the equal split are always checked.
    """
    gh, gg = ch.grams()
    p = float(p_total)
    if p == 0 or (not np.any(gh) and not np.any(gg)):
        return 0.0
    beams = gsvd_beams(gh, gg)

    def rate(p1):
        return _beam_rate(gh, gg, beams, p1, p - p1)

    grid = np.linspace(0.0, p, coarse)
    vals = np.array([rate(x) for x in grid])
    i = int(np.argmax(vals))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, coarse - 1)]
    res = optimize.minimize_scalar(lambda x: -rate(x), bounds=(lo, hi),
                                   method="bounded", options={"xatol": 1e-10})
    best = max(float(vals.max()), -float(res.fun), rate(p / 2))
    return max(0.0, best)
