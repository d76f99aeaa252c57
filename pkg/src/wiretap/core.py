"""
Closed-form secrecy-capacity solver for the two-transmit-antenna Gaussian
MIMO wiretap channel.

The input covariance is written as ``Q = V diag(l1, l2) V^t`` with the
rotation ``V(theta) = [[-sin, cos], [cos, sin]]``. For fixed powers the
best angle has a closed form; for a fixed angle the best power split is a
root of a quadratic. All rates are in bits per real dimension.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import optimize

__all__ = [
    "InvalidInputError", "NumericDomainError", "Channel", "Sym2",
    "TrigCoefficients", "PowerQuadratics", "WaterFillingParams", "Branch",
    "PrecoderSolution", "SolverOptions", "gram", "lemma1_coefficients",
    "objective_w", "critical_thetas", "optimal_theta", "power_quadratics",
    "power_candidates", "is_zero_capacity", "build_precoder",
    "secrecy_rate", "rate_at", "water_filling_params", "solve",
    "solve_miso", "solve_single_eve", "solve_no_eve",
]


class InvalidInputError(ValueError):
    """Raised for malformed channels, negative powers or non-PSD inputs."""


class NumericDomainError(ArithmeticError):
    """Raised when a quantity that is positive for Gram inputs is not."""


# xxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxx
# xxxxxxxxxxxxxxx Data types xxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxx
# xxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxx
def _as_two_column(m, name: str) -> np.ndarray:
    arr = np.asarray(m, dtype=float)
    if arr.size == 0:
        return np.zeros((0, 2))
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InvalidInputError(
            f"{name} must have exactly 2 columns, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} has non-finite entries")
    return arr


@dataclass(frozen=True, eq=False)
class Channel:
    """
    Legitimate channel ``h_matrix`` (n_r x 2) and eavesdropper channel
    ``g_matrix`` (n_e x 2). ``n_e = 0`` means there is no eavesdropper.
    """
    h_matrix: np.ndarray
    g_matrix: np.ndarray

    def __init__(self, h_matrix, g_matrix=None):
        h = _as_two_column(h_matrix, "H")
        g = _as_two_column([] if g_matrix is None else g_matrix, "G")
        if h.shape[0] < 1:
            raise InvalidInputError("H needs at least one row")
        object.__setattr__(self, "h_matrix", h)
        object.__setattr__(self, "g_matrix", g)

    @property
    def n_r(self) -> int:
        return self.h_matrix.shape[0]

    @property
    def n_e(self) -> int:
        return self.g_matrix.shape[0]

    def grams(self) -> tuple[Sym2, Sym2]:
        return gram(self.h_matrix), gram(self.g_matrix)


class Sym2(NamedTuple):
    """Upper triangle ``(d11, d12, d22)`` of a 2x2 symmetric matrix."""
    d11: float
    d12: float
    d22: float

    @property
    def det(self) -> float:
        return self.d11 * self.d22 - self.d12 ** 2

    @property
    def trace(self) -> float:
        return self.d11 + self.d22

    def matrix(self) -> np.ndarray:
        return np.array([[self.d11, self.d12], [self.d12, self.d22]])

    def __sub__(self, other):
        return Sym2(self.d11 - other.d11, self.d12 - other.d12,
                    self.d22 - other.d22)


@dataclass(frozen=True)
class TrigCoefficients:
    """
    Coefficients of ``W(theta) = (a1 sin2t + b1 cos2t + c1) /
    (a2 sin2t + b2 cos2t + c2)`` and of its stationarity condition
    ``a sin2t + b cos2t + c = 0``.
    """
    a1: float
    b1: float
    c1: float
    a2: float
    b2: float
    c2: float
    a: float
    b: float
    c: float
    lambda1: float
    lambda2: float


@dataclass(frozen=True)
class PowerQuadratics:
    """
    At a fixed angle and with ``l2 = P - l1`` both determinants are
    quadratics in ``l1``: ``alpha + beta*l1 - delta*l1**2``. The numerator
    of ``dW/dl1`` is ``c_bar + b_bar*l1 + a_bar*l1**2``.
    """
    alpha_h: float
    beta_h: float
    delta_h: float
    alpha_g: float
    beta_g: float
    delta_g: float
    a_bar: float
    b_bar: float
    c_bar: float
    discriminant: float
    theta: float
    p_total: float

    def w_h(self, lambda1):
        return self.alpha_h + self.beta_h * lambda1 - self.delta_h * lambda1 ** 2

    def w_g(self, lambda1):
        return self.alpha_g + self.beta_g * lambda1 - self.delta_g * lambda1 ** 2


@dataclass(frozen=True)
class WaterFillingParams:
    """Eigen-structure of ``H^t H`` used by the no-eavesdropper reduction."""
    a_h: float
    b_h: float
    c_h: float
    delta_h: float


class Branch(enum.Enum):
    ZeroPower = "ZeroPower"
    EdgeAllocation = "EdgeAllocation"
    InteriorAllocation = "InteriorAllocation"
    MisoFastPath = "MisoFastPath"
    SingleEveFastPath = "SingleEveFastPath"
    NoEveWaterFilling = "NoEveWaterFilling"


@dataclass(frozen=True, eq=False)
class PrecoderSolution:
    theta: float
    lambda1: float
    lambda2: float
    v_matrix: np.ndarray
    q_matrix: np.ndarray
    rate: float
    branch: Branch


@dataclass(frozen=True)
class SolverOptions:
    """
    Parameters
    ----------
    rate_tol : float
        Stop the alternating angle/power iteration once the rate improves
        by less than this (bits).
    max_iters : int
        Iteration cap of the alternating iteration.
    polish_points : int
        Number of power splits in the profile scan used to seed and polish
        the interior candidate.
    psd_tol : float
        Eigenvalue floor for PSD checks.
    nsd_tol : float
        Eigenvalue ceiling for the degradedness (zero-capacity) test.
    """
    rate_tol: float = 1e-12
    max_iters: int = 100
    polish_points: int = 64
    psd_tol: float = 1e-12
    nsd_tol: float = 1e-10


_DEFAULT_OPTS = SolverOptions()


# xxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxx
# xxxxxxxxxxxxxxx Building blocks xxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxx
# xxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxx
def gram(m) -> Sym2:
    """
    Gram matrix ``M^t M`` of a matrix with two columns.

    A matrix with zero rows (absent eavesdropper) gives the zero matrix.
    """
    arr = _as_two_column(m, "matrix")
    c0, c1 = arr[:, 0], arr[:, 1]
    return Sym2(float(c0 @ c0), float(c0 @ c1), float(c1 @ c1))


def _check_powers(lambda1, lambda2):
    if lambda1 < 0 or lambda2 < 0:
        raise InvalidInputError(
            f"powers must be nonnegative, got ({lambda1}, {lambda2})")


def _trig_terms(d: Sym2, lambda1, lambda2):
    # Works elementwise on arrays of powers as well.
    diff = lambda1 - lambda2
    a = -diff * d.d12
    b = 0.5 * diff * (d.d22 - d.d11)
    c = 1.0 + 0.5 * (lambda1 + lambda2) * (d.d11 + d.d22) \
        + lambda1 * lambda2 * d.det
    return a, b, c


def lemma1_coefficients(gh: Sym2, gg: Sym2, lambda1: float,
                        lambda2: float) -> TrigCoefficients:
    """
    Coefficients of the angle-dependent determinant ratio for powers
    ``(lambda1, lambda2)``.

    ``det(I + gh Q) = a1 sin2t + b1 cos2t + c1`` and likewise with ``gg``
    for ``(a2, b2, c2)``. The derived ``(a, b, c)`` define the
    stationarity condition of the ratio.
    """
    _check_powers(lambda1, lambda2)
    a1, b1, c1 = _trig_terms(gh, lambda1, lambda2)
    a2, b2, c2 = _trig_terms(gg, lambda1, lambda2)
    return TrigCoefficients(
        a1=a1, b1=b1, c1=c1, a2=a2, b2=b2, c2=c2,
        a=c1 * b2 - c2 * b1,
        b=a1 * c2 - a2 * c1,
        c=a1 * b2 - a2 * b1,
        lambda1=float(lambda1), lambda2=float(lambda2))


def objective_w(coeffs: TrigCoefficients, theta):
    """Determinant ratio ``W(theta)``; accepts scalar or array angles."""
    s, co = np.sin(2 * theta), np.cos(2 * theta)
    num = coeffs.a1 * s + coeffs.b1 * co + coeffs.c1
    den = coeffs.a2 * s + coeffs.b2 * co + coeffs.c2
    if np.any(den <= 0):
        raise NumericDomainError(
            "non-positive denominator; inputs are not Gram matrices")
    w = num / den
    return float(w) if np.ndim(w) == 0 else w


def _degenerate_scale(coeffs: TrigCoefficients) -> float:
    return 1e-13 * max(1.0, abs(coeffs.c1) * abs(coeffs.c2))


def critical_thetas(coeffs: TrigCoefficients) -> tuple[float, float]:
    """
    The two critical angles ``(theta_min, theta_max)`` of ``W``, both in
    ``[0, pi)``. Undefined (returns ``(0, 0)``) when ``W`` is constant.
    """
    r = math.hypot(coeffs.a, coeffs.b)
    if r <= _degenerate_scale(coeffs):
        return 0.0, 0.0
    phi = math.atan2(coeffs.b, coeffs.a)
    # |c| <= r holds analytically; the clip absorbs rounding.
    beta = math.asin(min(1.0, max(-1.0, coeffs.c / r)))
    t_min = (-phi - beta) / 2
    t_max = (-phi + beta + math.pi) / 2
    return t_min % math.pi, t_max % math.pi


def optimal_theta(coeffs: TrigCoefficients) -> float:
    """
    Angle in ``[0, pi)`` maximizing ``W`` for fixed powers.

    Returns 0 when ``W`` does not depend on the angle.
    """
    r = math.hypot(coeffs.a, coeffs.b)
    if r <= _degenerate_scale(coeffs):
        return 0.0
    theta = critical_thetas(coeffs)[1]
    # The other quadrant reading of arctan(b/a) shifts theta by pi/2.
    alt = (theta + math.pi / 2) % math.pi
    if objective_w(coeffs, alt) > objective_w(coeffs, theta):
        theta = alt
    return theta


def _sinusoid(d: Sym2, theta):
    # d_h cos(2 theta - phi_h) with a_h = (d22 - d11)/2, b_h = -d12
    a_s = (d.d22 - d.d11) / 2
    b_s = -d.d12
    amp = math.hypot(a_s, b_s)
    phi = math.atan2(b_s, a_s)
    return (d.d11 + d.d22) / 2, amp * np.cos(2 * theta - phi)


def power_quadratics(gh: Sym2, gg: Sym2, theta: float,
                     p_total: float) -> PowerQuadratics:
    """Quadratics in ``l1`` of both determinants at a fixed angle."""
    if p_total < 0:
        raise InvalidInputError("p_total must be nonnegative")
    p = float(p_total)
    mid_h, osc_h = _sinusoid(gh, theta)
    mid_g, osc_g = _sinusoid(gg, theta)
    alpha_h = 1 + p * mid_h - p * osc_h
    delta_h = gh.det
    beta_h = 2 * osc_h + p * delta_h
    alpha_g = 1 + p * mid_g - p * osc_g
    delta_g = gg.det
    beta_g = 2 * osc_g + p * delta_g
    a_bar = delta_g * beta_h - delta_h * beta_g
    b_bar = 2 * delta_g * alpha_h - 2 * delta_h * alpha_g
    c_bar = beta_h * alpha_g - beta_g * alpha_h
    return PowerQuadratics(
        alpha_h=float(alpha_h), beta_h=float(beta_h), delta_h=delta_h,
        alpha_g=float(alpha_g), beta_g=float(beta_g), delta_g=delta_g,
        a_bar=float(a_bar), b_bar=float(b_bar), c_bar=float(c_bar),
        discriminant=float(b_bar ** 2 - 4 * a_bar * c_bar),
        theta=float(theta), p_total=p)


def _maximizing_root(pq: PowerQuadratics):
    """
    Root of ``a_bar l^2 + b_bar l + c_bar`` where the derivative of W
    changes sign from + to -, or None. Uses the cancellation-free form,
    which also covers ``a_bar = 0`` (linear numerator).
    """
    a, b, c = pq.a_bar, pq.b_bar, pq.c_bar
    disc = pq.discriminant
    if disc <= 0:
        return None
    sq = math.sqrt(disc)
    if b < 0:
        return 2 * c / (-b + sq)
    if a != 0:
        return (-b - sq) / (2 * a)
    return None


def power_candidates(pq: PowerQuadratics) -> list[tuple[float, float]]:
    """
    Candidate power pairs at the angle ``pq.theta``: no power, the edge
    ``(0, P)``, the interior maximizer when it lies in ``[0, P]``, and the
    edge ``(P, 0)`` when there is no interior extremum.
    """
    p = pq.p_total
    cands = [(0.0, 0.0), (0.0, p)]
    root = _maximizing_root(pq)
    if root is not None and 0 <= root <= p:
        cands.append((root, p - root))
    if pq.discriminant <= 0 or pq.a_bar == 0:
        cands.append((p, 0.0))
    return cands


def is_zero_capacity(gh: Sym2, gg: Sym2, tol: float = 1e-10) -> bool:
    """True iff ``gh - gg`` is negative semidefinite (degraded channel)."""
    d = gh - gg
    top = d.trace / 2 + math.hypot((d.d11 - d.d22) / 2, d.d12)
    return top <= tol


def build_precoder(theta: float, lambda1: float, lambda2: float):
    """Rotation ``V(theta)`` and covariance ``Q = V diag(l1, l2) V^t``."""
    _check_powers(lambda1, lambda2)
    s, c = math.sin(theta), math.cos(theta)
    v = np.array([[-s, c], [c, s]])
    q = (v * np.array([lambda1, lambda2])) @ v.T
    q = (q + q.T) / 2
    return v, q


def _det_i_plus(d: Sym2, q: np.ndarray) -> float:
    m = d.matrix() @ q
    return 1.0 + m[0, 0] + m[1, 1] + (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def _rate_from_grams(gh: Sym2, gg: Sym2, q: np.ndarray) -> float:
    return 0.5 * (math.log2(_det_i_plus(gh, q)) - math.log2(_det_i_plus(gg, q)))


def _check_psd(q, tol):
    q = np.asarray(q, dtype=float)
    if q.shape != (2, 2) or not np.all(np.isfinite(q)):
        raise InvalidInputError("Q must be a finite 2x2 matrix")
    scale = max(1.0, float(np.abs(q).max()))
    if abs(q[0, 1] - q[1, 0]) > 1e-12 * scale:
        raise InvalidInputError("Q is not symmetric")
    if np.linalg.eigvalsh(q).min() < -tol * scale:
        raise InvalidInputError("Q is not positive semidefinite")
    return q


def secrecy_rate(ch: Channel, q_matrix, psd_tol: float = 1e-12) -> float:
    """
    Secrecy rate ``1/2 [log2 det(I + H^t H Q) - log2 det(I + G^t G Q)]``
    of a given input covariance. May be negative.
    """
    q = _check_psd(q_matrix, psd_tol)
    gh, gg = ch.grams()
    return _rate_from_grams(gh, gg, q)


def rate_at(gh: Sym2, gg: Sym2, theta: float, lambda1: float,
            lambda2: float) -> float:
    """Rate of the beamformer ``(theta, lambda1, lambda2)``."""
    return 0.5 * math.log2(
        objective_w(lemma1_coefficients(gh, gg, lambda1, lambda2), theta))


def water_filling_params(gh: Sym2) -> WaterFillingParams:
    a_h = (gh.d11 - gh.d22) / 2
    b_h = gh.d12
    return WaterFillingParams(a_h=a_h, b_h=b_h, c_h=math.hypot(a_h, b_h),
                              delta_h=gh.det)


# xxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxx
# xxxxxxxxxxxxxxx Solvers xxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxx
# xxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxx
def _solution(gh, gg, theta, lambda1, lambda2, branch) -> PrecoderSolution:
    theta = float(theta) % math.pi
    v, q = build_precoder(theta, lambda1, lambda2)
    rate = _rate_from_grams(gh, gg, q) if lambda1 + lambda2 > 0 else 0.0
    return PrecoderSolution(theta=theta, lambda1=float(lambda1),
                            lambda2=float(lambda2), v_matrix=v, q_matrix=q,
                            rate=rate, branch=branch)


def _zero_solution(gh, gg) -> PrecoderSolution:
    return _solution(gh, gg, 0.0, 0.0, 0.0, Branch.ZeroPower)


def _check_p(p_total):
    if not np.isfinite(p_total) or p_total < 0:
        raise InvalidInputError(f"p_total must be finite and >= 0, got {p_total}")
    return float(p_total)


def _unit_rank(ch, p_total, opts, branch):
    gh, gg = ch.grams()
    p = _check_p(p_total)
    if p == 0 or is_zero_capacity(gh, gg, opts.nsd_tol):
        return _zero_solution(gh, gg)
    theta = optimal_theta(lemma1_coefficients(gh, gg, 0.0, p))
    sol = _solution(gh, gg, theta, 0.0, p, branch)
    return sol if sol.rate > 0 else _zero_solution(gh, gg)


def solve_miso(ch: Channel, p_total: float,
               opts: SolverOptions = _DEFAULT_OPTS) -> PrecoderSolution:
    """Single legitimate antenna: the optimum is unit rank, ``(0, P)``."""
    if ch.n_r != 1:
        raise InvalidInputError(f"solve_miso needs n_r = 1, got {ch.n_r}")
    return _unit_rank(ch, p_total, opts, Branch.MisoFastPath)


def solve_single_eve(ch: Channel, p_total: float,
                     opts: SolverOptions = _DEFAULT_OPTS) -> PrecoderSolution:
    """
    Best unit-rank precoder ``(0, P)`` for a single eavesdropper antenna.

    This is the secrecy capacity only when ``n_r = 1`` as well. With two
    or more legitimate antennas a full-rank split can do strictly better,
    so ``solve`` does not route ``n_e = 1`` here.
    """
    if ch.n_e != 1:
        raise InvalidInputError(f"solve_single_eve needs n_e = 1, got {ch.n_e}")
    return _unit_rank(ch, p_total, opts, Branch.SingleEveFastPath)


def solve_no_eve(ch: Channel, p_total: float,
                 opts: SolverOptions = _DEFAULT_OPTS) -> PrecoderSolution:
    """
    Plain MIMO capacity (no eavesdropper): eigen-beamforming along
    ``H^t H`` with water-filling, in closed form.

    The stronger eigenvector is the first column of ``V``, so it carries
    ``lambda1 >= lambda2``.
    """
    if ch.n_e != 0:
        raise InvalidInputError(f"solve_no_eve needs n_e = 0, got {ch.n_e}")
    gh, gg = ch.grams()
    p = _check_p(p_total)
    if p == 0 or gh.trace <= opts.nsd_tol:
        return _zero_solution(gh, gg)
    wf = water_filling_params(gh)
    # The dominant eigenvector (cos t, sin t) sits at t = atan2(b, a)/2;
    # the first column of V(theta) reaches it for theta = t + pi/2.
    theta = 0.5 * math.atan2(wf.b_h, wf.a_h) + math.pi / 2
    if wf.delta_h > 1e-12 * gh.trace ** 2:
        lambda1 = min(p / 2 + wf.c_h / wf.delta_h, p)
    else:
        lambda1 = p
    return _solution(gh, gg, theta, lambda1, p - lambda1,
                     Branch.NoEveWaterFilling)


def _profile(gh, gg, lambda1, p):
    """Best rate over the angle for the split ``(lambda1, p - lambda1)``."""
    coeffs = lemma1_coefficients(gh, gg, lambda1, p - lambda1)
    theta = optimal_theta(coeffs)
    return 0.5 * math.log2(objective_w(coeffs, theta)), theta


def _best_lambda(gh, gg, theta, p):
    """Exact maximizer of the rate over ``l1 in [0, p]`` at a fixed angle."""
    pq = power_quadratics(gh, gg, theta, p)
    cands = [0.0, p]
    root = _maximizing_root(pq)
    if root is not None and 0 <= root <= p:
        cands.append(root)
    vals = [pq.w_h(x) / pq.w_g(x) for x in cands]
    return cands[int(np.argmax(vals))]


def _alternate(gh, gg, lambda1, p, opts):
    """
    Coordinate ascent: closed-form angle at fixed powers, closed-form
    power split at fixed angle. Each half step cannot lower the rate.
    """
    rate, theta = _profile(gh, gg, lambda1, p)
    for _ in range(opts.max_iters):
        lambda1 = _best_lambda(gh, gg, theta, p)
        new_rate, theta = _profile(gh, gg, lambda1, p)
        done = abs(new_rate - rate) < opts.rate_tol
        rate = max(rate, new_rate)
        if done:
            break
    return rate, theta, lambda1


def _polish(gh, gg, p, opts):
    """
    Scan the angle-optimized profile over ``l1`` and refine every local
    maximum of the scan with a bounded scalar search.
    """
    grid = np.linspace(0.0, p, max(opts.polish_points, 3))
    vals = np.array([_profile(gh, gg, x, p)[0] for x in grid])
    found = []
    for i in range(len(grid)):
        lo, hi = max(i - 1, 0), min(i + 1, len(grid) - 1)
        if vals[i] < vals[lo] or vals[i] < vals[hi]:
            continue
        res = optimize.minimize_scalar(
            lambda x: -_profile(gh, gg, x, p)[0],
            bounds=(grid[lo], grid[hi]), method="bounded",
            options={"xatol": 1e-13 * max(p, 1.0)})
        x = float(res.x) if -res.fun >= vals[i] else float(grid[i])
        found.append(x)
    return found


def _canonical(theta, lambda1, p):
    # Equal rates under (l1, l2, t) -> (l2, l1, t + pi/2); report l1 >= l2.
    lambda2 = p - lambda1
    if lambda1 < lambda2:
        return (theta + math.pi / 2) % math.pi, lambda2
    return theta % math.pi, lambda1


def solve(ch: Channel, p_total: float,
          opts: SolverOptions | None = None) -> PrecoderSolution:
    """
    Secrecy capacity and a capacity-achieving precoder.

    Parameters
    ----------
    ch : Channel
        Legitimate and eavesdropper channels (two transmit antennas).
    p_total : float
        Average power budget ``tr(Q) <= p_total``.
    opts : SolverOptions, optional
        Iteration and tolerance settings.

    Returns
    -------
    PrecoderSolution
        Angle, powers, ``V``, ``Q`` and the rate in bits per real
        dimension. Either all power is used or none.

    Notes
    -----
    Degraded channels return zero power. A single legitimate antenna
    dispatches to the unit-rank fast path, no eavesdropper to
    water-filling. Otherwise the edge split ``(0, P)`` competes with the
    interior split found by alternating closed-form angle and power steps
    (seeded at ``P/2`` and at the local maxima of a profile scan).
    """
    opts = opts or _DEFAULT_OPTS
    p = _check_p(p_total)
    gh, gg = ch.grams()
    if p == 0 or is_zero_capacity(gh, gg, opts.nsd_tol):
        return _zero_solution(gh, gg)
    if ch.n_e == 0:
        return solve_no_eve(ch, p, opts)
    if ch.n_r == 1:
        return solve_miso(ch, p, opts)

    cands = []
    for l1 in (0.0, p):
        rate, theta = _profile(gh, gg, l1, p)
        cands.append((rate, l1, theta))
    seeds = [p / 2] + _polish(gh, gg, p, opts)
    for seed in seeds:
        rate, theta, l1 = _alternate(gh, gg, seed, p, opts)
        cands.append((rate, l1, theta))

    best_rate = max(c[0] for c in cands)
    # Among near-ties prefer the larger reported lambda1, then smaller theta.
    ties = []
    for rate, l1, theta in cands:
        if rate >= best_rate - 1e-12:
            t, l1c = _canonical(theta, l1, p)
            ties.append((-l1c, t))
    neg_l1, theta = min(ties)
    lambda1 = -neg_l1
    if lambda1 >= p * (1 - 1e-13):
        lambda1 = p
    if abs(lambda1 - p / 2) <= 1e-13 * p:
        lambda1 = p / 2
        theta = optimal_theta(lemma1_coefficients(gh, gg, lambda1, p - lambda1))
    branch = (Branch.EdgeAllocation if lambda1 in (0.0, p)
              else Branch.InteriorAllocation)
    sol = _solution(gh, gg, theta, lambda1, p - lambda1, branch)
    return sol if sol.rate > 0 else _zero_solution(gh, gg)
