"""Perturbed orbits and the Hyers-Ulam constants that bound their deviation.

An epsilon-orbit satisfies |a_{n+1} - g(a_n)| <= epsilon; it is compared
with the exact orbit b_{n+1} = g(b_n) started at b_0 = a_0.  Two regimes:

* inside B_R (R above :func:`~loxostab.geometry.min_contraction_radius`)
  g contracts with constant K < 1 and the deviation stays below
  (1 - K^n)/(1 - K) epsilon;
* in the transit region (C minus B_R) minus R_g(inf), |g'| <= M/2 and the
  deviation grows at most like (M^n - 1)/(M - 1) epsilon until the uniform
  escaping time N, after which the contraction estimate takes over.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .avoided import AvoidedRegionG, g_prime_sup_bound
from .core import INF, POLE_EPS, LoxodromicData, MoebiusMap, apply, fixed_points
from .errors import LoxostabError, NoEscape, OrbitHitPole, RTooSmall
from .geometry import ApolloniusB, distance_to_B, min_contraction_radius

DEFAULT_SEED = 20240917
POLE_HIT_TOL = 1e-12


class Distribution(enum.Enum):
    UNIFORM_DISK = "UniformDisk"
    BOUNDARY = "Boundary"
    ADVERSARIAL = "Adversarial"


@dataclass(frozen=True)
class PerturbationSpec:
    epsilon: float
    seed: int = DEFAULT_SEED
    distribution: Distribution = Distribution.UNIFORM_DISK

    def __post_init__(self):
        if not self.epsilon >= 0:
            raise ValueError("epsilon must be nonnegative")


@dataclass
class OrbitTrace:
    a: np.ndarray
    b: np.ndarray
    noise: np.ndarray
    deviations: np.ndarray
    bound_values: np.ndarray | None = None


def trial_seeds(master_seed: int, trials: int) -> list:
    """Independent per-trial seeds derived from one master seed."""
    if trials <= 0:
        return []
    state = np.random.SeedSequence(master_seed).generate_state(trials, dtype=np.uint64)
    return [int(s) for s in state]


def _clamp(eta: np.ndarray, eps: float) -> np.ndarray:
    # rounding in eps * exp(i theta) can overshoot |eta| = eps by an ulp
    for _ in range(4):
        over = np.abs(eta) > eps
        if not over.any():
            break
        eta[over] *= (eps / np.abs(eta[over])) * (1 - 2.0**-52)
    return eta


def run_orbits(g: MoebiusMap, z0, steps: int, epsilon: float, seeds,
               distribution: Distribution = Distribution.UNIFORM_DISK,
               region: AvoidedRegionG | None = None):
    """Propagate perturbed and exact orbits for a batch of trials.

    Trial i draws its noise from ``default_rng(seeds[i])`` only, so each
    trial is reproducible on its own.  Returns ``(a, b, noise)`` with shapes
    (T, steps + 1), (T, steps + 1), (T, steps).
    """
    z0 = np.atleast_1d(np.asarray(z0, dtype=complex))
    trials = z0.shape[0]
    if len(seeds) != trials:
        raise ValueError("need one seed per trial")
    u = np.stack([np.random.default_rng(s).random((steps, 2)) for s in seeds]) if trials else \
        np.empty((0, steps, 2))
    a = np.empty((trials, steps + 1), dtype=complex)
    b = np.empty((trials, steps + 1), dtype=complex)
    noise = np.zeros((trials, steps), dtype=complex)
    a[:, 0] = z0
    b[:, 0] = z0
    pole = g.pole
    if distribution is Distribution.ADVERSARIAL:
        targets = np.array([c.center for c in region.components()]) if region is not None \
            else np.array([pole])
    for n in range(steps):
        cur = a[:, n]
        hit = np.abs(cur - pole) < POLE_HIT_TOL
        if hit.any():
            i = int(np.argmax(hit))
            raise OrbitHitPole(f"trial {i} reached the pole at step {n}", trial=i, step=n)
        ga = g.apply_array(cur)
        if epsilon > 0:
            if distribution is Distribution.UNIFORM_DISK:
                eta = epsilon * np.sqrt(u[:, n, 0]) * np.exp(2j * np.pi * u[:, n, 1])
            elif distribution is Distribution.BOUNDARY:
                eta = epsilon * np.exp(2j * np.pi * u[:, n, 1])
            else:
                idx = np.argmin(np.abs(ga[:, None] - targets[None, :]), axis=1)
                v = targets[idx] - ga
                mag = np.abs(v)
                eta = np.where(mag > 0, epsilon * v / np.where(mag > 0, mag, 1), 0)
            noise[:, n] = _clamp(eta, epsilon)
        a[:, n + 1] = ga + noise[:, n]
        b[:, n + 1] = g.apply_array(b[:, n])
    return a, b, noise


def exact_orbit(g: MoebiusMap, z0, steps: int) -> list:
    """b_0 = z0, b_{n+1} = g(b_n); handles the point at infinity.

    A start exactly at a computed fixed point stays there; otherwise rounding
    in g(beta) would be amplified by |k| per step away from the repeller.
    """
    try:
        data = fixed_points(g)
        if z0 is not INF and complex(z0) in (data.alpha, data.beta):
            return [complex(z0)] * (steps + 1)
    except LoxostabError:
        pass
    out = [z0]
    for _ in range(steps):
        z = out[-1]
        if z is INF or abs(g.c * z + g.d) < POLE_EPS:
            out.append(apply(g, z))
        else:
            # same arithmetic as run_orbits, so eps = 0 reproduces it bit for bit
            out.append(complex(g.apply_array(np.array([z]))[0]))
    return out


def perturbed_orbit(g: MoebiusMap, z0, steps: int, spec: PerturbationSpec,
                    region: AvoidedRegionG | None = None) -> OrbitTrace:
    a, b, noise = run_orbits(g, [complex(z0)], steps, spec.epsilon, [spec.seed],
                             spec.distribution, region)
    return OrbitTrace(a[0], b[0], noise[0], np.abs(a[0] - b[0]))


# ---------------------------------------------------------------- constants


def contraction_constant_K(g: MoebiusMap, data: LoxodromicData, R: float) -> float:
    """sup of |g'| over B_R, attained at the point of B_R nearest to -d/c.

    This is a Lipschitz constant of g on B_R whenever B_R is convex (R > 1).
    """
    bound = min_contraction_radius(abs(data.k))
    if not R > bound:
        raise RTooSmall(f"R = {R!r} must exceed {bound!r}")
    dist = distance_to_B(data.alpha, data.beta, R, g.pole)
    K = 1.0 / (abs(g.c) * dist) ** 2
    if not 0 < K < 1:
        raise ArithmeticError(f"contraction constant {K!r} outside (0, 1)")
    return K


def hyers_ulam_contraction_bound(K: float, eps: float, n: int, d0: float = 0.0) -> float:
    """K^n d0 + (1 - K^n)/(1 - K) eps."""
    Kn = K**n
    return Kn * d0 + (1 - Kn) / (1 - K) * eps


@dataclass(frozen=True)
class EscapeTimeBound:
    n: int
    n_crude: int
    threshold: float
    threshold_crude: float


def escape_time_bound(kmod: float, delta0: float) -> EscapeTimeBound:
    """Uniform escaping time from (C minus D(R)) minus R_f(1) under w -> k w.

    N is the least integer above
    log{(2 (sqrt|k|+1)^2/(sqrt|k| (|k|-1)) + 1)/delta0 + 1}/log|k|; the
    cruder ((sqrt|k|+1)/(sqrt|k|-1))^3 variant is reported alongside.
    """
    if not kmod > 1 or not delta0 > 0:
        raise ValueError("need |k| > 1 and delta0 > 0")
    sk = math.sqrt(kmod)
    lk = math.log(kmod)
    x = math.log((2 * (sk + 1) ** 2 / (sk * (kmod - 1)) + 1) / delta0 + 1) / lk
    x2 = math.log(((sk + 1) / (sk - 1)) ** 3 / delta0 + 1) / lk
    n = max(1, math.floor(x) + 1)
    n2 = max(1, math.floor(x2) + 1)
    if n > n2:
        raise ArithmeticError(f"escape time {n} exceeds its sufficient variant {n2}")
    return EscapeTimeBound(n, n2, x, x2)


def escape_steps(g: MoebiusMap, data: LoxodromicData, R: float, orbits: np.ndarray) -> np.ndarray:
    """Per-trial index after which the orbit stays in the interior of B_R.

    Entries of -1 mark orbits that are still outside at the last step.
    """
    orbits = np.atleast_2d(orbits)
    inside = np.abs(orbits - data.beta) > R * np.abs(orbits - data.alpha)
    outside = ~inside
    steps = orbits.shape[1]
    last_out = np.where(outside.any(axis=1),
                        steps - 1 - np.argmax(outside[:, ::-1], axis=1), -1)
    esc = last_out + 1
    esc[outside[:, -1]] = -1
    return esc


def empirical_escape_time(g: MoebiusMap, data: LoxodromicData, R: float, orbits: np.ndarray) -> int:
    esc = escape_steps(g, data, R, orbits)
    if (esc < 0).any():
        raise NoEscape(f"{int((esc < 0).sum())} orbit(s) never settled inside B_R")
    return int(esc.max()) if esc.size else 0


def finite_time_bound(M: float, eps: float, n: int) -> float:
    """(M^n - 1)/(M - 1) eps."""
    if not M > 1:
        raise ValueError("M must exceed 1")
    try:
        return (M**n - 1) / (M - 1) * eps
    except OverflowError:
        return math.inf


@dataclass(frozen=True)
class StabilityConstants:
    K: float
    M: float
    N: int
    R: float
    delta: float
    epsilon: float
    H_of_eps: float

    def with_epsilon(self, epsilon: float) -> "StabilityConstants":
        return StabilityConstants(self.K, self.M, self.N, self.R, self.delta, epsilon,
                                  shadowing_bound(self.K, self.M, self.N, epsilon))


def shadowing_bound(K: float, M: float, N: int, eps: float) -> float:
    """H(eps) = ((M^N - 1)/(M - 1) + 1/(1 - K)) eps."""
    return finite_time_bound(M, 1.0, N) * eps + eps / (1 - K)


def stability_constants(g: MoebiusMap, data: LoxodromicData, R: float, delta0: float,
                        t: float, epsilon: float) -> StabilityConstants:
    K = contraction_constant_K(g, data, R)
    delta = t * delta0 / (abs(data.k) - 1)
    M = 2 * g_prime_sup_bound(data, delta)
    N = escape_time_bound(abs(data.k), delta0).n
    return StabilityConstants(K, M, N, float(R), delta, float(epsilon), shadowing_bound(K, M, N, epsilon))


def combined_bound(constants: StabilityConstants, n: int, regime: str = "escape") -> float:
    """Deviation bound at step n for an orbit with b_0 = a_0.

    ``regime`` is "contraction" for starts in B_R and "escape" for starts in
    the transit region.
    """
    c = constants
    if n < 0:
        raise ValueError("n must be nonnegative")
    if regime == "contraction":
        return hyers_ulam_contraction_bound(c.K, c.epsilon, n)
    if regime != "escape":
        raise ValueError(f"unknown regime {regime!r}")
    if n <= c.N:
        return finite_time_bound(c.M, c.epsilon, n)
    return finite_time_bound(c.M, c.epsilon, c.N) + hyers_ulam_contraction_bound(c.K, c.epsilon, n - c.N)


def combined_bound_array(constants: StabilityConstants, steps: int, regime: str) -> np.ndarray:
    return np.array([combined_bound(constants, n, regime) for n in range(steps + 1)])


def start_regime(data: LoxodromicData, R: float, z0) -> str:
    return "contraction" if ApolloniusB(data.alpha, data.beta, R).contains(z0) else "escape"
