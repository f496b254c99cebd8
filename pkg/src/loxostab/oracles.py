"""Independent numerical oracles and samplers used by the verification suites.

Nothing here relies on the closed forms of :mod:`loxostab.geometry`; the
circle fit and the finite differences recover the same quantities from
raw samples.
"""

from __future__ import annotations

import math

import numpy as np

from .core import MoebiusMap, classify, from_fixed_points, normalize
from .errors import DegenerateMap


def fit_circle(points: np.ndarray) -> tuple:
    """Algebraic (Kasa) least-squares circle through complex sample points.

    The data are centered and scaled first so the fit stays well conditioned
    for circles far from the origin.
    """
    z = np.asarray(points, dtype=complex)
    mu = z.mean()
    s = np.abs(z - mu).max()
    u = (z - mu) / s
    x, y = u.real, u.imag
    A = np.column_stack([x, y, np.ones_like(x)])
    rhs = -(x * x + y * y)
    (D, E, F), *_ = np.linalg.lstsq(A, rhs, rcond=None)
    cx, cy = -D / 2, -E / 2
    r = math.sqrt(cx * cx + cy * cy - F)
    return mu + s * complex(cx, cy), s * r


def finite_difference(g: MoebiusMap, z: complex, h: float = 1e-6) -> complex:
    """Central difference along the real axis (g is holomorphic)."""
    return (g(z + h) - g(z - h)) / (2 * h)


def uniform_box(rng: np.random.Generator, n: int, lo: complex, hi: complex) -> np.ndarray:
    x = rng.uniform(lo.real, hi.real, n)
    y = rng.uniform(lo.imag, hi.imag, n)
    return x + 1j * y


def uniform_disk(rng: np.random.Generator, n: int, center: complex, radius: float) -> np.ndarray:
    r = radius * np.sqrt(rng.random(n))
    return center + r * np.exp(2j * np.pi * rng.random(n))


def log_annulus(rng: np.random.Generator, n: int, r_in: float, r_out: float) -> np.ndarray:
    """Points with log|w| uniform in [log r_in, log r_out] and uniform angle."""
    r = np.exp(rng.uniform(math.log(r_in), math.log(r_out), n))
    return r * np.exp(2j * np.pi * rng.random(n))


def random_loxodromic_map(rng: np.random.Generator, box: float = 2.0, reject: float = 1e-6,
                          min_c: float = 1e-3) -> MoebiusMap:
    """Coefficients uniform in [-box, box]^2, det-normalized, trace outside [-2, 2]."""
    while True:
        coeffs = rng.uniform(-box, box, 8).view(complex)
        try:
            g = normalize(*coeffs)
        except DegenerateMap:
            continue
        tr = g.trace
        if abs(tr.imag) <= reject and abs(tr.real) <= 2 + reject:
            continue
        if abs(g.c) < min_c or not classify(g).loxodromic:
            continue
        return g


def random_hyperbolic_map(rng: np.random.Generator, box: float = 20.0,
                          k_range: tuple = (1.3, 4.0)) -> MoebiusMap:
    """Real multiplier k in ``k_range`` with fixed points uniform in a box."""
    while True:
        alpha, beta = rng.uniform(-box, box, 4).view(complex)
        if abs(alpha - beta) < 1:
            continue
        return from_fixed_points(alpha, beta, rng.uniform(*k_range))
