"""Moebius maps on the Riemann sphere: normalization, action, fixed points.

Points of the extended plane are plain Python ``complex`` numbers together
with the singleton :data:`INF`.  Maps are stored as det-1 coefficient
quadruples.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateMap, LinearMap, NotLoxodromic, PoleDerivative

POLE_EPS = 1e-300
DET_EPS = 1e-14
CLASSIFY_TOL = 1e-9


class _Infinity:
    """The point at infinity.  Only equal to itself."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def is_inf(z) -> bool:
    return z is INF


def as_point(z):
    """Coerce to an extended-plane point, rejecting NaN and float infinities."""
    if z is INF:
        return z
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite coordinate {z!r}; use INF for the point at infinity")
    return z


class MapClass(enum.Enum):
    PURELY_LOXODROMIC = "PurelyLoxodromic"
    HYPERBOLIC_LOXODROMIC = "HyperbolicLoxodromic"
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    IDENTITY = "Identity"

    @property
    def loxodromic(self) -> bool:
        return self in (MapClass.PURELY_LOXODROMIC, MapClass.HYPERBOLIC_LOXODROMIC)


@dataclass(frozen=True)
class MoebiusMap:
    """z -> (a z + b) / (c z + d) with ad - bc = 1.

    Use :func:`normalize` (or :meth:`from_coefficients`) to build one from
    arbitrary coefficients.  ``scale`` is the square root of the original
    determinant that the user's coefficients were divided by.
    """

    a: complex
    b: complex
    c: complex
    d: complex
    scale: complex = 1.0 + 0.0j

    @classmethod
    def from_coefficients(cls, a, b, c, d) -> "MoebiusMap":
        return normalize(a, b, c, d)

    @property
    def trace(self) -> complex:
        return self.a + self.d

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    @property
    def pole(self):
        """The preimage of infinity, -d/c (INF for linear maps)."""
        if self.c == 0:
            return INF
        return -self.d / self.c

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def __call__(self, z):
        return apply(self, z)

    def apply_array(self, z: np.ndarray) -> np.ndarray:
        """Vectorized action on finite points; poles come out non-finite."""
        z = np.asarray(z, dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            return (self.a * z + self.b) / (self.c * z + self.d)


def normalize(a, b, c, d) -> MoebiusMap:
    """Divide the coefficients by the principal square root of the determinant."""
    a, b, c, d = (complex(x) for x in (a, b, c, d))
    for x in (a, b, c, d):
        if not (math.isfinite(x.real) and math.isfinite(x.imag)):
            raise DegenerateMap(f"non-finite coefficient {x!r}")
    det = a * d - b * c
    if abs(det) <= DET_EPS:
        raise DegenerateMap(f"determinant {det!r} is zero")
    if det == 1:
        return MoebiusMap(a, b, c, d)
    s = cmath.sqrt(det)
    return MoebiusMap(a / s, b / s, c / s, d / s, scale=s)


def apply(g: MoebiusMap, z):
    z = as_point(z)
    if z is INF:
        if g.c == 0:
            return INF
        return g.a / g.c
    den = g.c * z + g.d
    if abs(den) < POLE_EPS:
        return INF
    return (g.a * z + g.b) / den


def compose(g1: MoebiusMap, g2: MoebiusMap) -> MoebiusMap:
    """The map g1 o g2 (apply g2 first)."""
    m = g1.matrix() @ g2.matrix()
    return normalize(m[0, 0], m[0, 1], m[1, 0], m[1, 1])


def inverse(g: MoebiusMap) -> MoebiusMap:
    return normalize(g.d, -g.b, -g.c, g.a)


def identity() -> MoebiusMap:
    return MoebiusMap(1 + 0j, 0j, 0j, 1 + 0j)


def dilation(k) -> MoebiusMap:
    """w -> k w written as diag(sqrt k, 1/sqrt k)."""
    s = cmath.sqrt(complex(k))
    return MoebiusMap(s, 0j, 0j, 1 / s)


def classify(g: MoebiusMap, tol: float = CLASSIFY_TOL) -> MapClass:
    tr = g.trace
    if abs(g.b) <= tol and abs(g.c) <= tol and abs(g.a - g.d) <= tol:
        return MapClass.IDENTITY
    if abs(tr.imag) > tol:
        return MapClass.PURELY_LOXODROMIC
    x = abs(tr.real)
    if abs(x - 2.0) <= tol:
        return MapClass.PARABOLIC
    if x > 2.0:
        return MapClass.HYPERBOLIC_LOXODROMIC
    return MapClass.ELLIPTIC


@dataclass(frozen=True)
class LoxodromicData:
    """Fixed points and multiplier of a loxodromic map with c != 0.

    ``alpha`` attracts, ``beta`` repels, and ``k = (c alpha + d)^2`` is the
    multiplier of the conjugate dilation w -> k w.
    """

    alpha: complex
    beta: complex
    k: complex
    c_alpha_d: complex
    c_beta_d: complex
    kind: MapClass = MapClass.PURELY_LOXODROMIC

    @property
    def kmod(self) -> float:
        return abs(self.k)

    @property
    def sqrt_k(self) -> complex:
        """The square-root branch of k equal to c alpha + d."""
        return self.c_alpha_d


def fixed_points(g: MoebiusMap, tol: float = CLASSIFY_TOL) -> LoxodromicData:
    scale = max(abs(g.a), abs(g.b), abs(g.c), abs(g.d))
    if abs(g.c) <= DET_EPS * scale:
        raise LinearMap("c == 0: infinity is a fixed point")
    kind = classify(g, tol)
    if not kind.loxodromic:
        raise NotLoxodromic(f"trace {g.trace!r} lies in [-2, 2] (class {kind.value})")
    tr = g.trace
    s = cmath.sqrt(tr * tr - 4)
    alpha = (g.a - g.d + s) / (2 * g.c)
    beta = (g.a - g.d - s) / (2 * g.c)
    if abs(g.c * alpha + g.d) < 1:
        alpha, beta = beta, alpha
    ca = g.c * alpha + g.d
    cb = g.c * beta + g.d
    return LoxodromicData(alpha, beta, ca * ca, ca, cb, kind)


def multiplier(data: LoxodromicData, tol: float = CLASSIFY_TOL) -> complex:
    k = data.k
    if not abs(k) > 1:
        raise NotLoxodromic(f"|k| = {abs(k)!r} is not > 1")
    if data.kind is MapClass.PURELY_LOXODROMIC and abs(k.imag) <= tol and k.real > 0:
        raise NotLoxodromic(f"purely loxodromic map with positive real multiplier {k!r}")
    return k


def derivative(g: MoebiusMap, z) -> complex:
    z = complex(z)
    den = g.c * z + g.d
    if abs(den) < POLE_EPS:
        raise PoleDerivative(f"g' is undefined at the pole {z!r}")
    return 1 / (den * den)


def iterate(g: MoebiusMap, z, n: int):
    """g^n(z) for n >= 0; negative n iterates the inverse."""
    h = g if n >= 0 else inverse(g)
    for _ in range(abs(n)):
        z = apply(h, z)
    return z


def from_fixed_points(alpha, beta, k) -> MoebiusMap:
    """The loxodromic map with attracting alpha, repelling beta and multiplier k.

    Built as h^-1 o (w -> k w) o h with h(z) = (z - beta)/(z - alpha).
    """
    alpha, beta, k = complex(alpha), complex(beta), complex(k)
    h = normalize(1, -beta, 1, -alpha)
    return compose(inverse(h), compose(dilation(k), h))
