"""Apollonius regions, disks around the pole, and their images under h.

Notation follows the conjugation picture: ``h(z) = (z - beta)/(z - alpha)``
sends the repelling point to 0, the attracting point to infinity and
infinity to 1, turning g into the dilation w -> k w.

* ``B(r) = {|z - beta| >= r |z - alpha|}`` (plus infinity when r <= 1), with
  boundary circle ``C(r)``; ``h(B(r)) = D(r) = {|w| >= r}``.
* ``S(r) = {|z + d/c| > r/|c|}``, the set where ``|cz + d| > r``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import INF, LoxodromicData, MoebiusMap, as_point
from .errors import DegenerateLine, UnboundedImage

BOUNDARY_TOL = 1e-12
LINE_TOL = 1e-12


class Location(enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class CircleGeom:
    center: complex
    radius: float

    def __post_init__(self):
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError(f"circle radius must be positive and finite, got {self.radius!r}")

    def points(self, n: int = 360) -> np.ndarray:
        theta = 2 * np.pi * np.arange(n) / n
        return self.center + self.radius * np.exp(1j * theta)


@dataclass(frozen=True)
class Line:
    """Straight line through ``point`` with unit ``direction``."""

    point: complex
    direction: complex

    def distance(self, z) -> float:
        return abs(((complex(z) - self.point) * self.direction.conjugate()).imag)


@dataclass(frozen=True)
class Conjugator:
    """h(z) = (z - beta)/(z - alpha) and its inverse (alpha w - beta)/(w - 1)."""

    alpha: complex
    beta: complex

    @classmethod
    def of(cls, data: LoxodromicData) -> "Conjugator":
        return cls(data.alpha, data.beta)

    def __call__(self, z):
        z = as_point(z)
        if z is INF:
            return 1 + 0j
        if z == self.alpha:
            return INF
        return (z - self.beta) / (z - self.alpha)

    def inv(self, w):
        w = as_point(w)
        if w is INF:
            return self.alpha
        if w == 1:
            return INF
        return (self.alpha * w - self.beta) / (w - 1)

    def array(self, z: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return (z - self.beta) / (z - self.alpha)

    def inv_array(self, w: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return (self.alpha * w - self.beta) / (w - 1)

    def as_map(self) -> MoebiusMap:
        from .core import normalize

        return normalize(1, -self.beta, 1, -self.alpha)


# ---------------------------------------------------------------- regions


def _locate_ge(lhs: float, rhs: float, tol: float) -> Location:
    if abs(lhs - rhs) <= tol * max(1.0, abs(lhs), abs(rhs)):
        return Location.BOUNDARY
    return Location.INSIDE if lhs > rhs else Location.OUTSIDE


@dataclass(frozen=True)
class ApolloniusB:
    """B(r) = {|z - beta| >= r |z - alpha|}, closed; contains infinity iff r <= 1."""

    alpha: complex
    beta: complex
    r: float

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError("B(r) needs r > 0")

    def contains(self, z) -> bool:
        z = as_point(z)
        if z is INF:
            return self.r <= 1
        return abs(z - self.beta) >= self.r * abs(z - self.alpha)

    def contains_array(self, z: np.ndarray) -> np.ndarray:
        return np.abs(z - self.beta) >= self.r * np.abs(z - self.alpha)

    def locate(self, z, tol: float = BOUNDARY_TOL) -> Location:
        z = as_point(z)
        if z is INF:
            return Location.INSIDE if self.r <= 1 else Location.OUTSIDE
        return _locate_ge(abs(z - self.beta), self.r * abs(z - self.alpha), tol)

    def boundary(self):
        return apollonius_circle(self.alpha, self.beta, self.r)


@dataclass(frozen=True)
class ApolloniusCircle:
    """C(r) = {|z - beta| = r |z - alpha|}; C(1) with infinity is L_inf."""

    alpha: complex
    beta: complex
    r: float

    def contains(self, z, tol: float = BOUNDARY_TOL) -> bool:
        z = as_point(z)
        if z is INF:
            return self.r == 1
        return _locate_ge(abs(z - self.beta), self.r * abs(z - self.alpha), tol) is Location.BOUNDARY

    def geometry(self):
        return apollonius_circle(self.alpha, self.beta, self.r)


@dataclass(frozen=True)
class DiskExterior:
    """D(r) = {|w| >= r}; infinity counts as a member."""

    r: float

    def __post_init__(self):
        if not self.r >= 0:
            raise ValueError("D(r) needs r >= 0")

    def contains(self, w) -> bool:
        w = as_point(w)
        if w is INF:
            return True
        return abs(w) >= self.r

    def contains_array(self, w: np.ndarray) -> np.ndarray:
        return np.abs(w) >= self.r

    def locate(self, w, tol: float = BOUNDARY_TOL) -> Location:
        w = as_point(w)
        if w is INF:
            return Location.INSIDE
        return _locate_ge(abs(w), self.r, tol)


@dataclass(frozen=True)
class SRegion:
    """S(r) = {|z - pole| > r/|c|}, open, never containing infinity."""

    pole: complex
    cmod: float
    r: float

    @classmethod
    def of(cls, g: MoebiusMap, r: float) -> "SRegion":
        if g.c == 0:
            raise ValueError("S(r) is defined only for c != 0")
        if not r > 0:
            raise ValueError("S(r) needs r > 0")
        return cls(-g.d / g.c, abs(g.c), float(r))

    @property
    def radius(self) -> float:
        return self.r / self.cmod

    def contains(self, z) -> bool:
        z = as_point(z)
        if z is INF:
            return False
        return abs(z - self.pole) > self.radius

    def contains_array(self, z: np.ndarray) -> np.ndarray:
        return np.abs(z - self.pole) > self.radius

    def locate(self, z, tol: float = BOUNDARY_TOL) -> Location:
        z = as_point(z)
        if z is INF:
            return Location.OUTSIDE
        return _locate_ge(abs(z - self.pole), self.radius, tol)

    def boundary(self) -> CircleGeom:
        return CircleGeom(self.pole, self.radius)


@dataclass(frozen=True)
class Disk:
    """Plain disk; open unless ``closed`` is set."""

    center: complex
    radius: float
    closed: bool = False

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("disk radius must be positive")

    def contains(self, z) -> bool:
        z = as_point(z)
        if z is INF:
            return False
        dist = abs(z - self.center)
        return dist <= self.radius if self.closed else dist < self.radius

    def contains_array(self, z: np.ndarray) -> np.ndarray:
        dist = np.abs(z - self.center)
        return dist <= self.radius if self.closed else dist < self.radius

    def locate(self, z, tol: float = BOUNDARY_TOL) -> Location:
        z = as_point(z)
        if z is INF:
            return Location.OUTSIDE
        return _locate_ge(self.radius, abs(z - self.center), tol)

    def boundary(self) -> CircleGeom:
        return CircleGeom(self.center, self.radius)


def contains(region, point) -> bool:
    """Exact membership test for any region type of this module."""
    return region.contains(point)


# ---------------------------------------------------------------- circles


def apollonius_circle(alpha, beta, rho: float):
    """Euclidean form of {|z - beta| = rho |z - alpha|}.

    Center (beta - rho^2 alpha)/(1 - rho^2), radius rho|alpha - beta|/|1 - rho^2|;
    rho = 1 gives the perpendicular bisector of the two points.
    """
    alpha, beta = complex(alpha), complex(beta)
    if abs(rho - 1) <= LINE_TOL:
        u = alpha - beta
        return Line((alpha + beta) / 2, 1j * u / abs(u))
    rho2 = rho * rho
    center = (beta - rho2 * alpha) / (1 - rho2)
    radius = rho * abs(alpha - beta) / abs(1 - rho2)
    return CircleGeom(center, radius)


def mobius_image_of_circle(g: MoebiusMap, circle: CircleGeom):
    """Image of a circle under g; a Line when the circle passes through the pole."""
    q, s = complex(circle.center), float(circle.radius)
    if g.c == 0:
        return CircleGeom(g.a / g.d * q + g.b / g.d, abs(g.a / g.d) * s)
    # g(z) = a/c - 1/(c (c z + d)), det 1
    u0 = g.c * q + g.d
    rho = abs(g.c) * s
    den = abs(u0) ** 2 - rho * rho
    if abs(den) <= LINE_TOL * max(1.0, abs(u0) ** 2):
        # two circle points away from the pole span the image line
        p = g.pole
        z1 = g(2 * q - p)
        z2 = g(q + 1j * (p - q))
        direction = z2 - z1
        return Line(z1, direction / abs(direction))
    inv_center = u0.conjugate() / den
    inv_radius = rho / abs(den)
    return CircleGeom(g.a / g.c - inv_center / g.c, inv_radius / abs(g.c))


def h_image_of_circle(data: LoxodromicData, r: float) -> CircleGeom:
    """h(C(r)) is the circle |w| = r (the unit circle for r = 1, image of L_inf)."""
    if not r > 0:
        raise ValueError("r must be positive")
    return CircleGeom(0j, float(r))


@dataclass(frozen=True)
class HImageOfS:
    """Membership predicate of h(S(r)): (sqrt|k|/r)|w - 1/k| > |w - 1|."""

    k: complex
    r: float

    def __call__(self, w):
        if isinstance(w, np.ndarray):
            return math.sqrt(abs(self.k)) / self.r * np.abs(w - 1 / self.k) > np.abs(w - 1)
        w = as_point(w)
        if w is INF:
            # h^-1(INF) = alpha, and |c alpha + d| = sqrt|k|
            return math.sqrt(abs(self.k)) > self.r
        return math.sqrt(abs(self.k)) / self.r * abs(w - 1 / self.k) > abs(w - 1)


def h_image_of_S(data: LoxodromicData, g: MoebiusMap, r: float) -> HImageOfS:
    if g.c == 0 or not r > 0:
        raise ValueError("need c != 0 and r > 0")
    return HImageOfS(data.k, float(r))


def h_boundary_circle_of_S(data: LoxodromicData, r: float, tol: float = LINE_TOL):
    """Closed form of the circle h(dS(r)).

    Center (k r^2 - |k|)/(k (r^2 - |k|)), radius r|k - 1|/(sqrt|k| |r^2 - |k||).
    At r = sqrt|k| the image is the perpendicular bisector of 1/k and 1.
    """
    k = data.k
    km = abs(k)
    if not r > 0:
        raise ValueError("r must be positive")
    gap = r * r - km
    if abs(gap) <= tol * km:
        u = 1 - 1 / k
        return Line((1 + 1 / k) / 2, 1j * u / abs(u))
    center = (k * r * r - km) / (k * gap)
    radius = r * abs(k - 1) / (math.sqrt(km) * abs(gap))
    return CircleGeom(center, radius)


def hS1_outer_bound(data: LoxodromicData) -> float:
    """Radius rho with {|w| > rho} inside h(S(1)).

    rho = (sqrt|k| |k - 1| + |k - |k||)/(|k| (|k| - 1)), which always lies in
    [1/sqrt|k|, (sqrt|k| + 1)^2/(sqrt|k| (|k| - 1))].
    """
    k = data.k
    km = abs(k)
    if not km > 1:
        raise ValueError("|k| must exceed 1")
    sk = math.sqrt(km)
    rho = (sk * abs(k - 1) + abs(k - km)) / (km * (km - 1))
    lo = 1 / sk
    hi = (sk + 1) ** 2 / (sk * (km - 1))
    slack = 1e-12 * hi
    if not (lo - slack <= rho <= hi + slack):
        raise ArithmeticError(f"outer bound {rho!r} escaped [{lo!r}, {hi!r}]")
    return rho


def min_contraction_radius(kmod: float) -> float:
    """(sqrt|k| + 1)^2 / (sqrt|k| (|k| - 1)): B_R lies in S(1) for every larger R."""
    sk = math.sqrt(kmod)
    return (sk + 1) ** 2 / (sk * (kmod - 1))


def h_image_of_disk(data: LoxodromicData, p, r: float, tol: float = LINE_TOL) -> CircleGeom:
    """Image of the open disk U(p, r) under h.

    Radius r |alpha - beta| / ||p - alpha|^2 - r^2|.  The pole of h is alpha,
    so the image is a line when |p - alpha| = r and unbounded when the disk
    contains alpha.
    """
    p = complex(p)
    alpha, beta = data.alpha, data.beta
    dist = abs(p - alpha)
    if abs(dist - r) <= tol * max(1.0, r):
        raise DegenerateLine("the circle passes through alpha")
    image = mobius_image_of_circle(Conjugator(alpha, beta).as_map(), CircleGeom(p, r))
    if dist < r:
        raise UnboundedImage("the disk contains alpha", complement=image)
    return image


def h_image_of_disk_radius(data: LoxodromicData, p, r: float, tol: float = LINE_TOL) -> float:
    p = complex(p)
    dist = abs(p - data.alpha)
    if abs(dist - r) <= tol * max(1.0, r):
        raise DegenerateLine("the circle passes through alpha")
    if dist < r:
        complement = mobius_image_of_circle(Conjugator(data.alpha, data.beta).as_map(),
                                            CircleGeom(p, r))
        raise UnboundedImage("the disk contains alpha", complement=complement)
    return r * abs(data.alpha - data.beta) / abs(dist * dist - r * r)


def b_region_image(g: MoebiusMap, data: LoxodromicData, r: float) -> ApolloniusB:
    """g(B(r)) = B(|k| r)."""
    return ApolloniusB(data.alpha, data.beta, abs(data.k) * r)


def alpha_beta_distance(data: LoxodromicData, g: MoebiusMap) -> float:
    """|alpha - beta| through |k - 1|/(|c| sqrt|k|)."""
    km = abs(data.k)
    return abs(data.k - 1) / (abs(g.c) * math.sqrt(km))


def complement_disk_in_BR(data: LoxodromicData, g: MoebiusMap, R: float) -> Disk:
    """Closed disk around beta lying in the closure of the complement of B_R."""
    if not R > 0 or g.c == 0:
        raise ValueError("need R > 0 and c != 0")
    radius = R * abs(data.k - 1) / (abs(g.c) * (R + 1) * math.sqrt(abs(data.k)))
    return Disk(data.beta, radius, closed=True)


# ---------------------------------------------------------------- distances


def distance_to_B(alpha, beta, R: float, p) -> float:
    """Euclidean distance from a point outside B_R to B_R (0 if inside)."""
    p = complex(p)
    if ApolloniusB(alpha, beta, R).contains(p):
        return 0.0
    geom = apollonius_circle(alpha, beta, R)
    if isinstance(geom, Line):
        return geom.distance(p)
    gap = abs(p - geom.center)
    if R > 1:
        return gap - geom.radius
    return geom.radius - gap


def boundary_to_region_distance(alpha, beta, rho_boundary: float, rho_region: float) -> float:
    """Distance between the circle dB(rho_boundary) and the region B(rho_region).

    Requires rho_region > rho_boundary so that B(rho_region) sits strictly
    inside B(rho_boundary).
    """
    if not rho_region > rho_boundary > 0:
        raise ValueError("need rho_region > rho_boundary > 0")
    outer = apollonius_circle(alpha, beta, rho_boundary)
    inner = apollonius_circle(alpha, beta, rho_region)
    if isinstance(outer, Line):
        # inner is a disk around alpha
        return outer.distance(inner.center) - inner.radius
    if isinstance(inner, Line):
        # outer is a circle around beta, region is the half plane on alpha's side
        return inner.distance(outer.center) - outer.radius
    sep = abs(outer.center - inner.center)
    if rho_boundary > 1:
        # nested disks around alpha
        return outer.radius - sep - inner.radius
    if rho_region < 1:
        # complements are nested disks around beta
        return inner.radius - sep - outer.radius
    # circle around beta versus disk around alpha
    return sep - outer.radius - inner.radius


def viewport(alpha, beta, pad: float = 3.0) -> tuple:
    """Square window (lower-left, upper-right) centered between the fixed
    points, reaching ``pad * |alpha - beta|`` to each side."""
    alpha, beta = complex(alpha), complex(beta)
    mid = (alpha + beta) / 2
    half = pad * abs(alpha - beta)
    return mid - half * (1 + 1j), mid + half * (1 + 1j)
