"""Avoided region around the backward orbit of infinity.

In dilation coordinates (f(w) = k w) the backward orbit of 1 is the
sequence 1/k^n accumulating at the repelling point 0.  The region

    R_f(1) = {|w| < |k| delta}  union  {|w - 1/k^n| < delta, n = 1..N}

has an f-invariant complement, and an orbit perturbed by at most delta0 per
step with delta = t delta0 / (|k| - 1), t > 1, never enters it.  Pulling
back through h gives R_g(inf) in the original coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import INF, LoxodromicData, MoebiusMap, as_point, inverse
from .errors import DeltaTooLarge, EmptyMargin
from .geometry import (
    BOUNDARY_TOL,
    CircleGeom,
    Conjugator,
    Disk,
    Line,
    Location,
    apollonius_circle,
    boundary_to_region_distance,
    mobius_image_of_circle,
)


def printed_disk_count_threshold(kmod: float, delta: float) -> float:
    """(log(|k| - 1) + log delta)/log|k|, the threshold as printed in the source.

    Kept for comparison only: with the sign as printed, a small delta
    makes the threshold negative and the disks 1/k^2, 1/k^3, ... fall
    outside the region, breaking invariance of the complement.
    """
    return (math.log(kmod - 1) + math.log(delta)) / math.log(kmod)


def disk_count_threshold(kmod: float, delta: float) -> float:
    """-(log(|k| - 1) + log delta)/log|k|.

    For N above this value |k|^-(N+1) < (|k| - 1) delta, so the disk
    D_{N+1}(delta) already sits inside the central disk |w| < |k| delta.
    """
    return -printed_disk_count_threshold(kmod, delta)


def disk_count(kmod: float, delta: float) -> int:
    return max(1, math.floor(disk_count_threshold(kmod, delta)) + 1)


@dataclass(frozen=True)
class AvoidedRegionF:
    k: complex
    delta: float
    delta0: float
    t: float
    n_disks: int
    centers: tuple = field(repr=False, default=())

    @property
    def kmod(self) -> float:
        return abs(self.k)

    @property
    def outer_radius(self) -> float:
        """Radius |k| delta of the central disk around the repelling point."""
        return self.kmod * self.delta

    def contains(self, w) -> bool:
        w = as_point(w)
        if w is INF:
            return False
        if abs(w) < self.outer_radius:
            return True
        return any(abs(w - q) < self.delta for q in self.centers)

    def contains_array(self, w: np.ndarray) -> np.ndarray:
        w = np.asarray(w, dtype=complex)
        inside = np.abs(w) < self.outer_radius
        for q in self.centers:
            inside |= np.abs(w - q) < self.delta
        return inside

    def locate(self, w, tol: float = BOUNDARY_TOL) -> Location:
        """Like :meth:`contains` but flags points within ``tol`` of a boundary."""
        w = as_point(w)
        if w is INF:
            return Location.OUTSIDE
        margin = self.margin(w)
        if abs(margin) <= tol:
            return Location.BOUNDARY
        return Location.INSIDE if margin > 0 else Location.OUTSIDE

    def margin(self, w) -> float:
        """Positive depth inside the region, negative distance outside it."""
        depth = self.outer_radius - abs(w)
        for q in self.centers:
            depth = max(depth, self.delta - abs(w - q))
        return depth

    def margin_array(self, w: np.ndarray) -> np.ndarray:
        depth = self.outer_radius - np.abs(w)
        for q in self.centers:
            depth = np.maximum(depth, self.delta - np.abs(w - q))
        return depth


def build_avoided_f(k, delta0: float, t: float = 2.0) -> AvoidedRegionF:
    k = complex(k)
    kmod = abs(k)
    if not kmod > 1:
        raise ValueError("|k| must exceed 1")
    if not delta0 > 0:
        raise ValueError("delta0 must be positive")
    if not t > 1:
        raise ValueError("t must exceed 1")
    delta = t * delta0 / (kmod - 1)
    if delta >= abs(k - 1) / kmod:
        raise DeltaTooLarge(f"delta = {delta!r} is not below |k - 1|/|k| = {abs(k - 1) / kmod!r}")
    n = disk_count(kmod, delta)
    centers = tuple(1 / k**m for m in range(1, n + 1))
    return AvoidedRegionF(k, delta, float(delta0), float(t), n, centers)


def contains_f(region: AvoidedRegionF, w) -> bool:
    return region.contains(w)


@dataclass(frozen=True)
class AvoidedRegionG:
    """h^-1(R_f(1)): the avoided region of g at infinity."""

    base: AvoidedRegionF
    data: LoxodromicData

    @property
    def h(self) -> Conjugator:
        return Conjugator(self.data.alpha, self.data.beta)

    def contains(self, z) -> bool:
        z = as_point(z)
        if z is INF:
            return self.base.contains(1 + 0j)
        if z == self.data.alpha:
            return False
        return self.base.contains(self.h(z))

    def contains_array(self, z: np.ndarray) -> np.ndarray:
        return self.base.contains_array(self.h.array(np.asarray(z, dtype=complex)))

    def locate(self, z, tol: float = BOUNDARY_TOL) -> Location:
        z = as_point(z)
        if z is INF:
            return self.base.locate(1 + 0j, tol)
        if z == self.data.alpha:
            return Location.OUTSIDE
        return self.base.locate(self.h(z), tol)

    def entered_array(self, z: np.ndarray, tol: float = BOUNDARY_TOL) -> np.ndarray:
        """Conservative entry test: boundary points count as inside."""
        return self.base.margin_array(self.h.array(np.asarray(z, dtype=complex))) >= -tol

    def backward_orbit_point(self, n: int) -> complex:
        """g^-n(inf) = h^-1(1/k^n)."""
        return self.h.inv(1 / self.data.k**n)

    def central_component(self) -> Disk:
        """z-plane form of {|w| < |k| delta}: the complement of B(|k| delta)."""
        rho = self.base.outer_radius
        if rho >= 1:
            raise ValueError("central disk reaches the unit circle; its pullback is unbounded")
        geom = apollonius_circle(self.data.alpha, self.data.beta, rho)
        return Disk(geom.center, geom.radius)

    def disk_components(self, scale: float = 1.0) -> list:
        """Pullbacks h^-1(D_n(scale * delta)) for n = 1..N as z-plane circles."""
        hinv = inverse(self.h.as_map())
        out = []
        radius = scale * self.base.delta
        for q in self.base.centers:
            if abs(q - 1) <= radius:
                raise ValueError(f"disk around {q!r} of radius {radius!r} contains w = 1")
            out.append(mobius_image_of_circle(hinv, CircleGeom(q, radius)))
        return out

    def components(self) -> list:
        return [self.central_component()] + [Disk(c.center, c.radius) for c in self.disk_components()]

    def nearest_center_array(self, z: np.ndarray) -> np.ndarray:
        centers = np.array([c.center for c in self.components()])
        z = np.asarray(z, dtype=complex)
        idx = np.argmin(np.abs(z[..., None] - centers), axis=-1)
        return centers[idx]


def build_avoided_g(data: LoxodromicData, delta0: float, t: float = 2.0) -> AvoidedRegionG:
    return AvoidedRegionG(build_avoided_f(data.k, delta0, t), data)


def contains_g(region: AvoidedRegionG, z) -> bool:
    return region.contains(z)


# ---------------------------------------------------------------- epsilon


def printed_epsilon_terms(data: LoxodromicData, g: MoebiusMap, delta: float) -> tuple:
    """The two terms of the admissible-perturbation bound in their printed form.

    first  = dist(dB_{|k| delta}, B_{|k|^2 delta})
    second = delta sqrt|k| |k-1|^2 / ((2|k-1|^2 + 2|c| delta sqrt|k|)^(1/2) |c| (delta|k| + 1))
    """
    if g.c == 0:
        raise ValueError("c must be nonzero")
    km = abs(data.k)
    sk = math.sqrt(km)
    km1 = abs(data.k - 1)
    cm = abs(g.c)
    first = boundary_to_region_distance(data.alpha, data.beta, km * delta, km * km * delta)
    second = delta * sk * km1**2 / (math.sqrt(2 * km1**2 + 2 * cm * delta * sk) * cm * (delta * km + 1))
    return first, second


def printed_epsilon_bound(data: LoxodromicData, g: MoebiusMap, delta: float) -> float:
    return min(printed_epsilon_terms(data, g, delta))


def _gap(inner, enlarged, enlarged_holds_pole: bool) -> float:
    if isinstance(enlarged, Line):
        return enlarged.distance(inner.center) - inner.radius
    sep = abs(inner.center - enlarged.center)
    if enlarged_holds_pole:
        # enlarged region is the exterior of this circle; inner sits outside it
        return sep - inner.radius - enlarged.radius
    return enlarged.radius - sep - inner.radius


def component_gaps(region: AvoidedRegionG) -> list:
    """z-distance from each component of R_g(inf) to the part of g(C) around it.

    g maps the complement C of the region outside h^-1(f(R_f(1))), which
    contains B(|k|^2 delta)'s complement around the central component and
    h^-1(D_n(|k| delta)) around each disk component.
    """
    data = region.data
    base = region.base
    km = base.kmod
    gaps = [boundary_to_region_distance(data.alpha, data.beta, km * base.delta, km * km * base.delta)]
    inner = region.disk_components(1.0)
    hinv = inverse(region.h.as_map())
    for q, circ in zip(base.centers, inner):
        enlarged = mobius_image_of_circle(hinv, CircleGeom(q, km * base.delta))
        gaps.append(_gap(circ, enlarged, abs(q - 1) < km * base.delta))
    return gaps


def certified_epsilon(region: AvoidedRegionG) -> float:
    return min(component_gaps(region))


def epsilon_terms(region: AvoidedRegionG, g: MoebiusMap) -> dict:
    first, second = printed_epsilon_terms(region.data, g, region.base.delta)
    gaps = component_gaps(region)
    return {
        "printed_distance_term": first,
        "printed_radius_term": second,
        "printed_bound": min(first, second),
        "component_gap": min(gaps),
        "epsilon_max": min(second, min(gaps)),
    }


def epsilon_max(region: AvoidedRegionG, g: MoebiusMap, tol: float = 1e-15) -> float:
    """Largest admissible per-step perturbation for orbits outside R_g(inf).

    The printed bound is intersected with the exact gap between every
    component of the region and the image of its complement, which is the
    quantity perturbed orbits actually have to respect.
    """
    value = epsilon_terms(region, g)["epsilon_max"]
    if value <= tol:
        raise EmptyMargin(f"no admissible perturbation (bound {value!r})")
    return value


# ---------------------------------------------------------------- pole disk


def _check_delta(data: LoxodromicData, delta: float):
    limit = abs(data.k - 1) / abs(data.k)
    if not 0 < delta < limit:
        raise DeltaTooLarge(f"delta = {delta!r} must lie in (0, |k - 1|/|k| = {limit!r})")


def h_inv_D1_disk(data: LoxodromicData, g: MoebiusMap, delta: float) -> CircleGeom:
    """h^-1({|w - 1/k| < delta}) in closed form.

    Center (|k-1|^2 (-d/c) - delta^2|k|^2 alpha)/(|k-1|^2 - delta^2|k|^2),
    radius delta|k| sqrt|k| |k-1| / (|c| (|k-1|^2 - delta^2|k|^2)).
    """
    _check_delta(data, delta)
    km = abs(data.k)
    a2 = abs(data.k - 1) ** 2
    e2 = (delta * km) ** 2
    pole = -g.d / g.c
    center = (a2 * pole - e2 * data.alpha) / (a2 - e2)
    radius = delta * km * math.sqrt(km) * abs(data.k - 1) / (abs(g.c) * (a2 - e2))
    return CircleGeom(center, radius)


def d_epsilon0_disk(data: LoxodromicData, g: MoebiusMap, delta: float) -> Disk:
    """Open disk around -d/c of radius delta|k|^2 |alpha - beta| / (2|k - 1|^2).

    It lies inside h^-1(D_1(delta)) and hence inside R_g(inf).
    """
    _check_delta(data, delta)
    km = abs(data.k)
    eps0 = delta * km * km * abs(data.alpha - data.beta) / (2 * abs(data.k - 1) ** 2)
    disk = Disk(-g.d / g.c, eps0)
    outer = h_inv_D1_disk(data, g, delta)
    if abs(disk.center - outer.center) + disk.radius > outer.radius * (1 + 1e-12):
        raise ArithmeticError("pole disk is not contained in h^-1(D_1)")
    return disk


def g_prime_sup_bound(data: LoxodromicData, delta: float) -> float:
    """4|k - 1|^2 / (delta^2 |k|^3), a bound for |g'| outside R_g(inf)."""
    km = abs(data.k)
    return 4 * abs(data.k - 1) ** 2 / (delta * delta * km**3)
