"""Run configuration, serialization and report assembly for the CLI."""

from __future__ import annotations

import dataclasses
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .avoided import AvoidedRegionG, build_avoided_g, epsilon_terms
from .core import INF, LoxodromicData, MoebiusMap, classify, normalize
from .geometry import (
    ApolloniusB,
    CircleGeom,
    Line,
    SRegion,
    apollonius_circle,
    h_boundary_circle_of_S,
    min_contraction_radius,
)
from .reference import DEFAULT_DELTA0, DEFAULT_T, EXAMPLE_COEFFICIENTS
from .stability import DEFAULT_SEED, stability_constants


def parse_complex(text) -> complex:
    """Parse "re,im" or an "a+bi" literal (i or j; Unicode minus allowed)."""
    if isinstance(text, (int, float, complex)):
        return complex(text)
    s = str(text).strip().replace("\u2212", "-").replace(" ", "")
    if "," in s:
        parts = s.split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 're,im', got {text!r}")
        return complex(float(parts[0]), float(parts[1]))
    if s.endswith("i"):
        s = s[:-1] + "j"
    try:
        return complex(s)
    except ValueError:
        raise ValueError(f"cannot parse complex number {text!r}") from None


def format_complex(z: complex) -> str:
    """Canonical "re,im" form; parse_complex(format_complex(z)) == z."""
    z = complex(z)
    return f"{z.real!r},{z.imag!r}"


@dataclass
class RunConfig:
    command: str = "verify"
    map: tuple = EXAMPLE_COEFFICIENTS
    epsilon: float | None = None
    delta0: float = DEFAULT_DELTA0
    t: float = DEFAULT_T
    R: float | None = None
    steps: int = 200
    trials: int = 1000
    seed: int = DEFAULT_SEED
    z0: complex = 0j
    out: str = "out"
    force: bool = False
    radii: tuple = field(default=())

    def validate(self):
        if len(self.map) != 4:
            raise ValueError("--map needs four coefficients")
        if self.steps < 1:
            raise ValueError("--steps must be positive")
        if self.trials < 1:
            raise ValueError("--trials must be positive")
        if self.epsilon is not None and not self.epsilon >= 0:
            raise ValueError("--epsilon must be nonnegative")
        if not self.delta0 > 0:
            raise ValueError("--delta0 must be positive")
        if not self.t > 1:
            raise ValueError("--t must exceed 1")
        if self.R is not None and not self.R > 0:
            raise ValueError("--R must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("--seed must be a 64-bit unsigned integer")
        if any(not r > 0 for r in self.radii):
            raise ValueError("--r values must be positive")
        return self

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["map"] = [format_complex(z) for z in self.map]
        d["z0"] = format_complex(self.z0)
        d["radii"] = list(self.radii)
        return d

    def report_dict(self) -> dict:
        """Config echo for reports; the output directory is left out so that
        runs written to different places stay byte-identical."""
        d = self.to_dict()
        del d["out"]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        d = dict(d)
        if "map" in d:
            d["map"] = tuple(parse_complex(z) for z in d["map"])
        if "z0" in d:
            d["z0"] = parse_complex(d["z0"])
        if "radii" in d:
            d["radii"] = tuple(float(r) for r in d["radii"])
        for key, typ in (("epsilon", float), ("R", float), ("delta0", float), ("t", float),
                         ("steps", int), ("trials", int), ("seed", int)):
            if d.get(key) is not None:
                d[key] = typ(d[key])
        return cls(**d)

    def g(self) -> MoebiusMap:
        return normalize(*self.map)


# ---------------------------------------------------------------- json


def jsonable(x):
    """Convert numbers, complex values and containers to JSON-ready data.

    Complex numbers become [re, im]; non-finite floats become null.
    """
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return [jsonable(v) for v in x.tolist()]
    if x is INF:
        return "inf"
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, (complex, np.complexfloating)):
        return [jsonable(float(x.real)), jsonable(float(x.imag))]
    if hasattr(x, "value"):
        return x.value
    return x


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, allow_nan=False) + "\n"


# ---------------------------------------------------------------- reports


def map_summary(cfg: RunConfig, g: MoebiusMap, data: LoxodromicData | None) -> dict:
    out = {
        "coefficients": [format_complex(z) for z in cfg.map],
        "normalized": [g.a, g.b, g.c, g.d],
        "classification": classify(g).value,
        "trace": g.trace,
    }
    if data is not None:
        out.update({"alpha": data.alpha, "beta": data.beta, "k": data.k, "kmod": data.kmod})
    return out


def resolve_R(cfg: RunConfig, data: LoxodromicData) -> float:
    return cfg.R if cfg.R is not None else 1.01 * min_contraction_radius(data.kmod)


def constants_summary(cfg: RunConfig, g: MoebiusMap, data: LoxodromicData) -> tuple:
    """Avoided region, StabilityConstants and a flat summary for the report.

    Without an explicit epsilon the headline value 1e-3 epsilon_max is used.
    """
    region = build_avoided_g(data, cfg.delta0, cfg.t)
    terms = epsilon_terms(region, g)
    eps = cfg.epsilon if cfg.epsilon is not None else 1e-3 * terms["epsilon_max"]
    R = resolve_R(cfg, data)
    const = stability_constants(g, data, R, cfg.delta0, cfg.t, eps)
    summary = {
        "R": R,
        "K": const.K,
        "M": const.M,
        "N": const.N,
        "delta": const.delta,
        "disks": region.base.n_disks,
        "epsilon": eps,
        "epsilon_max": terms["epsilon_max"],
        "epsilon_printed_bound": terms["printed_bound"],
        "H": const.H_of_eps,
    }
    return region, const, summary


def suite_record(res) -> dict:
    return {"name": res.name, "passed": res.passed, "margin": res.margin, "details": res.details}


# ---------------------------------------------------------------- regions


def _circle(rec_id, panel, layer, geom, **extra) -> dict:
    if isinstance(geom, Line):
        rec = {"id": rec_id, "panel": panel, "layer": layer, "type": "line",
               "point": geom.point, "direction": geom.direction}
    else:
        rec = {"id": rec_id, "panel": panel, "layer": layer, "type": "circle",
               "center": geom.center, "radius": geom.radius}
    rec.update(extra)
    return rec


def default_radii(data: LoxodromicData) -> tuple:
    return (1 / math.sqrt(data.kmod), 0.5, 1.0, 2.0)


def region_records(g: MoebiusMap, data: LoxodromicData, region: AvoidedRegionG, R: float,
                   radii=()) -> list:
    """Every circle and line drawn by the regions figure, straight from the library."""
    radii = tuple(radii) or default_radii(data)
    recs = []
    family = sorted({0.5, 1.0, 2.0, R})
    for i, r in enumerate(family):
        recs.append(_circle(f"z_C_{i}", "z", "apollonius", apollonius_circle(data.alpha, data.beta, r), r=r))
        recs.append(_circle(f"w_C_{i}", "w", "apollonius", CircleGeom(0j, r), r=r))
    for i, r in enumerate(radii):
        recs.append(_circle(f"z_S_{i}", "z", "S_boundary", SRegion.of(g, r).boundary(), r=r))
        recs.append(_circle(f"w_hS_{i}", "w", "h_S_boundary", h_boundary_circle_of_S(data, r), r=r))
    recs.append(_circle("z_B_R", "z", "B_R", apollonius_circle(data.alpha, data.beta, R), r=R))
    recs.append(_circle("w_B_R", "w", "B_R", CircleGeom(0j, R), r=R))
    recs.append(_circle("z_avoid_0", "z", "avoided", region.central_component().boundary(), n=0))
    recs.append(_circle("w_avoid_0", "w", "avoided", CircleGeom(0j, region.base.outer_radius), n=0))
    for n, (q, geom) in enumerate(zip(region.base.centers, region.disk_components()), start=1):
        recs.append(_circle(f"z_avoid_{n}", "z", "avoided", geom, n=n))
        recs.append(_circle(f"w_avoid_{n}", "w", "avoided", CircleGeom(q, region.base.delta), n=n))
    return recs


def regions_report(cfg: RunConfig, g: MoebiusMap, data: LoxodromicData) -> dict:
    region = build_avoided_g(data, cfg.delta0, cfg.t)
    R = resolve_R(cfg, data)
    return {
        "version": __version__,
        "map": map_summary(cfg, g, data),
        "delta0": cfg.delta0,
        "t": cfg.t,
        "delta": region.base.delta,
        "R": R,
        "points": {"alpha": data.alpha, "beta": data.beta, "pole": g.pole,
                   "backward_orbit_w": list(region.base.centers)},
        "records": region_records(g, data, region, R, cfg.radii),
    }


# ---------------------------------------------------------------- csv


CSV_COLUMNS = ("n", "a_re", "a_im", "b_re", "b_im", "deviation", "bound", "in_BR", "in_avoided")


def orbit_csv(a, b, bound, data: LoxodromicData, R: float, region: AvoidedRegionG) -> str:
    a = np.asarray(a)
    b = np.asarray(b)
    dev = np.abs(a - b)
    in_BR = ApolloniusB(data.alpha, data.beta, R).contains_array(a)
    in_av = region.contains_array(a)
    buf = io.StringIO(newline="")
    buf.write(",".join(CSV_COLUMNS) + "\n")
    for n in range(a.size):
        vals = (a[n].real, a[n].imag, b[n].real, b[n].imag, dev[n], bound[n])
        buf.write(f"{n}," + ",".join(f"{v:.17g}" for v in vals) + f",{int(in_BR[n])},{int(in_av[n])}\n")
    return buf.getvalue()
