"""Command-line interface: classify | regions | simulate | escape-time | verify.

Exit codes: 0 success, 1 invalid input or configuration, 2 map is not a
(supported) loxodromic map, 3 start point inside the avoided region, 4 a
verification check failed.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

import numpy as np

from . import __version__, suites
from .core import classify, fixed_points
from .errors import (
    DegenerateMap,
    DeltaTooLarge,
    EmptyMargin,
    LinearMap,
    LoxostabError,
    NotLoxodromic,
    OrbitHitPole,
    StartInAvoidedRegion,
)
from .geometry import Location
from .plotting import orbit_figure, regions_figure
from .report import (
    RunConfig,
    constants_summary,
    dumps,
    map_summary,
    orbit_csv,
    parse_complex,
    region_records,
    regions_report,
    suite_record,
)
from .stability import (
    combined_bound_array,
    escape_steps,
    escape_time_bound,
    run_orbits,
    start_regime,
    trial_seeds,
)

EXIT_OK, EXIT_INPUT, EXIT_MAP, EXIT_START, EXIT_SUITE = 0, 1, 2, 3, 4

COMMAND_DEFAULTS = {
    "simulate": {"steps": 200, "trials": 1},
    "escape-time": {"trials": 300},
    "verify": {"steps": 500, "trials": 1000},
}

# option values such as "-25,11.07" would otherwise look like flags to argparse
_NEGATIVE = re.compile(r"^-(?:[0-9.]|[ij]$)")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _float(text) -> float:
    return float(str(text).replace("−", "-"))


def _int(text) -> int:
    return int(str(text).replace("−", "-"))


def build_parser() -> argparse.ArgumentParser:
    shared = _Parser(add_help=False)
    shared.add_argument("--map", nargs=4, metavar=("A", "B", "C", "D"), type=parse_complex,
                        help='coefficients as "re,im" pairs or a+bi literals')
    shared.add_argument("--epsilon", type=_float, help="per-step perturbation (default 1e-3 epsilon_max)")
    shared.add_argument("--delta0", type=_float, help="perturbation size in w-coordinates (default 0.005)")
    shared.add_argument("--t", type=_float, help="avoided-disk factor t > 1 (default 2)")
    shared.add_argument("--R", type=_float, help="contraction radius (default 1.01 times the minimum)")
    shared.add_argument("--steps", type=_int)
    shared.add_argument("--trials", type=_int)
    shared.add_argument("--seed", type=_int)
    shared.add_argument("--z0", type=parse_complex, help="start point for simulate (default 0)")
    shared.add_argument("--out", help="output directory (default ./out)")
    shared.add_argument("--force", action="store_true", default=None,
                        help="simulate even when z0 lies in the avoided region")
    shared.add_argument("--config", type=Path, help="JSON file with the same keys as the flags")

    parser = _Parser(prog="loxostab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("classify", parents=[shared], help="class, fixed points and multiplier")
    regions = sub.add_parser("regions", parents=[shared], help="region geometry as JSON and SVG")
    regions.add_argument("--r", dest="radii", nargs="+", type=_float,
                         help="radii r for the S(r) boundaries and their h-images")
    sub.add_parser("simulate", parents=[shared], help="perturbed versus exact orbit as CSV")
    sub.add_parser("escape-time", parents=[shared], help="uniform escaping time, bound and empirical")
    sub.add_parser("verify", parents=[shared], help="run every verification suite")
    return parser


def _protect_negatives(argv: list) -> list:
    return ["−" + a[1:] if _NEGATIVE.match(a) else a for a in argv]


def load_config(argv=None) -> RunConfig:
    args = build_parser().parse_args(_protect_negatives(list(sys.argv[1:] if argv is None else argv)))
    merged = dict(COMMAND_DEFAULTS.get(args.command, {}))
    if args.config is not None:
        try:
            merged.update(json.loads(args.config.read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
    flags = {k: v for k, v in vars(args).items() if v is not None and k != "config"}
    merged.update(flags)
    if "map" in merged:
        merged["map"] = [parse_complex(z) for z in merged["map"]]
    cfg = RunConfig.from_dict(merged)
    return cfg.validate()


def _fmt(z) -> str:
    z = complex(z)
    return f"{z.real:.15g}{z.imag:+.15g}i"


def _write(path: Path, payload):
    path.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(payload, str):
        path.write_bytes(payload.encode())
    else:
        path.write_bytes(payload)


def _loxodromic(cfg: RunConfig):
    g = cfg.g()
    kind = classify(g)
    if not kind.loxodromic:
        raise NotLoxodromic(f"map is {kind.value}")
    return g, fixed_points(g)


# ---------------------------------------------------------------- commands


def cmd_classify(cfg: RunConfig) -> int:
    g = cfg.g()
    kind = classify(g)
    print(f"class: {kind.value}")
    print(f"trace: {_fmt(g.trace)}")
    if not kind.loxodromic:
        return EXIT_MAP
    data = fixed_points(g)
    print(f"alpha: {_fmt(data.alpha)}")
    print(f"beta: {_fmt(data.beta)}")
    print(f"k: {_fmt(data.k)}")
    print(f"|k|: {data.kmod:.15g}")
    return EXIT_OK


def cmd_regions(cfg: RunConfig) -> int:
    g, data = _loxodromic(cfg)
    rep = regions_report(cfg, g, data)
    raw = rep["records"]
    out = Path(cfg.out)
    _write(out / "regions.json", dumps(rep))
    _write(out / "regions.svg", regions_figure(rep, raw))
    print(f"wrote {out / 'regions.json'} and {out / 'regions.svg'} ({len(raw)} circles)")
    return EXIT_OK


def cmd_simulate(cfg: RunConfig) -> int:
    g, data = _loxodromic(cfg)
    region, const, summary = constants_summary(cfg, g, data)
    z0 = complex(cfg.z0)
    if region.locate(z0) is not Location.OUTSIDE and not cfg.force:
        raise StartInAvoidedRegion(f"z0 = {_fmt(z0)} lies in the avoided region (use --force)")
    R = summary["R"]
    regime = start_regime(data, R, z0)
    seeds = trial_seeds(cfg.seed, cfg.trials)
    a, b, _ = run_orbits(g, np.full(cfg.trials, z0), cfg.steps, summary["epsilon"], seeds)
    bound = combined_bound_array(const, cfg.steps, regime)
    dev = np.abs(a - b)
    out = Path(cfg.out)
    _write(out / "orbit.csv", orbit_csv(a[0], b[0], bound, data, R, region))
    raw = region_records(g, data, region, R)
    _write(out / "orbit.svg", orbit_figure(a[0], b[0], bound, data.alpha, data.beta, raw))
    rep = {
        "version": __version__,
        "seed": cfg.seed,
        "config": cfg.report_dict(),
        "map": map_summary(cfg, g, data),
        "constants": summary,
        "regime": regime,
        "trial_seeds": seeds,
        "max_deviation": float(dev.max()),
        "bound_violations": int((dev > bound).sum()),
        "entered_avoided_region": int(region.contains_array(a[:, 1:]).any(axis=1).sum()),
    }
    _write(out / "simulate.json", dumps(rep))
    print(f"max deviation {rep['max_deviation']:.6g} over {cfg.trials} trial(s); "
          f"bound violations: {rep['bound_violations']}")
    return EXIT_OK


def cmd_escape_time(cfg: RunConfig) -> int:
    g, data = _loxodromic(cfg)
    region, _, summary = constants_summary(cfg, g, data)
    R = summary["R"]
    bound = escape_time_bound(data.kmod, cfg.delta0)
    steps = 10 * bound.n
    z0 = suites.sample_transit(region, R, np.random.default_rng(cfg.seed), cfg.trials)
    a, _, _ = run_orbits(g, z0, steps, summary["epsilon"], trial_seeds(cfg.seed, cfg.trials))
    esc = escape_steps(g, data, R, a)
    empirical = int(esc.max()) if (esc >= 0).all() else None
    rep = {
        "version": __version__,
        "seed": cfg.seed,
        "map": map_summary(cfg, g, data),
        "delta0": cfg.delta0,
        "R": R,
        "epsilon": summary["epsilon"],
        "N": bound.n,
        "N_crude": bound.n_crude,
        "threshold": bound.threshold,
        "threshold_crude": bound.threshold_crude,
        "trials": cfg.trials,
        "empirical_escape_time": empirical,
        "never_escaped": int((esc < 0).sum()),
    }
    _write(Path(cfg.out) / "escape_time.json", dumps(rep))
    print(f"N = {bound.n} (sufficient variant {bound.n_crude}); empirical = {empirical}")
    return EXIT_OK if empirical is not None and empirical <= bound.n else EXIT_SUITE


def cmd_verify(cfg: RunConfig) -> int:
    g, data = _loxodromic(cfg)
    try:
        _, _, constants = constants_summary(cfg, g, data)
    except (LoxostabError, ArithmeticError, ValueError) as exc:
        constants = {"error": f"{type(exc).__name__}: {exc}"}
    results = suites.run_all(g, cfg.delta0, cfg.t, cfg.R, cfg.trials, cfg.steps, cfg.seed)
    passed = all(r.passed for r in results)
    rep = {
        "version": __version__,
        "seed": cfg.seed,
        "config": cfg.report_dict(),
        "map": map_summary(cfg, g, data),
        "constants": constants,
        "suites": [suite_record(r) for r in results],
        "all_passed": passed,
    }
    _write(Path(cfg.out) / "verify.json", dumps(rep))
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<22} margin {r.margin:.3e}")
    return EXIT_OK if passed else EXIT_SUITE


HANDLERS = {
    "classify": cmd_classify,
    "regions": cmd_regions,
    "simulate": cmd_simulate,
    "escape-time": cmd_escape_time,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    try:
        cfg = load_config(argv)
    except (UsageError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return HANDLERS[cfg.command](cfg)
    except DegenerateMap as exc:
        print(f"error: degenerate map: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NotLoxodromic, LinearMap) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MAP
    except (StartInAvoidedRegion, OrbitHitPole) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_START
    except (DeltaTooLarge, EmptyMargin) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LoxostabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SUITE


if __name__ == "__main__":
    sys.exit(main())
