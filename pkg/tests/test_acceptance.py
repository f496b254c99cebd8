"""Acceptance criteria 1-8, each at its stated tolerance and time budget.

Every test records one line that is printed in the terminal summary as
"PASS criterion N: ..." or "FAIL criterion N: ...".
"""

import cmath
import time
from pathlib import Path

import pytest

from loxostab import suites
from loxostab.cli import EXIT_OK, cmd_simulate, cmd_verify
from loxostab.core import classify, fixed_points
from loxostab.reference import CORRECTED_K, PRINTED_K, example_map
from loxostab.report import RunConfig
from loxostab.stability import DEFAULT_SEED


class Criterion:
    """Record the outcome of one criterion, including failures."""

    def __init__(self, log, number, budget):
        self.log, self.number, self.budget = log, number, budget
        self.note = ""

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        over = self.budget is not None and elapsed >= self.budget
        passed = exc_type is None and not over
        note = self.note or (f"{exc_type.__name__}: {exc}" if exc_type else "")
        self.log.append((self.number, passed, f"{note} [{elapsed:.2f}s]"))
        if exc_type is None and over:
            pytest.fail(f"criterion {self.number} took {elapsed:.2f}s, budget {self.budget}s")
        return False


def trace_identity(k, trace):
    s = cmath.sqrt(k)
    return min(abs(s + 1 / s - trace), abs(-s - 1 / s - trace))


def test_criterion_1_example_fixtures(acceptance_log):
    with Criterion(acceptance_log, 1, 1.0) as c:
        g = example_map()
        data = fixed_points(g)
        assert classify(g).loxodromic
        assert abs(data.alpha - (25 + 12j)) <= 1e-9
        assert abs(data.beta - (16 - 18.75j)) <= 1e-9
        assert g.trace == 1.64 + 0.27j
        assert abs(data.kmod - 1.5625) <= 1e-10
        assert trace_identity(data.k, g.trace) <= 1e-10
        # erratum: the printed multiplier fails the identity, the corrected one passes
        assert trace_identity(CORRECTED_K, g.trace) <= 1e-10
        assert trace_identity(PRINTED_K, g.trace) > 1e-10
        res = suites.example_fixture()
        assert res.passed, res.details
        assert "erratum" in res.details
        c.note = (f"alpha, beta, trace, |k| match; printed k residual "
                  f"{trace_identity(PRINTED_K, g.trace):.4f} (erratum documented)")


def test_criterion_2_algebraic_identities(acceptance_log):
    with Criterion(acceptance_log, 2, 5.0) as c:
        res = suites.algebraic_identities(n_maps=1000)
        assert res.passed, res.details
        assert res.details["maps"] == 1000
        c.note = f"1000 maps, worst relative error {max(res.details['max_relative_error'].values()):.2e}"


def test_criterion_3_geometry_oracle(acceptance_log):
    with Criterion(acceptance_log, 3, 10.0) as c:
        res = suites.geometry_oracle(n_maps=50)
        assert res.passed, res.details
        assert res.details["maps"] == 50
        c.note = (f"50 maps x 4 radii, fit error {res.details['max_fit_error']:.2e}, "
                  f"origin-circle error {res.details['max_origin_circle_error']:.2e}")


def test_criterion_4_avoidance(acceptance_log):
    with Criterion(acceptance_log, 4, 30.0) as c:
        res = suites.avoidance(example_map(), 0.005, 2.0, eps_factor=0.9, trials=1000, steps=200,
                               n_points=10_000)
        d = res.details
        assert d["entries_UniformDisk"] == 0 and d["entries_Adversarial"] == 0, d
        assert d["invariance_failures"] == 0 and d["invariance_points"] >= 9_900, d
        assert res.passed, d
        c.note = f"0 entries in 2x1000 orbits, 0 leaks on {d['invariance_points']} points"


def test_criterion_5_hyers_ulam(acceptance_log):
    with Criterion(acceptance_log, 5, 60.0) as c:
        g = example_map()
        km = fixed_points(g).kmod
        R = 1.01 * (km**0.5 + 1) ** 2 / (km**0.5 * (km - 1))
        res = suites.hyers_ulam(g, 0.005, 2.0, R=R, eps_factor=1e-3, trials=1000, steps=500)
        d = res.details
        assert d["R"] == R
        assert d["bound_violations"] == 0, d
        assert d["sup_deviation"] <= d["H"], d
        assert d["linearity_error"] <= 1e-12, d
        assert res.passed, d
        c.note = (f"0 violations, sup deviation {d['sup_deviation']:.3e} <= H {d['H']:.3e}, "
                  f"H/eps spread {d['linearity_error']:.1e}")


def test_criterion_6_escape_time(acceptance_log):
    with Criterion(acceptance_log, 6, 30.0) as c:
        res = suites.escape_time(example_map(), 0.005, 2.0, trials=300, n_random=10)
        cases = res.details["cases"]
        assert len(cases) == 11
        for name, case in cases.items():
            assert case["empirical"] <= case["N"] <= case["N_crude"], (name, case)
        assert res.passed
        example = cases["input"]
        c.note = (f"example map empirical {example['empirical']} <= N {example['N']} <= "
                  f"{example['N_crude']}; 10 random hyperbolic maps ok")


def test_criterion_7_convergence(acceptance_log):
    with Criterion(acceptance_log, 7, 2.0) as c:
        res = suites.convergence(example_map(), n_starts=100, iterations=200)
        assert res.passed, res.details
        c.note = (f"forward margin {res.details['forward_margin']:.2e}, "
                  f"backward margin {res.details['backward_margin']:.2e}")


def _outputs(directory: Path) -> dict:
    return {p.name: p.read_bytes() for p in sorted(directory.iterdir())}


def test_criterion_8_determinism(acceptance_log, tmp_path):
    with Criterion(acceptance_log, 8, None) as c:
        runs = []
        for i in range(2):
            out = tmp_path / f"run{i}"
            sim = RunConfig(command="simulate", steps=200, trials=1, seed=DEFAULT_SEED, out=str(out))
            ver = RunConfig(command="verify", steps=500, trials=1000, seed=DEFAULT_SEED, out=str(out))
            assert cmd_simulate(sim.validate()) == EXIT_OK
            assert cmd_verify(ver.validate()) == EXIT_OK
            runs.append(_outputs(out))
        assert set(runs[0]) == {"orbit.csv", "orbit.svg", "simulate.json", "verify.json"}
        for name in runs[0]:
            assert runs[0][name] == runs[1][name], name
        c.note = f"{len(runs[0])} files byte-identical across two runs"
