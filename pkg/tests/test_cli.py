import csv
import json
import math
import re

import numpy as np
import pytest

from loxostab.avoided import build_avoided_g
from loxostab.cli import EXIT_INPUT, EXIT_MAP, EXIT_OK, EXIT_START, EXIT_SUITE, load_config, main
from loxostab.report import CSV_COLUMNS, format_complex, parse_complex
from loxostab.stability import DEFAULT_SEED

EXAMPLE = ["1.64,0", "-25,11.07", "0.04,0", "0,0.27"]


def run(tmp_path, *args):
    return main(list(args) + ["--out", str(tmp_path)])


# ---------------------------------------------------------------- parsing


@pytest.mark.parametrize("text, value", [
    ("1.64,0", 1.64 + 0j),
    ("-25,11.07", -25 + 11.07j),
    ("−25,11.07", -25 + 11.07j),
    ("-25+11.07i", -25 + 11.07j),
    ("−25+11.07i", -25 + 11.07j),
    ("0.27j", 0.27j),
    ("2", 2 + 0j),
    ("1e-3-2e-3i", 1e-3 - 2e-3j),
])
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["1,2,3", "abc", "1+", ""])
def test_parse_complex_rejects(text):
    with pytest.raises(ValueError):
        parse_complex(text)


@pytest.mark.parametrize("z", [0j, -0.1 + 1e-300j, 1 / 3 - 2 / 7j, 25 + 12j])
def test_format_complex_round_trip(z):
    assert parse_complex(format_complex(z)) == z


def test_map_forms_agree():
    a = load_config(["classify", "--map", *EXAMPLE])
    b = load_config(["classify", "--map", "1.64", "−25+11.07i", "0.04", "0.27i"])
    c = load_config(["classify", "--map", "1.64", "-25+11.07i", "0.04", "0.27j"])
    assert a.map == b.map == c.map


def test_command_defaults():
    assert load_config(["simulate"]).steps == 200 and load_config(["simulate"]).trials == 1
    assert load_config(["verify"]).steps == 500 and load_config(["verify"]).trials == 1000
    assert load_config(["escape-time"]).trials == 300
    assert load_config(["verify"]).seed == DEFAULT_SEED


def test_config_file_and_flag_precedence(tmp_path):
    cfg_file = tmp_path / "run.json"
    cfg_file.write_text(json.dumps({"steps": 77, "trials": 9, "delta0": 0.01,
                                    "map": EXAMPLE, "z0": "1,1"}))
    cfg = load_config(["simulate", "--config", str(cfg_file), "--trials", "3"])
    assert (cfg.steps, cfg.trials, cfg.delta0, cfg.z0) == (77, 3, 0.01, 1 + 1j)
    # the echoed config is itself a valid config file
    echo = tmp_path / "echo.json"
    echo.write_text(json.dumps(cfg.to_dict()))
    again = load_config(["simulate", "--config", str(echo)])
    assert again == cfg


def test_config_unknown_key(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"stepz": 3}))
    assert main(["simulate", "--config", str(bad), "--out", str(tmp_path)]) == EXIT_INPUT


# ---------------------------------------------------------------- exit codes


def test_classify_example_map(capsys):
    assert main(["classify", "--map", *EXAMPLE]) == EXIT_OK
    out = capsys.readouterr().out
    assert "class: PurelyLoxodromic" in out
    alpha = re.search(r"alpha: (\S+)", out).group(1)
    assert parse_complex(alpha) == pytest.approx(25 + 12j)
    assert re.search(r"\|k\|: 1\.5625", out)


def test_classify_identity_is_not_loxodromic(capsys):
    assert main(["classify", "--map", "1", "0", "0", "1"]) == EXIT_MAP
    assert "class: Identity" in capsys.readouterr().out


@pytest.mark.parametrize("coeffs, name", [
    (["0", "-1", "1", "0"], "Elliptic"),
    (["1", "1", "0", "1"], "Parabolic"),
])
def test_classify_non_loxodromic_exit_code(capsys, coeffs, name):
    assert main(["classify", "--map", *coeffs]) == EXIT_MAP
    assert f"class: {name}" in capsys.readouterr().out


def test_degenerate_map_is_input_error(capsys):
    assert main(["classify", "--map", "1", "2", "2", "4"]) == EXIT_INPUT
    assert "degenerate" in capsys.readouterr().err


@pytest.mark.parametrize("args", [
    ["verify", "--trials", "0"],
    ["simulate", "--steps", "-1"],
    ["simulate", "--epsilon", "-1e-3"],
    ["regions", "--t", "1"],
    ["simulate", "--map", "1", "2", "3"],
    ["frobnicate"],
])
def test_invalid_input_exit_1(tmp_path, args):
    assert run(tmp_path, *args) == EXIT_INPUT


def test_delta_too_large_is_input_error(tmp_path):
    assert run(tmp_path, "regions", "--delta0", "0.5") == EXIT_INPUT


def test_start_in_avoided_region(tmp_path, data, region):
    z0 = format_complex(data.beta)
    assert run(tmp_path, "simulate", "--z0", z0) == EXIT_START
    assert not (tmp_path / "orbit.csv").exists()
    inner = format_complex(region.central_component().center)
    assert run(tmp_path, "simulate", "--z0", inner, "--steps", "5") == EXIT_START
    assert run(tmp_path, "simulate", "--z0", inner, "--steps", "5", "--force") == EXIT_OK
    rep = json.loads((tmp_path / "simulate.json").read_text())
    assert rep["config"]["force"] is True


def test_forced_start_on_repeller_hits_nothing(tmp_path, data):
    """beta is a fixed point; with eps = 0 the forced orbit stays put."""
    z0 = format_complex(data.beta)
    assert run(tmp_path, "simulate", "--z0", z0, "--force", "--epsilon", "0", "--steps", "10") == EXIT_OK


def test_orbit_through_pole_exit_3(tmp_path, g):
    from loxostab.core import inverse

    z0 = format_complex(inverse(g)(g.pole))
    assert run(tmp_path, "simulate", "--z0", z0, "--epsilon", "0", "--steps", "5") == EXIT_START


def test_near_parabolic_map_gives_structured_failure(tmp_path):
    code = run(tmp_path, "verify", "--map", "1.0001", "1", "0.0001", "1", "--delta0", "1e-6",
               "--trials", "20", "--steps", "50")
    assert code == EXIT_SUITE
    rep = json.loads((tmp_path / "verify.json").read_text())
    assert rep["all_passed"] is False
    assert all("name" in s and "passed" in s for s in rep["suites"])
    failed = {s["name"] for s in rep["suites"] if not s["passed"]}
    assert "hyers_ulam" in failed


# ---------------------------------------------------------------- outputs


def test_simulate_csv_format(tmp_path):
    assert run(tmp_path, "simulate", "--steps", "30") == EXIT_OK
    raw = (tmp_path / "orbit.csv").read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert tuple(lines[0].split(",")) == CSV_COLUMNS
    assert len(lines) == 32
    rows = list(csv.DictReader(lines))
    for row in rows:
        for col in ("a_re", "a_im", "b_re", "b_im", "deviation", "bound"):
            digits = re.sub(r"[-.]|e.*$", "", row[col]).lstrip("0")
            assert len(digits) <= 17
        assert row["in_BR"] in ("0", "1") and row["in_avoided"] in ("0", "1")
        dev = abs(complex(float(row["a_re"]), float(row["a_im"]))
                  - complex(float(row["b_re"]), float(row["b_im"])))
        assert float(row["deviation"]) == pytest.approx(dev, rel=1e-15, abs=1e-300)
        assert float(row["deviation"]) <= float(row["bound"])
    assert rows[-1]["in_BR"] == "1"
    # full round-trip precision
    b1 = complex(float(rows[1]["b_re"]), float(rows[1]["b_im"]))
    assert b1 == complex(40.999999999999993, 92.592592592592581)


def test_simulate_zero_epsilon_has_zero_deviation(tmp_path):
    assert run(tmp_path, "simulate", "--epsilon", "0", "--steps", "40", "--z0", "3,-4") == EXIT_OK
    rows = list(csv.DictReader((tmp_path / "orbit.csv").read_text().splitlines()))
    assert all(float(r["deviation"]) == 0 for r in rows)
    assert rows[0]["a_re"] == "3" and rows[0]["a_im"] == "-4"


def test_simulate_json_summary(tmp_path):
    assert run(tmp_path, "simulate", "--trials", "25", "--steps", "60") == EXIT_OK
    rep = json.loads((tmp_path / "simulate.json").read_text())
    assert rep["bound_violations"] == 0
    assert rep["entered_avoided_region"] == 0
    assert len(rep["trial_seeds"]) == 25
    assert rep["constants"]["N"] == 18
    assert rep["constants"]["disks"] == 11
    assert rep["constants"]["K"] == pytest.approx(0.8413, abs=5e-5)
    assert "out" not in rep["config"]


def test_regions_json_matches_svg_and_library(tmp_path, data):
    assert run(tmp_path, "regions") == EXIT_OK
    rep = json.loads((tmp_path / "regions.json").read_text())
    svg = (tmp_path / "regions.svg").read_text()
    ids = [r["id"] for r in rep["records"]]
    assert len(ids) == len(set(ids))
    for rec_id in ids:
        assert f'id="{rec_id}"' in svg
    region = build_avoided_g(data, rep["delta0"], rep["t"])
    by_id = {r["id"]: r for r in rep["records"]}
    for n, geom in enumerate(region.disk_components(), start=1):
        rec = by_id[f"z_avoid_{n}"]
        assert complex(*rec["center"]) == geom.center
        assert rec["radius"] == geom.radius
    central = region.central_component().boundary()
    assert complex(*by_id["z_avoid_0"]["center"]) == central.center
    assert by_id["w_avoid_0"]["radius"] == pytest.approx(data.kmod * rep["delta"])
    assert rep["delta"] == pytest.approx(0.017778, abs=1e-6)


def test_regions_line_flag_at_sqrt_k(tmp_path, data):
    r = math.sqrt(data.kmod)
    assert run(tmp_path, "regions", "--r", repr(r), "1.0") == EXIT_OK
    rep = json.loads((tmp_path / "regions.json").read_text())
    recs = {x["id"]: x for x in rep["records"]}
    assert recs["w_hS_0"]["type"] == "line"
    assert recs["w_hS_1"]["type"] == "circle"
    p = complex(*recs["w_hS_0"]["point"])
    u = complex(*recs["w_hS_0"]["direction"])
    assert abs(u) == pytest.approx(1)
    svg = (tmp_path / "regions.svg").read_text()
    assert 'id="w_hS_0"' in svg and np.isfinite(p)


def test_escape_time_report(tmp_path):
    assert run(tmp_path, "escape-time", "--trials", "60") == EXIT_OK
    rep = json.loads((tmp_path / "escape_time.json").read_text())
    assert rep["N"] == 18 and rep["N_crude"] == 27
    assert 0 < rep["empirical_escape_time"] <= rep["N"]
    assert rep["never_escaped"] == 0


def test_verify_small(tmp_path, capsys):
    assert run(tmp_path, "verify", "--trials", "40", "--steps", "100") == EXIT_OK
    out = capsys.readouterr().out
    assert "FAIL" not in out
    rep = json.loads((tmp_path / "verify.json").read_text())
    assert rep["all_passed"] is True
    assert len(rep["suites"]) == 15


@pytest.mark.parametrize("args, files", [
    (["simulate", "--trials", "5", "--steps", "80"], ["orbit.csv", "orbit.svg", "simulate.json"]),
    (["regions"], ["regions.json", "regions.svg"]),
    (["verify", "--trials", "30", "--steps", "80"], ["verify.json"]),
    (["escape-time", "--trials", "30"], ["escape_time.json"]),
])
def test_outputs_byte_identical_across_runs(tmp_path, args, files):
    one, two = tmp_path / "one", tmp_path / "two"
    assert main(args + ["--out", str(one)]) == main(args + ["--out", str(two)])
    for name in files:
        assert (one / name).read_bytes() == (two / name).read_bytes(), name
