import csv
import io
import json
import math

import jsonschema
import pytest

from ptqm.cli import (
    EXIT_EP,
    EXIT_INVALID,
    EXIT_IO,
    EXIT_OK,
    SCHEMA_PATH,
    ScenarioConfig,
    evaluate,
    main,
    parse_range,
    run,
    to_csv,
)

SCHEMA = json.loads(SCHEMA_PATH.read_text())

# (argv, expected exit code); the invalid-config table documented in the README
INVALID_CASES = [
    (["metric", "--alpha", "0.5236", "--u", "0.9"], EXIT_INVALID),
    (["metric", "--alpha", "0", "--u", "-1.0"], EXIT_INVALID),
    (["metric", "--alpha", "0.3", "--a", "0"], EXIT_INVALID),
    (["signal", "--alpha-grid", "1:0:3"], EXIT_INVALID),
    (["signal", "--alpha-grid", "0:1:0"], EXIT_INVALID),
    (["signal", "--t-grid", "0:1"], EXIT_INVALID),
    (["metric", "--format", "xml"], EXIT_INVALID),
    (["signal", "--alpha", "0.1", "--alpha-deg", "5"], EXIT_INVALID),
    (["metric", "--alpha", "1.5707963267948966"], EXIT_EP),
    (["signal", "--alpha", "2.0", "--cpt"], EXIT_EP),
    (["family", "--alpha", "1.5707963267948966"], EXIT_EP),
    (["evolve", "--alpha-deg", "90", "--cpt"], EXIT_EP),
    (["bogus"], EXIT_INVALID),
    (["signal", "--s", "0"], EXIT_INVALID),
]


def run_json(argv, tmp_path, name="out.json"):
    out = tmp_path / name
    assert main([*argv, "--output", str(out)]) == EXIT_OK
    doc = json.loads(out.read_text())
    jsonschema.validate(doc, SCHEMA)
    return doc


def test_signal_hermitian_limit(tmp_path):
    doc = run_json(["signal", "--alpha", "0", "--u", "0", "--t", "1", "--mode", "both"], tmp_path)
    assert [r["mode"] for r in doc["rows"]] == ["corrected", "naive"]
    assert all(r["signaling"] <= 1e-12 for r in doc["rows"])


def test_metric_cpt_pi_over_3(tmp_path):
    doc = run_json(["metric", "--alpha", "1.0472", "--cpt"], tmp_path)
    (row,) = doc["rows"]
    theta = [[complex(z["re"], z["im"]) for z in r] for r in row["theta"]]
    assert theta[0][0].real == pytest.approx(2.0, abs=1e-4)
    assert theta[0][1].imag == pytest.approx(-1.7321, abs=1e-4)
    assert theta[1][0].imag == pytest.approx(1.7321, abs=1e-4)
    assert row["u"] == 0.0
    assert row["a"] ** 2 == pytest.approx(1 / math.cos(1.0472))
    assert "cpt" in doc["metadata"]["metric_fixing"]


def test_signal_naive_matches_module_oracle(tmp_path):
    doc = run_json(["signal", "--alpha", "0.7854", "--cpt", "--t", "1", "--mode", "naive"], tmp_path)
    (row,) = doc["rows"]
    assert row["mode"] == "naive"
    # oracle value at exactly pi/4 is 0.42009801670680025; 0.7854 is 7e-6 away
    assert row["signaling"] == pytest.approx(0.42009801670680025, abs=1e-5)
    assert row["signaling"] > 1e-3


@pytest.mark.parametrize(
    "argv",
    [
        ["metric", "--alpha-grid=-1:1:5", "--u", "0", "0.3"],
        ["family", "--alpha", "0.4", "1.1", "--u", "0.2"],
        ["evolve", "--alpha", "0.5236", "--cpt", "--t-grid", "0:5:6"],
        ["signal", "--alpha-grid", "0:1.2:4", "--u", "0", "--t", "0.1", "1", "10"],
        ["signal", "--alpha", "0.8", "--u", "0.2", "--action", "project"],
        ["ep-scan", "--approach", "6"],
    ],
)
def test_all_commands_validate_and_are_deterministic(argv, tmp_path):
    first = run_json(argv, tmp_path, "a.json")
    (tmp_path / "b.json").unlink(missing_ok=True)
    assert main([*argv, "--output", str(tmp_path / "b.json")]) == EXIT_OK
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    assert first["rows"]
    for fmt_run in ("c1.csv", "c2.csv"):
        assert main([*argv, "--format", "csv", "--output", str(tmp_path / fmt_run)]) == EXIT_OK
    assert (tmp_path / "c1.csv").read_bytes() == (tmp_path / "c2.csv").read_bytes()


def test_csv_layout(tmp_path):
    out = tmp_path / "m.csv"
    assert main(["metric", "--alpha", "0.5", "--u", "0.1", "--format", "csv", "-o", str(out)]) == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert len(rows) == 1
    assert {"theta_01_re", "theta_01_im", "residual"} <= set(rows[0])
    assert float(rows[0]["theta_01_im"]) == pytest.approx(-math.sin(0.5))
    # 17 significant digits, scientific
    assert rows[0]["alpha"] == "5.0000000000000000e-01"


def test_csv_header_present_when_empty():
    doc = {"columns": ["alpha", "u"], "rows": []}
    assert to_csv(doc) == "alpha,u\n"


def test_rows_sorted_by_grid(tmp_path):
    doc = run_json(["signal", "--alpha", "0.8", "-0.3", "0.0", "--u", "0", "--t", "10", "0.1"], tmp_path)
    keys = [(r["alpha"], r["t"], r["mode"]) for r in doc["rows"]]
    assert keys == sorted(keys)


def test_ep_scan_reaches_exceptional_point(tmp_path):
    doc = run_json(["ep-scan", "--approach", "6"], tmp_path)
    last = doc["rows"][-1]
    assert last["degenerate_spectrum"] is True
    assert last["metric_condition_number"] is None  # infinite
    assert last["eigenvector_overlap"] >= 1 - 1e-8
    assert doc["rows"][-2]["metric_condition_number"] > 1e6


def test_evolve_norms(tmp_path):
    doc = run_json(["evolve", "--alpha", "0.5235987755982988", "--cpt", "--t", "0.5", "1", "5"], tmp_path)
    for row in doc["rows"]:
        assert row["s_norm_drift"] <= 1e-10
        assert row["f_norm_drift"] > 1e-3


def test_family_map(tmp_path):
    doc = run_json(["family", "--alpha", "0.5235987755982988", "--u", "0.3", "--a", "1.2"], tmp_path)
    (row,) = doc["rows"]
    assert row["reconstruction_error"] <= 1e-12
    a2 = row["c_0"] * row["a2_per_c_0"] + row["c_1"] * row["a2_per_c_1"]
    a2u = row["c_0"] * row["a2u_per_c_0"] + row["c_1"] * row["a2u_per_c_1"]
    assert a2 == pytest.approx(1.44, rel=1e-12)
    assert a2u / a2 == pytest.approx(0.3, rel=1e-12)


@pytest.mark.parametrize("argv, code", INVALID_CASES)
def test_exit_codes(argv, code, tmp_path, capsys):
    assert main([*argv, "--output", str(tmp_path / "x.json")]) == code
    assert not (tmp_path / "x.json").exists()


def test_io_error_exit(tmp_path):
    assert main(["metric", "--output", str(tmp_path)]) == EXIT_IO
    assert main(["--config", str(tmp_path / "missing.cfg")]) == EXIT_IO


def test_config_file(tmp_path):
    cfg = tmp_path / "scenario.cfg"
    cfg.write_text(
        "# canned scenario\n"
        "command = signal\n"
        "alpha = 0.7854\n"
        "u = -0.1\n"
        "cpt = true\n"
        "t = 0.1 1 10\n"
        "mode = naive\n"
        "format = json\n"
    )
    out = tmp_path / "o.json"
    assert main(["--config", str(cfg), "--output", str(out)]) == EXIT_OK
    doc = json.loads(out.read_text())
    jsonschema.validate(doc, SCHEMA)
    assert [r["t"] for r in doc["rows"]] == [0.1, 1.0, 10.0]
    # flags on the command line override the file
    assert main(["--config", str(cfg), "--mode", "corrected", "--output", str(out)]) == EXIT_OK
    assert {r["mode"] for r in json.loads(out.read_text())["rows"]} == {"corrected"}


def test_bad_config_line(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("command = metric\nnot a pair\n")
    assert main(["--config", str(cfg)]) == EXIT_INVALID


def test_alpha_deg_conversion(tmp_path):
    a = run_json(["metric", "--alpha-deg", "30"], tmp_path, "deg.json")
    assert a["rows"][0]["alpha"] == pytest.approx(math.pi / 6, rel=1e-15)


def test_parse_range():
    assert parse_range("0:1:3") == [0.0, 0.5, 1.0]
    assert parse_range("0.25") == [0.25]


def test_run_config_object(tmp_path, capsys):
    cfg = ScenarioConfig(command="ep-scan", alphas=[0.0, 0.5], us=[0.0])
    assert run(cfg) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    jsonschema.validate(doc, SCHEMA)
    assert evaluate(cfg)["rows"][1]["eigenvector_overlap"] == pytest.approx(math.sin(0.5))
