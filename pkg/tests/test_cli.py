import json
import os
import tempfile

import numpy as np
import pytest

from bellmanlab import planar as pl
from bellmanlab.cli import main
from bellmanlab.reporting import CheckResult, RunReport


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_tau_value(capsys):
    code, out, _ = run_cli(capsys, "bellman", "tau", "--p", "2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    entry = payload["entries"][0]
    assert "tau=0.7071067811865" in entry["detail"]


def test_csv_output_shape(capsys):
    code, out, _ = run_cli(capsys, "laminate", "sweep", "--p", "3",
                           "--etas", "1e-1,1e-2,1e-3")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("check_id,")
    assert len(lines) == 5   # header + one row per eta + monotone row


def test_sweep_limit_checked_at_small_eta(capsys):
    code, out, _ = run_cli(capsys, "laminate", "sweep", "--p", "3",
                           "--etas", "1e-2,1e-4")
    assert code == 0
    assert "limit check at eta=0.0001" in out


def test_unknown_subcommand_usage_error():
    assert main(["bellman", "nonsense"]) == 2


def test_bad_weight_spec_usage_error(capsys):
    code, _, err = run_cli(capsys, "dyadic", "buckley", "--weight", "wavelet:3")
    assert code == 2
    assert "unknown weight spec" in err


def test_dyadic_mt_ratio(capsys):
    code, out, _ = run_cli(capsys, "dyadic", "mt-ratio", "--weight",
                           "twovalue:2,1", "--depth", "6", "--trials", "25",
                           "--seed", "3")
    assert code == 0
    assert "dyadic.weighted-mt-envelope" in out


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "qc", "distortion", "--K", "3",
                           "--format", "json", "--output", str(target))
    assert code == 0 and out == ""
    payload = json.loads(target.read_text())
    assert payload["entries"][0]["passed"] is True


def test_config_file_defaults(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# distortion study\nK = 3\nformat = json\n")
    code, out, _ = run_cli(capsys, "qc", "distortion", "--config", str(cfg))
    assert code == 0
    assert "slope=0.3333333333333" in json.loads(out)["entries"][0]["detail"]


def test_config_unknown_field(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("banana = 3\n")
    code, _, err = run_cli(capsys, "qc", "distortion", "--config", str(cfg))
    assert code == 2
    assert "unknown field" in err


def test_ascent_witness_roundtrip(tmp_path, capsys):
    target = tmp_path / "witness.blf"
    code, out, _ = run_cli(capsys, "planar", "norm-ascent", "--op", "r11-r22",
                           "--p", "4", "--n", "32", "--iters", "30",
                           "--witness", str(target))
    assert code == 0
    field = pl.read_field(target)
    assert field.n == 32


def test_report_canonical_json_excludes_timing():
    rep = RunReport(config={"b": 1, "a": 2})
    rep.add(CheckResult("bellman.tau-quadrature", 0.0, 0.0, 1e-10, "match"))
    rep.wall_time = 123.0
    other = RunReport(config={"a": 2, "b": 1})
    other.add(CheckResult("bellman.tau-quadrature", 0.0, 0.0, 1e-10, "match"))
    other.wall_time = 4.0
    assert rep.canonical_json() == other.canonical_json()


def test_report_pass_fail_logic():
    good = CheckResult("bellman.tau-quadrature", 1e-12, 0.0, 1e-10, "match")
    bad = CheckResult("bellman.tau-quadrature", 1e-2, 0.0, 1e-10, "match")
    info = CheckResult("laminate.ratio-limit", 99.0, None, None, "report")
    assert good.passed and not bad.passed and info.passed


def test_unregistered_check_id_rejected():
    with pytest.raises(KeyError):
        CheckResult("nonexistent.check", 0.0)
