import json

import numpy as np
import pytest

from schroedsym.cli import main
from schroedsym.errors import ConfigError
from schroedsym.suites import RunConfig, run_suite, suite_names


def test_suite_names_cover_all_modules():
    assert set(suite_names()) == {
        "group", "coords", "multiplier", "solutions", "residual", "liealg"}


def test_run_suite_unknown_target():
    with pytest.raises(ConfigError):
        run_suite("nonsense", RunConfig())


def test_runconfig_validation():
    with pytest.raises(ConfigError):
        RunConfig(tol=-1.0)
    with pytest.raises(ConfigError):
        RunConfig(trials=0)
    with pytest.raises(ConfigError):
        RunConfig(k=0.0)


def test_empty_report_is_empty_and_passes():
    from schroedsym.suites import SuiteReport

    rep = SuiteReport([])
    assert rep.all_passed
    assert rep.to_text() == ""
    assert json.loads(rep.to_json()) == []


def test_family_filter_restricts_checks():
    full = run_suite("multiplier", RunConfig(seed=1, trials=2))
    only_nls = run_suite("multiplier", RunConfig(seed=1, trials=2, family="nls2d"))
    assert 0 < len(only_nls.results) < len(full.results)
    assert any(r.name == "multiplier.nls_modulus" for r in only_nls.results)
    assert not any("cocycle_linear" in r.name for r in only_nls.results)


def test_cli_verify_group_passes(capsys):
    rc = main(["verify", "group", "--seed", "7"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "checks passed" in out
    assert "FAIL" not in out


def test_cli_exit_code_2_on_bad_config(capsys):
    assert main(["verify", "group", "--tol", "-3"]) == 2


def test_cli_config_file_flags_win(tmp_path, capsys):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text("seed = 9\ntol = 1e-1\n# comment line\n")
    rc = main(["verify", "group", "--config", str(cfgfile), "--seed", "3"])
    assert rc == 0
    bad = tmp_path / "bad.cfg"
    bad.write_text("nonsense 1\n")
    assert main(["verify", "group", "--config", str(bad)]) == 2
    unknown = tmp_path / "unknown.cfg"
    unknown.write_text("who = 1\n")
    assert main(["verify", "group", "--config", str(unknown)]) == 2


def test_json_report_shape_and_determinism(tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "group", "--seed", "5", "--format", "json", "--out", str(p1)]) == 0
    assert main(["verify", "group", "--seed", "5", "--format", "json", "--out", str(p2)]) == 0
    rows1 = json.loads(p1.read_text())
    rows2 = json.loads(p2.read_text())
    for rows in (rows1, rows2):
        for row in rows:
            assert set(row) == {"name", "anchor", "pass", "value", "tol", "seconds"}
            row.pop("seconds")
    assert json.dumps(rows1, sort_keys=True) == json.dumps(rows2, sort_keys=True)
    # round-trips through the parser
    assert json.loads(json.dumps(rows1)) == rows1


def test_verify_all_at_uniform_tolerance_passes():
    # structurally coarse checks keep their own scales, identities tighten
    assert main(["verify", "all", "--tol", "1e-9", "--trials", "3",
                 "--seed", "2", "--format", "json", "--out", "/dev/null"]) == 0


def test_failing_check_flips_exit_code(tmp_path, monkeypatch):
    # an absurd tolerance forces failures without touching the library
    rc = main(["verify", "group", "--tol", "1e-300", "--format", "json",
               "--out", str(tmp_path / "f.json")])
    assert rc == 1
    rows = json.loads((tmp_path / "f.json").read_text())
    assert any(not r["pass"] for r in rows)


def test_demo_transform_identity_reproduces_solution(tmp_path):
    out = tmp_path / "demo.tsv"
    rc = main(["demo-transform", "--identity", "--solution", "f1",
               "--seed", "3", "--out", str(out)])
    assert rc == 0
    rows = [line.split("\t") for line in out.read_text().strip().split("\n")]
    assert rows[0] == ["t", "x", "re_psi", "im_psi", "residual_abs"]
    from schroedsym.coords import FamilySpec
    from schroedsym.solutions import f_pair

    f1 = f_pair(FamilySpec.linear(0.7, 0.3, 0.9))[0]
    for t, x, re, im, res in rows[1:5]:
        want = f1.value(float(t), float(x))
        assert abs(complex(float(re), float(im)) - want) < 1e-12


def test_demo_transform_residual_column_small(tmp_path):
    out = tmp_path / "demo2.tsv"
    assert main(["demo-transform", "--solution", "f1", "--seed", "4",
                 "--out", str(out)]) == 0
    rows = [line.split("\t") for line in out.read_text().strip().split("\n")[1:]]
    assert max(float(r[4]) for r in rows) < 1e-9


def test_demo_transform_theta_modular_ratio(tmp_path):
    out = tmp_path / "theta.tsv"
    # the standard inversion element in integer entries
    assert main(["demo-transform", "--solution", "theta",
                 "--element", "0,-1,1,0", "--seed", "1", "--out", str(out)]) == 2
    assert main(["demo-transform", "--solution", "theta",
                 "--element", "0,-1,1,0,0,0", "--seed", "1", "--out", str(out)]) == 0
    rows = [line.split("\t") for line in out.read_text().strip().split("\n")[1:]]
    from schroedsym.solutions import theta1

    th = theta1(24)
    ratios = []
    for row in rows[:20]:
        t = complex(row[0])
        x = float(row[1])
        psi = complex(float(row[2]), float(row[3]))
        ratios.append(psi / th.value(t, x))
    eps = ratios[0]
    assert abs(eps ** 8 - 1.0) < 1e-8
    assert max(abs(r - eps) for r in ratios) < 1e-8
