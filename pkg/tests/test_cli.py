import csv
import io
import json
import math
import subprocess
import sys

import pytest

from bohrlab.cli import CSV_HEADER, DEFAULT_TOL, build_report, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


# -- radius -----------------------------------------------------------------------


def test_radius_thm_f(capsys):
    code, out, _ = run(capsys, "radius", "--theorem", "ThmF")
    assert code == 0
    value = float(out.split("radius = ")[1].split()[0])
    assert value == pytest.approx(0.24683, abs=5e-6) and "sturm_count_one" in out


def test_radius_thm_d_json_schema(capsys):
    code, out, _ = run(capsys, "radius", "--theorem", "ThmD", "--K", "1", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert {"theorem", "params", "poly", "interval", "estimate", "certificate", "residual"} <= set(d)
    assert d["estimate"] == pytest.approx(1 / 3, abs=1e-8)
    assert all(isinstance(c, str) for c in d["poly"])


def test_radius_t52_csv(capsys):
    code, out, _ = run(capsys, "radius", "--theorem", "T52", "--K", "1", "--alpha", "1", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == ",".join(CSV_HEADER)
    (row,) = rows(out)
    assert float(row["radius"]) == pytest.approx(0.2, abs=1e-8)
    assert row["cert"] == "monotone_sign_change"


def test_radius_usage_errors(capsys):
    assert run(capsys, "radius", "--theorem", "Foo")[0] == 1
    assert run(capsys, "radius", "--theorem", "ThmD", "--K", "0.5")[0] == 1
    assert run(capsys, "radius", "--theorem", "T51", "--alpha", "3")[0] == 1
    assert run(capsys, "radius")[0] == 1
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "radius", "--theorem", "ThmF", "--format", "svg")[0] == 1
    assert run(capsys, "radius", "--theorem", "ThmF", "--tol", "-1")[0] == 1


def test_radius_thm_h_verbatim_refused(capsys):
    code, _, err = run(capsys, "radius", "--theorem", "ThmH", "--alpha", "1", "--verbatim")
    assert code == 1 and "quotient" in err
    code, out, _ = run(capsys, "radius", "--theorem", "ThmH", "--alpha", "1")
    assert code == 0 and "0.333333333333333" in out


def test_radius_catalog_inconsistency_exit(capsys):
    code, _, err = run(capsys, "radius", "--theorem", "T32", "--variant", "printed")
    assert code == 3 and "inconsistency" in err


def test_env_tolerance(capsys, monkeypatch):
    monkeypatch.setenv("BOHRLAB_TOL", "1e-4")
    _, out, _ = run(capsys, "radius", "--theorem", "ThmF", "--format", "json")
    d = json.loads(out)
    from fractions import Fraction

    assert float(Fraction(d["interval"][1]) - Fraction(d["interval"][0])) <= 1e-4
    assert d["tol"] == 1e-4
    _, out, _ = run(capsys, "radius", "--theorem", "ThmF", "--format", "json", "--tol", "1e-10")
    assert json.loads(out)["tol"] == 1e-10
    monkeypatch.setenv("BOHRLAB_TOL", "abc")
    assert run(capsys, "radius", "--theorem", "ThmF")[0] == 1


def test_default_cli_tolerance(capsys, monkeypatch):
    monkeypatch.delenv("BOHRLAB_TOL", raising=False)
    _, out, _ = run(capsys, "radius", "--theorem", "ThmF", "--format", "json")
    assert json.loads(out)["tol"] == DEFAULT_TOL == 1e-8


def test_out_path(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "radius", "--theorem", "ThmG", "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["estimate"] == pytest.approx(0.128445, abs=5e-7)


# -- sweep ------------------------------------------------------------------------


def test_sweep_thm_d(capsys):
    code, out, _ = run(capsys, "sweep", "--theorem", "ThmD", "--K-grid", "1,2,5,10", "--format", "csv")
    assert code == 0
    got = [float(r["radius"]) for r in rows(out)]
    for g, e in zip(got, [1 / 3, 3 / 11, 6 / 26, 11 / 51]):
        assert g == pytest.approx(e, abs=1e-8)


def test_sweep_t51_alpha(capsys):
    code, out, _ = run(capsys, "sweep", "--theorem", "T51", "--K-grid", "1", "--alpha-grid", "1,2", "--format", "csv")
    assert code == 0
    got = [float(r["radius"]) for r in rows(out)]
    assert got[0] == pytest.approx(1 / 3, abs=1e-8)
    # t = (2)^(1/alpha) at K=1 gives 3-2*sqrt(2) for alpha=2
    assert got[1] == pytest.approx(3 - 2 * math.sqrt(2), abs=1e-8)


def test_sweep_empty_grid_is_usage_error(capsys):
    assert run(capsys, "sweep", "--theorem", "ThmD", "--K-grid", "0.5,0.7")[0] == 1
    assert run(capsys, "sweep", "--theorem", "ThmD", "--K-grid", ",")[0] == 1
    assert run(capsys, "sweep", "--theorem", "ThmD", "--K-grid", "a,b")[0] == 1


def test_sweep_marks_failing_rows(capsys):
    code, out, _ = run(capsys, "sweep", "--theorem", "ThmD", "--K-grid", "1,0.5", "--format", "csv")
    assert code == 2
    r = rows(out)
    assert r[0]["cert"] == "sturm_count_one" and r[1]["cert"].startswith("error:")


def test_sweep_svg(capsys, tmp_path):
    target = tmp_path / "plot.svg"
    code, _, _ = run(capsys, "sweep", "--theorem", "ThmD", "--format", "svg", "--out", str(target))
    text = target.read_text()
    assert code == 0 and text.startswith("<svg") and "<polyline" in text and "radius vs K" in text


def test_sweep_parallel_identical(capsys):
    base = ["sweep", "--theorem", "T41", "--K-grid", "1,2", "--mu-grid", "0,1", "--format", "csv"]
    _, serial, _ = run(capsys, *base)
    _, parallel, _ = run(capsys, *base, "--jobs", "2")
    assert serial == parallel


# -- certify ------------------------------------------------------------------------


def test_certify(capsys):
    code, out, _ = run(capsys, "certify")
    assert code == 0
    assert [line.split()[:2] for line in out.splitlines()] == [[f"F{i}", "PASS"] for i in range(1, 5)]


def test_certify_json_and_grid(capsys):
    code, out, _ = run(capsys, "certify", "--format", "json", "--k-grid", "0.5")
    d = json.loads(out)
    assert code == 0 and d[0]["details"]["grid_points"] == 1
    assert run(capsys, "certify", "--k-grid", "1.5")[0] == 1


# -- sharpness / falsify ------------------------------------------------------------


def test_sharpness_t42(capsys):
    code, out, _ = run(capsys, "sharpness", "--theorem", "T42", "--K", "1", "--mu", "1", "--format", "json")
    d = json.loads(out)
    assert code == 0
    assert d["r0"] == pytest.approx((-2 + math.sqrt(7)) / 3, abs=1e-8)
    assert d["transition"] is True


def test_sharpness_thm_h(capsys):
    code, out, _ = run(capsys, "sharpness", "--theorem", "ThmH", "--alpha", "1", "--format", "csv")
    (row,) = rows(out)
    assert code == 0 and float(row["r0"]) == pytest.approx(1 / 3, abs=1e-8) and row["transition"] == "true"


def test_sharpness_phase_sweep(capsys):
    code, out, _ = run(capsys, "sharpness", "--theorem", "T44", "--K", "2", "--phase-sweep", "3", "--format", "json")
    assert code == 0 and len(json.loads(out)) == 3


def test_sharpness_not_available(capsys):
    assert run(capsys, "sharpness", "--theorem", "ThmA")[0] == 1


def test_falsify_thm_d(capsys):
    code, out, _ = run(capsys, "falsify", "--theorem", "ThmD", "--trials", "50")
    assert code == 0 and "fails=0" in out and "inconclusive=0" in out


def test_falsify_finding_exit(capsys, monkeypatch):
    import bohrlab.cli as cli

    class Fake:
        theorem, params, trials, r, r_fraction, seed, M = "ThmD", {}, 1, 0.3, 0.99, 42, 200
        counts = {"holds": 0, "fails": 1, "inconclusive": 0}
        findings = [object()]

    monkeypatch.setattr(cli, "falsify", lambda *a, **k: Fake())
    assert run(capsys, "falsify", "--theorem", "ThmD", "--trials", "1")[0] == 3


def test_falsify_byte_identical(capsys, tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        run(capsys, "falsify", "--theorem", "T51", "--alpha", "1.5", "--trials", "30", "--format", "csv",
            "--out", str(p))
    assert paths[0].read_bytes() == paths[1].read_bytes()


# -- report -------------------------------------------------------------------------


def test_report(capsys):
    code, out, _ = run(capsys, "report", "--format", "json")
    d = json.loads(out)
    assert code == 0
    assert all("error" not in r for r in d["radii"])
    assert [cc["K"] for cc in d["t32_cross_check"]] == [1, 3]


def test_report_deterministic():
    assert json.dumps(build_report(1e-8), sort_keys=True) == json.dumps(build_report(1e-8), sort_keys=True)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "bohrlab", "radius", "--theorem", "ThmD", "--K", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "0.272727272727273" in res.stdout
