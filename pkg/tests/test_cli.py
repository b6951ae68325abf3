import csv
import json

import pytest

from orbitduality.cli import cache_dir, cache_key, export, main
from orbitduality.errors import IoError, UnknownSuite
from orbitduality.verify import run_verify


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dual_and_orbit(capsys):
    code, out, _ = run(capsys, "dual", "2,2", "--type", "C")
    assert code == 0 and "3,1,1" in out
    code, out, _ = run(capsys, "--json", "orbit", "3,1,1", "--type", "B")
    assert code == 0
    rec = json.loads(out)
    assert rec["special"] and rec["c"] == 1


def test_global_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "orbit", "3,1,1", "--type", "B", "--json")
    assert code == 0 and json.loads(out)["partition"]


def test_richardson_local_isotropic_weil(capsys):
    assert run(capsys, "richardson", "--n", "3")[0] == 0
    assert run(capsys, "local", "sample", "--partition", "3,1,1", "--type", "B",
               "--prime", "101", "--seed", "7")[0] == 0
    code, out, _ = run(capsys, "--json", "isotropic", "--partition", "3,1,1")
    assert code == 0
    code, out, _ = run(capsys, "weil", "--n", "2", "--g", "2", "--orbit", "2,2", "--levi", "1:2", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["verdicts"]["dual"] and rec["N"] == 5


def test_usage_errors(capsys):
    assert run(capsys, "verify", "nonsense", "--no-cache")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "dual", "3,1", "--type", "C")[0] == 2
    assert run(capsys, "export", "orbits", "--out", "x.csv")[0] == 2


def test_unknown_suite_raises():
    with pytest.raises(UnknownSuite):
        run_verify("nonsense")


def test_smoke_run_all():
    rep = run_verify("all", 1, [2], 101, 7)
    assert rep.ok and rep.failed == 0
    assert {p.suite for p in rep.parts} >= {"duality", "eta", "dims", "weil", "local"}


def test_reports_are_deterministic():
    a = run_verify("groups", 3).to_json()
    b = run_verify("groups", 3).to_json()
    assert a == b


def test_cache_dir_precedence(tmp_path, monkeypatch):
    monkeypatch.setenv("ORBITDUALITY_CACHE", str(tmp_path / "env"))
    assert cache_dir(None) == tmp_path / "env"
    assert cache_dir(str(tmp_path / "flag")) == tmp_path / "flag"
    monkeypatch.delenv("ORBITDUALITY_CACHE")
    assert cache_dir(None).name == "orbitduality"
    assert cache_key("dims", {"seed": 1}) != cache_key("dims", {"seed": 2})


def test_cache_hit_is_byte_identical(capsys, tmp_path):
    argv = ["--json", "--cache-dir", str(tmp_path), "verify", "isotropic", "--max-n", "2", "--seed", "3"]
    code1, first, _ = run(capsys, *argv)
    files = list(tmp_path.glob("isotropic-*.json"))
    assert code1 == 0 and len(files) == 1
    code2, second, _ = run(capsys, *argv)
    assert code2 == 0 and first == second == files[0].read_text(encoding="utf-8")
    _, text, _ = run(capsys, "--cache-dir", str(tmp_path), "verify", "isotropic", "--max-n", "2", "--seed", "3")
    assert "(cached)" in text


def test_orbit_csv_header(tmp_path, capsys):
    out = tmp_path / "orbits.csv"
    assert run(capsys, "export", "orbits", "--type", "C", "--n", "3", "--format", "csv", "--out", str(out))[0] == 0
    raw = out.read_bytes()
    assert raw.startswith(b"partition,special,dual,c,beta,eta,")
    assert raw.endswith(b"\n") and b"\r" not in raw
    rows = list(csv.DictReader(raw.decode("utf-8").splitlines()))
    assert {r["partition"] for r in rows} >= {"6", "2 2 2", "1 1 1 1 1 1"}


def test_weil_json_round_trip(tmp_path):
    path = export("weil", "json", tmp_path / "w.json", 2, g=2)
    recs = json.loads(path.read_text(encoding="utf-8"))
    assert len(recs) == 3
    for rec in recs:
        assert {"levi", "d_C", "d_B", "N", "V_B", "V_C", "verdicts"} <= set(rec)
        assert rec["verdicts"]["dual"] and rec["verdicts"]["component_count"] == 2
        assert json.loads(json.dumps(rec)) == rec


def test_polarization_export(tmp_path):
    path = export("polarizations", "csv", tmp_path / "p.csv", 2)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("levi,type,ord,orbit")
    assert len(lines) == 4


def test_export_io_error(tmp_path, capsys):
    bad = tmp_path / "missing" / "x.json"
    with pytest.raises(IoError):
        export("orbits", "json", bad, 2)
    assert run(capsys, "export", "orbits", "--n", "2", "--out", str(bad))[0] == 1
