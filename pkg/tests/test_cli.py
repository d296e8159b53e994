import json
import os
import subprocess
import sys

import pytest

from degenqg import cli
from degenqg.rewrite import Letter, NCPoly, Presentation, check_zero
from degenqg.scalars import QQ, Q_INV
from degenqg.uqglmn import build_algebra


def _run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _strip_millis(report):
    for r in report["records"]:
        r.pop("millis")
    return report


@pytest.fixture(autouse=True)
def _fresh_handles(monkeypatch):
    # the handle memo is per process; isolate tests that exercise the cache
    monkeypatch.setattr(cli, "_HANDLES", {})
    for key in list(os.environ):
        if key.startswith(cli.ENV_PREFIX):
            monkeypatch.delenv(key)


def test_verify_all_gl11_exit_zero(capsys):
    code, out, _ = _run(capsys, "verify", "all", "--m", "1", "--n", "1")
    assert code == cli.EXIT_OK
    last = out.strip().splitlines()[-1]
    assert "0 failed, 0 undecided" in last


@pytest.mark.parametrize("argv", [
    ["verify", "all", "--m", "0", "--n", "2"],
    ["verify", "all", "--m", "3", "--n", "3"],
    ["verify", "hopf", "--m", "1"],
    ["verify", "hopf", "--m", "1", "--n", "1", "--parallelism", "0"],
    ["verify", "hopf", "--m", "1", "--n", "1", "--degree-bound", "2"],
    ["verify", "nonsense", "--m", "1", "--n", "1"],
    ["export", "Q7", "--m", "1", "--n", "1"],
    ["export", "e5", "--m", "1", "--n", "1"],
    ["casimir", "--m", "1", "--n", "1", "--k", "0"],
])
def test_config_errors_exit_three(capsys, argv):
    code = None
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    capsys.readouterr()
    assert code == cli.EXIT_CONFIG


def test_env_override_and_flag_precedence(capsys, monkeypatch):
    monkeypatch.setenv("DEGENQG_M", "1")
    monkeypatch.setenv("DEGENQG_N", "1")
    monkeypatch.setenv("DEGENQG_FORMAT", "json")
    code, out, _ = _run(capsys, "verify", "hecke")
    assert code == 0
    rep = json.loads(out)
    assert rep["config"]["m"] == 1 and rep["config"]["n"] == 1
    code, out, _ = _run(capsys, "verify", "hecke", "--n", "2")
    rep = json.loads(out)
    assert rep["config"]["n"] == 2


def test_bad_env_value_is_config_error(capsys, monkeypatch):
    monkeypatch.setenv("DEGENQG_PARALLELISM", "many")
    code = None
    try:
        code = cli.main(["verify", "hecke", "--m", "1", "--n", "1"])
    except SystemExit as exc:
        code = exc.code
    capsys.readouterr()
    assert code == cli.EXIT_CONFIG


def test_json_report_schema(capsys):
    code, out, _ = _run(capsys, "verify", "closed-form", "--m", "1", "--n", "1", "--format", "json")
    rep = json.loads(out)
    assert rep["schema"] == "report_v1"
    assert rep["engine_version"] == cli.__version__
    assert set(rep["summary"]) == {"Verified", "Failed", "Undecided", "total"}
    assert rep["summary"]["total"] == len(rep["records"])
    assert sum(rep["summary"][k] for k in ("Verified", "Failed", "Undecided")) == len(rep["records"])
    rec = rep["records"][0]
    assert {"suite", "name", "indices", "status", "millis"} <= set(rec)
    assert rec["detail"]["diagonal_convention"] == "derived"
    assert rec["detail"]["conventions"] == {"derived": "Verified", "X": "Failed", "unit": "Failed"}
    assert rep["config"]["degree_bound"] == 10


def test_commutation_records_carry_indices(capsys):
    code, out, _ = _run(capsys, "verify", "commutation", "--m", "2", "--n", "1", "--format", "json")
    rep = json.loads(out)
    assert code == 0
    assert all(r["indices"] for r in rep["records"])


def test_determinism_modulo_millis(capsys):
    _, a, _ = _run(capsys, "verify", "centrality", "--m", "1", "--n", "1", "--format", "json")
    cli._HANDLES.clear()
    _, b, _ = _run(capsys, "verify", "centrality", "--m", "1", "--n", "1", "--format", "json")
    assert _strip_millis(json.loads(a)) == _strip_millis(json.loads(b))


def test_parallel_matches_serial():
    cfg = cli.RunConfig(1, 1, suites=["hopf", "linverse", "hecke", "centrality"])
    serial, c1 = cli.run(cfg)
    cfg.parallelism = 2
    par, c2 = cli.run(cfg)
    assert c1 == c2 == 0
    assert _strip_millis(serial)["records"] == _strip_millis(par)["records"]


def test_cache_written_reused_and_rebuilt(tmp_path, capsys):
    args = ["verify", "linverse", "--m", "1", "--n", "1", "--cache-dir", str(tmp_path), "--format", "json"]
    code, cold, _ = _run(capsys, *args)
    assert code == 0
    files = list(tmp_path.glob("uqglmn_m1_n1_d10_*.json"))
    assert len(files) == 1
    assert not list(tmp_path.glob("*.tmp"))
    text = files[0].read_text()
    assert Presentation.loads(text).completion_degree == 10

    cli._HANDLES.clear()
    _, warm, _ = _run(capsys, *args)
    assert _strip_millis(json.loads(cold)) == _strip_millis(json.loads(warm))

    # corrupt the body: checksum mismatch triggers a rebuild and a rewrite
    files[0].write_text(text.replace("Kplus", "Kplux", 1))
    cli._HANDLES.clear()
    code, rebuilt, _ = _run(capsys, *args)
    assert code == 0
    assert _strip_millis(json.loads(rebuilt)) == _strip_millis(json.loads(cold))
    assert files[0].read_text() == text


def test_cache_path_depends_on_degree(tmp_path):
    a = cli.cache_path(tmp_path, 1, 1, 10)
    b = cli.cache_path(tmp_path, 1, 1, 12)
    assert a != b and a.parent == tmp_path


def test_exit_code_mapping():
    def rep(v, f, u):
        return {"summary": {"Verified": v, "Failed": f, "Undecided": u, "total": v + f + u}}
    assert cli.exit_code(rep(3, 0, 0)) == 0
    assert cli.exit_code(rep(3, 1, 0)) == 1
    assert cli.exit_code(rep(3, 1, 2)) == 1
    assert cli.exit_code(rep(3, 0, 2)) == 2


def test_undecided_verdict_maps_to_exit_two(capsys, monkeypatch):
    # x y - y x = 0 in a presentation certified only to degree 1 cannot be decided
    x, y = NCPoly.word((0,)), NCPoly.word((1,))
    P = Presentation([Letter("E", (1,)), Letter("E", (2,))]).complete(1)

    def stub(cfg, U):
        return cli._records("stub", [("comm[1,2]", check_zero(x * y - y * x, P))], P, 0.0, cfg.format)

    monkeypatch.setitem(cli.SUITES, "hecke", stub)
    code, out, _ = _run(capsys, "verify", "hecke", "--m", "1", "--n", "1", "--format", "json")
    rep = json.loads(out)
    assert code == cli.EXIT_UNDECIDED
    (rec,) = rep["records"]
    assert rec["status"] == "Undecided" and rec["needed_degree"] == 2 and rec["indices"] == [1, 2]
    assert "witness" in rec


def test_casimir_example_element(capsys):
    code, out, _ = _run(capsys, "casimir", "--m", "1", "--n", "1", "--k", "1",
                        "--variant", "gammaV", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    U = build_algebra(1, 1)
    got = U.pres.poly_from_json(obj["element"])
    target = U.K(1, 2).scale(Q_INV) - U.K(2, 2).scale(Q_INV) \
        - U.mul(U.K(1), U.K(2), U.f(1), U.e(1)).scale(QQ * QQ)
    assert U.reduce(got - target).is_zero()
    code, out, _ = _run(capsys, "casimir", "--m", "1", "--n", "1", "--k", "1",
                        "--variant", "gammaV", "--format", "latex")
    assert "f_{1} K_{1} K_{2} e_{1}" in out


def test_casimir_closed_form_flag(capsys):
    code, out, _ = _run(capsys, "casimir", "--m", "1", "--n", "1", "--closed-form", "--format", "json")
    obj = json.loads(out)
    assert obj["diagonal_convention"] == "derived" and obj["closed_form"] is True


@pytest.mark.parametrize("name", ["e1", "f1", "K2", "Kinv2", "E_12", "Ebar_21", "C1", "CV2",
                                  "Cas", "K2rho", "R", "RminusT", "Lplus", "Lminus", "LminusInv"])
def test_export_elements(capsys, name):
    code, out, _ = _run(capsys, "export", name, "--m", "1", "--n", "1", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["m"] == 1 and obj["n"] == 1
    assert set(obj) & {"element", "matrix", "umatrix"}


def test_export_text_matrix(capsys):
    code, out, _ = _run(capsys, "export", "R", "--m", "1", "--n", "1")
    assert out.splitlines()[0].split() == ["q", "0", "0", "0"]


def test_rll_commands(capsys):
    code, out, _ = _run(capsys, "rll", "generate", "--m", "1", "--n", "1")
    assert code == 0 and "RLL++" in out and out.strip().endswith("= 0")
    code, out, _ = _run(capsys, "rll", "compare", "--m", "1", "--n", "1")
    assert code == 0 and "verbatim[mixed]" in out


def test_ybe_llr_only_skips_direct(capsys):
    code, out, _ = _run(capsys, "verify", "ybe", "--m", "1", "--n", "1", "--llr", "--format", "json")
    rep = json.loads(out)
    assert code == 0
    assert not any(r["name"].startswith("spectral") for r in rep["records"])
    code, out, _ = _run(capsys, "verify", "ybe", "--m", "1", "--n", "1", "--format", "json")
    rep = json.loads(out)
    census = [r for r in rep["records"] if r["name"] == "spectral_census"]
    assert census and census[0]["status"] == "Verified"


def test_engine_suite_catches_all_mutations(capsys):
    code, out, _ = _run(capsys, "verify", "engine", "--m", "1", "--n", "1", "--format", "json")
    rep = json.loads(out)
    muts = [r for r in rep["records"] if r["name"].startswith("mutation[")]
    assert code == 0 and len(muts) == 10
    assert all(r["detail"]["mutant_status"] == "Failed" for r in muts)


def test_console_entry_point_runs():
    env = dict(os.environ)
    env["PYTHONPATH"] = os.pathsep.join(p for p in sys.path if p)
    res = subprocess.run([sys.executable, "-m", "degenqg.cli", "verify", "hecke", "--m", "1", "--n", "1"],
                         capture_output=True, text=True, env=env)
    assert res.returncode == 0
    assert res.stdout.strip().endswith("(1 checks)")
