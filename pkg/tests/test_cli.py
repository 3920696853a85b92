import json
from fractions import Fraction

import pytest

from octoverify.cli import ALL_SUITES, RunConfig, build_parser, main, run, sweep_theta
from octoverify.report import Report

SMALL = ("algebra", "clifford")


def small_cfg(**kw):
    base = dict(alpha_t=Fraction(0), suites=SMALL, trials=60, seed=3)
    base.update(kw)
    return RunConfig(**base)


def test_run_passes_small():
    report, code = run(small_cfg())
    assert code == 0 and report["pass"]
    assert report["schema_version"] == "1"
    assert {s["name"] for s in report["suites"]} == set(SMALL)


def test_run_deterministic_modulo_timing():
    r1, _ = run(small_cfg())
    r2, _ = run(small_cfg())
    r1.pop("timing")
    r2.pop("timing")
    assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)


def test_config_errors_exit_2():
    bad = RunConfig(algebra="fancy")
    report, code = run(bad)
    assert code == 2 and "error" in report
    with pytest.raises(ValueError):
        RunConfig(suites=("nope",)).validate()
    with pytest.raises(ValueError):
        RunConfig(mode="float", theta=None, alpha_t=None).validate()
    with pytest.raises(ValueError):
        RunConfig(mode="exact", alpha_t=None).validate()
    assert main(["--alpha-t", "1/2", "--suites", "nonsense"]) == 2


def test_suite_failure_exit_1(monkeypatch):
    import octoverify.cli as cli

    def failing_suite(cfg, rng):
        rep = Report("algebra")
        rep.add("deliberately_failing_identity", False)
        return rep

    monkeypatch.setitem(cli.SUITE_FUNCS, "algebra", failing_suite)
    report, code = run(small_cfg(suites=("algebra",)))
    assert code == 1 and not report["pass"]
    failing = [c["name"] for s in report["suites"] for c in s["checks"] if not c["pass"]]
    assert failing == ["deliberately_failing_identity"]


def test_sweep_theta():
    cfg = small_cfg(suites=("classify",))
    reports, code = sweep_theta(cfg, [Fraction(0), Fraction(0)])
    assert code == 0 and len(reports) == 2  # duplicates are not deduplicated
    reports, code = sweep_theta(cfg, [])
    assert reports == [] and code == 0
    with pytest.raises(ValueError):
        sweep_theta(small_cfg(mode="float", theta=0.3), [Fraction(0)])


def test_cli_main_and_output(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(
        ["--alpha-t", "0", "--suites", "algebra", "--trials", "40", "--seed", "2", "--out", str(out)]
    )
    assert code == 0
    data = json.loads(out.read_text())
    assert data["pass"] and data["config"]["alpha_t"] == "0"
    assert set(data) == {"schema_version", "tool", "config", "suites", "pass", "timing"}


def test_cli_dump_poly(tmp_path):
    from octoverify.poly import MultiPoly

    path = tmp_path / "fkm.txt"
    code = main(
        ["--alpha-t", "0", "--suites", "algebra", "--trials", "10", "--dump-poly", str(path), "--out", str(tmp_path / "r.json")]
    )
    assert code == 0
    f = MultiPoly.parse(path.read_text(), 32)
    assert f.is_homogeneous(4)
    assert len(f.terms) == 1040  # frozen term count for the t = 0 system


def test_cli_float_mode(tmp_path):
    out = tmp_path / "float.json"
    code = main(
        ["--mode", "float", "--theta", "0.8", "--suites", "nom,mirror", "--trials", "30", "--out", str(out)]
    )
    assert code == 0
    data = json.loads(out.read_text())
    by_name = {s["name"]: s for s in data["suites"]}
    assert by_name["nom"]["pass"]
    assert "skipped" in " ".join(by_name["mirror"]["notes"])


def test_cli_sweep_flag(tmp_path):
    out = tmp_path / "sweep.json"
    code = main(["--sweep-t", "0,1", "--suites", "classify", "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert [d["config"]["alpha_t"] for d in data] == ["0", "1"]
    assert all(d["pass"] for d in data)
    assert main(["--sweep-t", "0,zebra"]) == 2


def test_parser_defaults():
    args = build_parser().parse_args([])
    assert args.algebra == "octonion" and args.side == "left"
    assert args.alpha_t == Fraction(0) and args.mode == "exact"
    assert args.suites == ",".join(ALL_SUITES)


def test_report_schema_validation():
    from octoverify.report import validate_report

    report, _ = run(small_cfg(suites=("algebra",)))
    validate_report(report)
    report["surprise"] = 1
    with pytest.raises(ValueError, match="top-level"):
        validate_report(report)
    report.pop("surprise")
    report["suites"][0]["extra"] = 1
    with pytest.raises(ValueError, match="suite"):
        validate_report(report)
