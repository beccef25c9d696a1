import csv
import io
import json

import pytest

from prinspace import __version__
from prinspace.cache import ComponentCache
from prinspace.cli import RunConfig, main, render, run
from prinspace.principal import LAMBDA0, GradedComponentBasis, component_basis


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_character_vacuum_charge_zero(capsys):
    code, out, _ = run_cli(capsys, "character", "--module", "vacuum", "--max-charge", "0", "--max-weight", "5")
    assert code == 0
    report = json.loads(out)
    assert report["series"]["character"] == {"cap4": 20, "terms": [[0, 0, "1/1"]]}
    code, out, _ = run_cli(capsys, "character", "--max-charge", "0", "--max-weight", "5", "--format", "text")
    assert "character: 1\n" in out


def test_report_schema(capsys):
    code, out, _ = run_cli(capsys, "character", "--module", "charged", "--max-weight", "6")
    report = json.loads(out)
    assert set(report) >= {"command", "config", "checks", "series", "elapsed_ms", "version"}
    assert report["command"] == "character"
    assert report["version"] == __version__
    assert report["elapsed_ms"] is None
    for chk in report["checks"]:
        assert set(chk) >= {"name", "status", "counterexample"}
        assert chk["status"] == "pass"


def test_exactness_lists_bidegrees(capsys):
    code, out, _ = run_cli(capsys, "exactness", "--max-weight", "8")
    assert code == 0
    report = json.loads(out)
    (check,) = report["checks"]
    cells = {(row["charge2"], row["weight4"]) for row in check["rows"]}
    expected = {(0, 0)} | {(2 * r, 4 * s) for s in range(1, 9) for r in range(1, s + 1)}
    assert cells == expected


def test_recursion_command(capsys):
    code, out, _ = run_cli(capsys, "recursion", "--max-weight", "100")
    assert code == 0
    report = json.loads(out)
    assert report["series"]["residual"]["terms"] == []


def test_identities_and_hilbert(capsys):
    assert run_cli(capsys, "identities", "--max-weight", "60")[0] == 0
    assert run_cli(capsys, "hilbert", "--max-charge", "3", "--max-weight", "10")[0] == 0


def test_operators_command(capsys):
    code, out, _ = run_cli(capsys, "operators", "--max-weight", "2", "--format", "text")
    assert code == 0
    assert "PASS  square_zero" in out


def test_csv_dimension_table(capsys):
    code, out, _ = run_cli(capsys, "character", "--max-charge", "2", "--max-weight", "6", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["label", "charge2", "weight4", "dim"]
    assert ["0", "4", "24", "2"] in rows


def test_csv_check_summary(capsys):
    code, out, _ = run_cli(capsys, "identities", "--max-weight", "10", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["check", "status", "counterexample"]
    assert rows[1][:2] == ["rogers_ramanujan_1", "pass"]


@pytest.mark.parametrize(
    "argv",
    [["bogus"], ["character", "--max-weight", "-1"], ["character", "--jobs", "0"], ["character", "--module", "other"], ["all", "--frobnicate"]],
)
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_failure_exit_code(monkeypatch, capsys):
    import prinspace.cli as cli
    from prinspace.checks import Check

    monkeypatch.setitem(cli._DISPATCH, "recursion", lambda cfg, cache, mapper: ([Check("x", False, {"charge2": 0})], {}, {}))
    code, out, _ = run_cli(capsys, "recursion", "--format", "text")
    assert code == 1
    assert "FAIL  x" in out and "overall: fail" in out


@pytest.mark.parametrize("command,max_weight", [("character", 10), ("exactness", 8), ("all", 1)])
def test_deterministic_across_jobs(tmp_path, command, max_weight):
    base = render(run(RunConfig(command, max_charge=3, max_weight=max_weight))[0], "json")
    for jobs in (1, 3):
        cfg = RunConfig(command, max_charge=3, max_weight=max_weight, jobs=jobs, cache_dir=str(tmp_path / "c"))
        assert render(run(cfg)[0], "json") == base


def test_out_path(tmp_path, capsys):
    target = tmp_path / "r.txt"
    code, out, _ = run_cli(capsys, "recursion", "--max-weight", "10", "--format", "text", "--out", str(target))
    assert code == 0 and out == ""
    assert "overall: pass" in target.read_text()


def test_timing_flag(capsys):
    _, out, _ = run_cli(capsys, "recursion", "--max-weight", "4", "--timing")
    assert isinstance(json.loads(out)["elapsed_ms"], int)


# -- cache -------------------------------------------------------------------------


def test_cache_round_trip(tmp_path):
    cache = ComponentCache(tmp_path)
    comp = component_basis(LAMBDA0, 2, 6, cache)
    fresh = ComponentCache(tmp_path)
    key = (LAMBDA0, 4, 24)
    stored = fresh.load(key)
    assert stored is not None
    again = GradedComponentBasis.from_dict(stored)
    assert again.reduced == comp.reduced
    assert again.dim == 2
    assert component_basis(LAMBDA0, 2, 6, fresh).reduced == comp.reduced


def test_cache_version_bump_misses(tmp_path):
    component_basis(LAMBDA0, 2, 6, ComponentCache(tmp_path, version="1"))
    assert ComponentCache(tmp_path, version="2").load((LAMBDA0, 4, 24)) is None


def test_cache_without_directory():
    cache = ComponentCache(None)
    comp = component_basis(LAMBDA0, 2, 6, cache)
    assert cache.load((LAMBDA0, 4, 24)) is not None
    assert comp.dim == 2


def test_corrupt_cache_entry_recomputed(tmp_path, caplog):
    cache = ComponentCache(tmp_path)
    component_basis(LAMBDA0, 2, 6, cache)
    (path,) = tmp_path.glob("*.json")
    path.write_text("{not json")
    fresh = ComponentCache(tmp_path)
    with caplog.at_level("WARNING"):
        comp = component_basis(LAMBDA0, 2, 6, fresh)
    assert comp.dim == 2
    assert "corrupt" in caplog.text
    assert json.loads(path.read_text())["dim"] == 2
