import io
import json
import subprocess
import sys

import pytest

from latspec.cli import main


def run(capsys, monkeypatch, argv, stdin=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


GEN_CASES = [
    ["chain", "5"], ["boolean", "3"], ["antichain", "4"], ["n5"], ["m3"],
    ["divisor", "60"], ["module", "12:[12]"], ["module", "2:[2,2]"], ["group", "s3"],
    ["group", "z4"], ["group", "d4"], ["group", "q8"],
]


@pytest.mark.parametrize("argv", GEN_CASES, ids=lambda a: "_".join(a))
def test_gen_validate_round_trip(capsys, monkeypatch, argv):
    code, doc, _ = run(capsys, monkeypatch, ["gen", *argv])
    assert code == 0
    code, out, err = run(capsys, monkeypatch, ["validate", "-"], stdin=doc)
    assert code == 0, err
    assert json.loads(out)["valid"] is True


def test_analyze_divisor_prime_spectrum(capsys, monkeypatch):
    _, doc, _ = run(capsys, monkeypatch, ["gen", "divisor", "12"])
    code, out, _ = run(capsys, monkeypatch, ["analyze", "-", "--x", "spec_p"], stdin=doc)
    rep = json.loads(out)
    assert code == 0
    assert rep["x_top"]["is_x_top"] is True
    assert rep["topologies"]["classical"]["flags"]["discrete"] is True
    assert len(rep["irreducible_components"]) == 2


def test_analyze_chain_si_is_spectral(capsys, monkeypatch):
    _, doc, _ = run(capsys, monkeypatch, ["gen", "chain", "4"])
    code, out, _ = run(capsys, monkeypatch, ["analyze", "-", "--x", "si"], stdin=doc)
    assert code == 0
    assert json.loads(out)["topologies"]["classical"]["flags"]["spectral"] is True


def test_analyze_is_byte_identical(capsys, monkeypatch, tmp_path):
    _, doc, _ = run(capsys, monkeypatch, ["gen", "module", "12:[12]"])
    f = tmp_path / "m.json"
    f.write_text(doc)
    outs = [run(capsys, monkeypatch, ["analyze", str(f), "--x", "spec_s", "--dual", "--seed", "3"])[1]
            for _ in range(2)]
    assert outs[0] == outs[1]
    assert '"ms"' not in outs[0]


def test_check_second_spectrum_dual(capsys, monkeypatch, tmp_path):
    _, doc, _ = run(capsys, monkeypatch, ["gen", "module", "12:[12]"])
    f = tmp_path / "module.json"
    f.write_text(doc)
    code, out, _ = run(capsys, monkeypatch, ["check", str(f), "--x", "spec_s", "--dual"])
    assert code == 0
    results = json.loads(out)
    assert {r["status"] for r in results} <= {"pass", "not_applicable"}
    assert all("ms" in r for r in results)


def test_check_only_and_unknown(capsys, monkeypatch):
    _, doc, _ = run(capsys, monkeypatch, ["gen", "m3"])
    code, out, _ = run(capsys, monkeypatch, ["check", "-", "--x", "max", "--only", "t0_and_sober",
                                             "--no-timings"], stdin=doc)
    assert code == 0
    (r,) = json.loads(out)
    assert r["check_id"] == "t0_and_sober" and r["status"] == "pass" and "ms" not in r
    code, _, err = run(capsys, monkeypatch, ["check", "-", "--x", "max", "--only", "bogus"], stdin=doc)
    assert code == 2 and "bogus" in err


def test_usage_and_selector_errors(capsys, monkeypatch):
    assert run(capsys, monkeypatch, [])[0] == 2
    assert run(capsys, monkeypatch, ["gen", "nonsense"])[0] == 2
    _, doc, _ = run(capsys, monkeypatch, ["gen", "chain", "3"])
    code, _, err = run(capsys, monkeypatch, ["analyze", "-", "--x", "spec_p"], stdin=doc)
    assert code == 2 and json.loads(err)["error"]
    code, _, err = run(capsys, monkeypatch, ["analyze", "-", "--x", "zzz"], stdin=doc)
    assert code == 2
    code, _, err = run(capsys, monkeypatch, ["validate", "/nonexistent/file.json"])
    assert code == 2 and json.loads(err)["error"] == "io_error"


def test_schema_diagnostics(capsys, monkeypatch):
    code, _, err = run(capsys, monkeypatch, ["validate", "-"], stdin='{"kind": "lattice",\n  "labels": [1,}')
    assert code == 2
    e = json.loads(err)
    assert "line" in json.dumps(e)
    code, _, err = run(capsys, monkeypatch, ["validate", "-"], stdin='{"kind": "module", "modulus": 12}')
    assert code == 2 and "invariant_factors" in err


def test_export_dot(capsys, monkeypatch):
    _, doc, _ = run(capsys, monkeypatch, ["gen", "boolean", "2"])
    code, out, _ = run(capsys, monkeypatch, ["export-dot", "-"], stdin=doc)
    assert code == 0 and out.startswith("digraph") and out.count("->") == 4
    code, out, _ = run(capsys, monkeypatch, ["export-dot", "-", "--specialization", "--x", "si"], stdin=doc)
    assert code == 0 and out.startswith("digraph")


def test_list_checks(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["list-checks"])
    assert code == 0 and len(json.loads(out)) == 26


def test_out_flag(capsys, monkeypatch, tmp_path):
    target = tmp_path / "doc.json"
    assert run(capsys, monkeypatch, ["gen", "n5", "--out", str(target)])[0] == 0
    assert json.loads(target.read_text())["schema"] == "latspec/1"


def test_shell_pipeline():
    gen = subprocess.run([sys.executable, "-m", "latspec", "gen", "divisor", "30"],
                         capture_output=True, text=True, check=True)
    res = subprocess.run([sys.executable, "-m", "latspec", "analyze", "-", "--x", "max"],
                         input=gen.stdout, capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    assert json.loads(res.stdout)["schema"] == "latspec/1"
