"""CLI surface: shorthands, JSON instances, DOT export, check reports."""

import json
import subprocess
import sys

import pytest

from modframe import errors
from modframe.cli import main
from modframe.corpus import build_instance, parse_shorthand


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_shorthands():
    ring, module = parse_shorthand("zmod:12")
    assert ring == {"kind": "zmod", "n": 12} and module == {"kind": "regular"}
    ring, module = parse_shorthand("cyclic:8:2,4")
    assert module == {"kind": "cyclic-product", "moduli": [2, 4]}
    assert parse_shorthand("nonsense") is None


def test_build_instance_rejects_garbage():
    with pytest.raises(errors.PreconditionError):
        build_instance("zmod:x")
    with pytest.raises(errors.PreconditionError):
        build_instance("no-such-thing")


def test_json_instance_roundtrip(tmp_path):
    doc = {"ring": {"kind": "zmod", "n": 6}, "module": {"kind": "regular"},
           "caps": {"max_size": 100}}
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(doc))
    instance_id, M = build_instance(str(path))
    assert M.size == 6 and M.caps.max_size == 100


def test_json_instance_diagnostics(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{broken")
    with pytest.raises(errors.PreconditionError) as exc:
        build_instance(str(path))
    assert "line" in str(exc.value)
    path2 = tmp_path / "incomplete.json"
    path2.write_text(json.dumps({"ring": {"kind": "zmod", "n": 4}}))
    with pytest.raises(errors.PreconditionError) as exc:
        build_instance(str(path2))
    assert "module" in str(exc.value)


def test_cli_max_reports_spm(capsys):
    code, out, _ = run_cli(capsys, "max", "zmod:12")
    assert code == 0
    assert "|SPm| = 4" in out
    assert "tau:" in out and "iso to O(mx(M))" in out


def test_cli_lattice_dot_chain(capsys):
    code, out, _ = run_cli(capsys, "lattice", "zmod:4", "--dot")
    assert code == 0
    assert out.count("->") == 2  # the 3-chain has two cover edges


def test_cli_lattice_text(capsys):
    code, out, _ = run_cli(capsys, "lattice", "zmod:12", "--fi")
    assert code == 0 and "6 elements" in out


def test_cli_psi(capsys):
    code, out, _ = run_cli(capsys, "psi", "zmod:12")
    assert code == 0
    assert "|Psi| = 4" in out and "Ler:" in out


def test_cli_spec_and_sober(capsys):
    code, out, _ = run_cli(capsys, "spec", "zmod:12")
    assert code == 0 and "sober: True" in out
    code, out, _ = run_cli(capsys, "sober", "matrix:2,2", "--space", "max")
    assert code == 0 and "3 generic points" in out


def test_cli_regcore(capsys):
    code, out, _ = run_cli(capsys, "regcore", "zmod:12")
    assert code == 0 and "stable at stage 1" in out


def test_cli_check_single_instance(capsys):
    code, out, _ = run_cli(capsys, "check", "zmod:12")
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["fail"] == 0
    names = [c["name"] for c in doc["instances"][0]["checks"]]
    assert "spm_structure" in names and "regular_core" in names
    # every suite check appears exactly once per instance
    assert len(names) == len(set(names)) == 12


def test_cli_check_skips_probe_failure(capsys):
    code, out, _ = run_cli(capsys, "check", "cyclic:8:2,4")
    assert code == 0
    doc = json.loads(out)
    verdicts = {c["name"]: c["verdict"] for c in doc["instances"][0]["checks"]}
    assert verdicts["lattice_idiom"] == "pass"
    assert verdicts["spm_structure"] == "skipped"
    assert doc["summary"]["fail"] == 0


def test_cli_export_dot(capsys):
    for what in ("lattice", "fi", "max", "spec"):
        code, out, _ = run_cli(capsys, "export-dot", "zmod:12", "--what", what)
        assert code == 0 and out.startswith("digraph")


def test_cli_bad_instance(capsys):
    code, _, err = run_cli(capsys, "max", "zmod:notanumber")
    assert code == 2 and "error:" in err


def test_cli_caps_parsing(capsys):
    code, _, err = run_cli(capsys, "lattice", "zmod:12", "--caps", "bogus")
    assert code == 2
    code, out, _ = run_cli(capsys, "lattice", "zmod:12", "--caps", "size=64,hom=1000")
    assert code == 0


def test_cli_out_file(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, _, _ = run_cli(capsys, "check", "zmod:4", "--out", str(out_path))
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["summary"]["fail"] == 0


def test_console_entrypoint_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "modframe.cli", "lattice", "zmod:4"],
        capture_output=True, text=True)
    assert proc.returncode == 0 and "3 elements" in proc.stdout
