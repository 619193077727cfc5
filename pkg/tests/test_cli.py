"""Command-line interface behavior and output determinism."""

import json

import pytest

from rm2pn.cli import main

from conftest import GOLDEN_DIR


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_writes_table_and_metrics_line(tmp_path, capsys):
    out = tmp_path / "n1.tsv"
    code, stdout, _ = run_cli(
        capsys, "build", "--machine", "u22", "--strategy", "direct",
        "--out", str(out),
    )
    assert code == 0
    assert stdout.strip() == "p=30 t=34 h=12 d=3"
    assert out.exists()
    assert (tmp_path / "n1.tsv.meta.json").exists()
    meta = json.loads((tmp_path / "n1.tsv.meta.json").read_text())
    assert meta["initial_marking"] == {"Q1": 1}


def test_build_stdout_when_no_out_flag(capsys):
    code, stdout, _ = run_cli(
        capsys, "build", "--machine", "u7", "--strategy", "compressed",
    )
    assert code == 0
    assert stdout.splitlines()[0].startswith("\tQ1\t")
    assert stdout.strip().endswith("p=14 t=31 h=51 d=8")


def test_build_output_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.tsv", tmp_path / "b.tsv"
    run_cli(capsys, "build", "--machine", "u22", "--strategy", "checker", "--out", str(a))
    run_cli(capsys, "build", "--machine", "u22", "--strategy", "checker", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_run_golden_n1(capsys):
    code, stdout, _ = run_cli(
        capsys, "run", str(GOLDEN_DIR / "n1.tsv"), "--inputs", "1,0",
        "--limit", "100000",
    )
    assert code == 0
    assert stdout.strip() == "status=deadlock steps=56 output=0"


def test_run_with_trace(tmp_path, capsys):
    code, stdout, _ = run_cli(
        capsys, "run", str(GOLDEN_DIR / "n1.tsv"), "--inputs", "1,0",
        "--limit", "100000", "--trace",
    )
    lines = stdout.splitlines()
    assert lines[0] == "status=deadlock steps=56 output=0"
    assert len(lines) == 57
    assert lines[1] == "T1"  # copy loop starts by consuming the program code


def test_run_wrong_input_arity(capsys):
    code, _, stderr = run_cli(
        capsys, "run", str(GOLDEN_DIR / "n1.tsv"), "--inputs", "1",
    )
    assert code == 2
    assert "expects 2 inputs" in stderr


def test_run_nonhalting_exit_code(capsys):
    code, stdout, _ = run_cli(
        capsys, "run", str(GOLDEN_DIR / "n1.tsv"), "--inputs", "0,0",
        "--limit", "1000",
    )
    assert code == 1
    assert "status=step-limit-exceeded" in stdout


def test_metrics_command(capsys):
    code, stdout, _ = run_cli(capsys, "metrics", str(GOLDEN_DIR / "nw3.tsv"))
    assert code == 0
    assert stdout.strip() == "p=10 t=21 h=44 d=10"


def test_import_command_valid(capsys):
    code, stdout, _ = run_cli(capsys, "import", str(GOLDEN_DIR / "nw2.tsv"))
    assert code == 0
    assert stdout.strip() == "places=13 transitions=21 p=13 t=21 h=23 d=7"


def test_import_command_malformed(tmp_path, capsys):
    bad = tmp_path / "bad.tsv"
    bad.write_text("\tP\nT\tnope\n")
    code, _, stderr = run_cli(capsys, "import", str(bad))
    assert code == 1
    assert "malformed cell" in stderr


def test_export_to_csv_and_back(tmp_path, capsys):
    csv_file = tmp_path / "n1.csv"
    code, _, _ = run_cli(
        capsys, "export", str(GOLDEN_DIR / "n1.tsv"), "--to", "csv",
        "--out", str(csv_file),
    )
    assert code == 0
    code, stdout, _ = run_cli(
        capsys, "metrics", str(csv_file), "--format", "csv",
    )
    assert code == 0
    assert stdout.strip() == "p=30 t=34 h=12 d=3"


def test_compress_command(capsys):
    code, stdout, _ = run_cli(capsys, "compress", "--machine", "u22", "--log")
    assert code == 0
    lines = stdout.splitlines()
    assert lines[0] == "states: 23 -> 7"
    assert lines[1] == "arcs: 35 -> 23"
    assert lines[2] == "initial: q1"
    assert any("scenario" in line or "plain" in line for line in lines[3:])


def test_compress_writes_graph_file(tmp_path, capsys):
    out = tmp_path / "compressed.fg"
    code, _, _ = run_cli(
        capsys, "compress", "--machine", "u22", "--out", str(out),
    )
    assert code == 0
    text = out.read_text()
    assert text.startswith("states ")
    code, stdout, _ = run_cli(
        capsys, "build", "--machine", str(out), "--strategy", "compressed",
    )
    assert code == 0


def test_verify_single_strategy(capsys):
    code, stdout, _ = run_cli(
        capsys, "verify", "--strategy", "direct", "--grid", "2x2",
        "--limit", "100000",
    )
    assert code == 0
    assert "RESULT: PASS" in stdout


def test_verify_with_goldens(capsys, tmp_path):
    report = tmp_path / "report.json"
    code, stdout, _ = run_cli(
        capsys, "verify", "--strategy", "direct", "--grid", "2x2",
        "--limit", "100000", "--golden", "--json", str(report),
    )
    assert code == 0
    assert "golden n1 vs direct: identical" in stdout
    payload = json.loads(report.read_text())
    assert payload["all_passed"] is True


def test_unknown_machine_file(capsys):
    code, _, stderr = run_cli(
        capsys, "build", "--machine", "no-such-file", "--strategy", "direct",
    )
    assert code == 2
    assert "error" in stderr


def test_bad_subcommand_usage():
    with pytest.raises(SystemExit):
        main(["build", "--strategy", "direct"])  # --machine is required
