import json
from pathlib import Path

import pytest

from owflab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compile_semithue(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "compile", "--backend", "semithue",
                           "--machine", "not", "--n", "4",
                           "--out", str(tmp_path))
    assert code == 0
    assert "shuttle 20" in out
    assert (tmp_path / "system.sts").read_text().startswith("STS v1")
    doc = json.loads((tmp_path / "codes.json").read_text())
    assert "codes" in doc and "salt" in doc


def test_compile_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    run_cli(capsys, "compile", "--backend", "pcp", "--machine", "id",
            "--n", "4", "--salt-seed", "3", "--out", str(a))
    run_cli(capsys, "compile", "--backend", "pcp", "--machine", "id",
            "--n", "4", "--salt-seed", "3", "--out", str(b))
    assert (a / "system.pcp").read_text() == (b / "system.pcp").read_text()


def test_compile_tiling(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "compile", "--backend", "tiling",
                           "--machine", "id", "--n", "3",
                           "--out", str(tmp_path))
    assert code == 0 and "tiles:" in out
    assert (tmp_path / "system.til").read_text().startswith("TIL v1")


def test_unknown_machine_is_usage_error(tmp_path, capsys):
    code, _, err = run_cli(capsys, "compile", "--backend", "semithue",
                           "--machine", "/nonexistent/machine.tm",
                           "--n", "4", "--out", str(tmp_path))
    assert code == 2 and "error" in err


def test_unknown_backend_exits_2(tmp_path):
    with pytest.raises(SystemExit) as e:
        main(["compile", "--backend", "magic", "--machine", "id",
              "--n", "4", "--out", str(tmp_path)])
    assert e.value.code == 2


def test_eval_pipeline(tmp_path, capsys):
    from owflab.machine import library_machine
    from owflab.semithue import instance_to_text
    from owflab.stcompile import compile_semithue, st_encode_input
    m = library_machine("not")
    comp = compile_semithue(m, 4)
    w = st_encode_input(comp, "1010")
    inst = tmp_path / "i.sts"
    inst.write_text(instance_to_text(comp.system, w))
    trace = tmp_path / "t.jsonl"
    code, out, _ = run_cli(capsys, "eval", "--backend", "semithue",
                           "--instance", str(inst),
                           "--semantics", "lookahead:8",
                           "--trace", str(trace))
    assert code == 0
    d = comp.table.code("$")
    assert f"input: {d}0101{d}" in out
    first = json.loads(trace.read_text().splitlines()[0])
    assert set(first) == {"step", "rule", "pos", "len_after"}


def test_eval_strict_identity_note(tmp_path, capsys):
    from owflab.machine import library_machine
    from owflab.semithue import instance_to_text
    from owflab.stcompile import compile_semithue, st_encode_input
    m = library_machine("id")
    comp = compile_semithue(m, 5)
    w = st_encode_input(comp, "10001")
    inst = tmp_path / "i.sts"
    inst.write_text(instance_to_text(comp.system, w))
    code, out, err = run_cli(capsys, "eval", "--backend", "semithue",
                             "--instance", str(inst), "--semantics", "strict")
    assert code == 0
    assert f"input: {w}" in out  # identity
    assert "Ambiguous" in err and "step 0" in err


def test_eval_unparseable_is_identity(tmp_path, capsys):
    inst = tmp_path / "junk.sts"
    inst.write_text("not a system\n")
    code, out, _ = run_cli(capsys, "eval", "--backend", "semithue",
                           "--instance", str(inst))
    assert code == 0 and "identity" in out and "not a system" in out


def test_eval_bad_semantics(tmp_path, capsys):
    inst = tmp_path / "i.sts"
    inst.write_text("STS v1\nrules: 0\ninput: 1\n")
    code, _, err = run_cli(capsys, "eval", "--backend", "semithue",
                           "--instance", str(inst), "--semantics", "woo")
    assert code == 2 and "semantics" in err


def test_verify_determinism_suite(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "determinism",
                           "--machine", "id")
    assert code == 0
    assert "EXPECTED-FAIL" in out and "PASS" in out


def test_verify_lemma_suite(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "lemma",
                           "--machine", "id", "--n-max", "2")
    assert code == 0
    assert out.count("PASS") >= 5 and "FAIL " not in out


def test_sample_reproducible(capsys):
    code, out1, _ = run_cli(capsys, "sample", "--kind", "string",
                            "--count", "5", "--seed", "11")
    assert code == 0
    _, out2, _ = run_cli(capsys, "sample", "--kind", "string",
                         "--count", "5", "--seed", "11")
    assert out1 == out2
    _, out3, _ = run_cli(capsys, "sample", "--kind", "string",
                         "--count", "5", "--seed", "12")
    assert out1 != out3


def test_sample_pcp_text(capsys):
    code, out, _ = run_cli(capsys, "sample", "--kind", "pcp", "--count", "1",
                           "--seed", "0")
    assert code == 0 and out.startswith("PCP v1")


def test_invert_command(capsys):
    code, out, _ = run_cli(capsys, "invert", "--machine", "not", "--n", "6",
                           "--seed", "1")
    assert code == 0
    assert "Found" in out and "recovered payload bits:" in out


def test_experiment_command(tmp_path, capsys):
    out_csv = tmp_path / "rows.csv"
    code, out, _ = run_cli(capsys, "experiment", "--machine", "not",
                           "--n", "4", "--targets", "1", "--seed", "0",
                           "--out", str(out_csv))
    assert code == 0
    header = out_csv.read_text().splitlines()[0]
    assert header == ("kind,machine,n,seed,forward_us,attempts,found,"
                      "identity_rate,policy")
