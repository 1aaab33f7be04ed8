import pytest

from owflab.inverter import (
    CSV_COLUMNS,
    Found,
    LimitExceeded,
    NotFound,
    backward_search,
    brute_invert,
    evaluate,
    invert_staf_target,
    owf_experiment,
    rows_to_csv,
    staf_payload,
    staf_target,
)
from owflab.machine import library_machine
from owflab.semithue import RewriteSystem, parse_instance, serialize_instance
from owflab.stcompile import compile_semithue


def test_brute_invert_unparseable_target_is_fixed_point():
    assert brute_invert("staf", "00") == Found("00", 0)


def test_brute_invert_small_progressing_instance():
    sys = RewriteSystem((("10", "01"),))
    target = serialize_instance(sys, "0001")
    out = brute_invert("staf", target)
    assert isinstance(out, Found)
    # the found preimage forward-evaluates to the target
    assert evaluate("staf", out.preimage) == target


def test_brute_invert_limit():
    sys = RewriteSystem((("10", "01"),))
    target = serialize_instance(sys, "0001")
    # "0001" is stuck, so it is its own preimage at attempt 2; a limit of 1
    # stops after the failing candidate "0000"
    out = brute_invert("staf", target, limit=1)
    assert out == LimitExceeded(1)
    with pytest.raises(ValueError):
        brute_invert("staf", target, limit=0)


def test_brute_invert_ptf_and_tiling_dispatch():
    assert brute_invert("ptf", "00") == Found("00", 0)
    assert brute_invert("tiling", "00") == Found("00", 0)
    with pytest.raises(ValueError):
        evaluate("nope", "00")


def test_backward_search_inverts_steps():
    sys = RewriteSystem((("0", "1"),))
    anc = backward_search(sys, "11", 2)
    assert {"11", "01", "10", "00"} <= anc
    with pytest.raises(ValueError):
        backward_search(sys, "1", -1)


def test_backward_search_node_cap():
    sys = RewriteSystem((("0", "1"), ("1", "0")))
    anc = backward_search(sys, "0" * 12, 12, max_nodes=50)
    assert len(anc) <= 50


def test_staf_target_attempt_rank():
    # candidates are enumerated in lexicographic payload order, so the
    # number of attempts equals value(x) + 1
    m = library_machine("not")
    comp = compile_semithue(m, 6)
    for x in ("000000", "000101", "110011"):
        target = staf_target(comp, x)
        out = invert_staf_target(comp, target)
        assert isinstance(out, Found)
        assert out.attempts == int(x, 2) + 1
        _, payload = parse_instance(out.preimage)
        l = comp.table.code_len
        assert payload[l:-l] == x


def test_undecomposable_input_is_staf_fixed_point():
    m = library_machine("not")
    comp = compile_semithue(m, 5)
    x = "00101"  # leading zero run of 2: no block decomposition
    w = serialize_instance(comp.system, staf_payload(comp, x))
    assert evaluate("staf", w) == w
    out = invert_staf_target(comp, w)
    assert isinstance(out, Found)
    assert out.preimage == w


def test_experiment_rows_and_csv():
    m = library_machine("not")
    rows = owf_experiment(m, "not", [4], 2, seed=9, identity_samples=20)
    assert len(rows) == 2
    text = rows_to_csv(rows)
    lines = text.strip().split("\n")
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert lines[0] == ("kind,machine,n,seed,forward_us,attempts,found,"
                        "identity_rate,policy")
    assert len(lines) == 3
    for r in rows:
        assert r.found and r.attempts >= 1
        assert 0.0 <= r.identity_rate <= 1.0


def test_experiment_jobs_parallel_matches_sequential():
    m = library_machine("not")
    seq = owf_experiment(m, "not", [4], 2, seed=5, identity_samples=5)
    par = owf_experiment(m, "not", [4], 2, seed=5, identity_samples=5, jobs=2)
    assert [(r.n, r.attempts, r.found) for r in seq] == \
        [(r.n, r.attempts, r.found) for r in par]
