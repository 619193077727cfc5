"""Firing semantics, metrics, and the run loop."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rm2pn.nets import (
    Metrics,
    Net,
    NetError,
    RunStatus,
    compute,
    degree,
    enabled,
    enabled_set,
    fire,
    metrics,
    run_to_deadlock,
)


def test_construction_validation():
    with pytest.raises(NetError):
        Net(["p", "p"], ["t"], {})
    with pytest.raises(NetError):
        Net(["x"], ["x"], {})
    with pytest.raises(NetError):
        Net(["p"], ["t"], {("p", "t"): -2})
    with pytest.raises(NetError):
        Net(["p"], ["t"], {("t", "p"): -1})
    with pytest.raises(NetError):
        Net(["p"], ["t"], {("q", "t"): 1})
    with pytest.raises(NetError):
        Net(["p"], ["t"], {}, initial_marking={"p": -1})
    with pytest.raises(NetError):
        Net(["p"], ["t"], {}, output_place="nope")


# one increment gadget and one test-and-decrement gadget, hand-built
ZM_NET = Net(
    places=["Qj", "Qk", "Qk2", "Ri"],
    transitions=["nz", "z"],
    weight={
        ("Qj", "nz"): 1, ("Ri", "nz"): 1, ("nz", "Qk"): 1,
        ("Qj", "z"): 1, ("Ri", "z"): -1, ("z", "Qk2"): 1,
    },
)


def test_enabled_zero_branch_under_inhibitor():
    assert enabled(ZM_NET, {"Qj": 1, "Ri": 0}, "z")
    assert not enabled(ZM_NET, {"Qj": 1, "Ri": 1}, "z")
    assert enabled(ZM_NET, {"Qj": 1, "Ri": 1}, "nz")
    assert not enabled(ZM_NET, {"Qj": 1}, "nz")


def test_enabled_boundary_exact_tokens():
    net = Net(["a", "b"], ["t"], {("a", "t"): 2, ("b", "t"): 1})
    assert enabled(net, {"a": 2, "b": 1}, "t")
    assert not enabled(net, {"a": 1, "b": 1}, "t")


def test_enabled_unknown_transition():
    with pytest.raises(NetError):
        enabled(ZM_NET, {}, "bogus")


def test_enabled_golden_n1_t1_needs_register_token(goldens):
    n1 = goldens["n1"]
    assert not enabled(n1, {"Q1": 1, "R1": 0}, "T1")
    assert enabled(n1, {"Q1": 1, "R1": 1}, "T1")


def test_fire_golden_n1_t1(goldens):
    n1 = goldens["n1"]
    assert fire(n1, {"Q1": 1, "R1": 5}, "T1") == {"Q3": 1, "R1": 4}


def test_fire_zero_branch_keeps_register_empty():
    assert fire(ZM_NET, {"Qj": 1}, "z") == {"Qk2": 1}


def test_fire_disabled_is_error():
    with pytest.raises(NetError):
        fire(ZM_NET, {"Qj": 1, "Ri": 1}, "z")


def test_fire_disconnected_transition_is_identity():
    net = Net(["p"], ["t"], {}, initial_marking={"p": 3})
    assert fire(net, {"p": 3}, "t") == {"p": 3}


def test_enabled_set_empty_marking():
    assert enabled_set(ZM_NET, {}) == set()


def test_enabled_set_golden_n1_initial(goldens):
    n1 = goldens["n1"]
    assert enabled_set(n1, {"Q1": 1}) == {"T2"}
    assert enabled_set(n1, {"Q1": 1, "R1": 1}) == {"T1"}


def test_run_to_deadlock_empty_net():
    net = Net(["p"], [], {}, initial_marking={"p": 1})
    result = run_to_deadlock(net, {"p": 1}, 100)
    assert result.status is RunStatus.DEADLOCK
    assert result.steps == 0


def test_run_to_deadlock_detects_nondeterminism():
    net = Net(
        ["p", "a", "b"],
        ["t1", "t2"],
        {("p", "t1"): 1, ("t1", "a"): 1, ("p", "t2"): 1, ("t2", "b"): 1},
    )
    result = run_to_deadlock(net, {"p": 1}, 100)
    assert result.status is RunStatus.NONDETERMINISM_DETECTED
    assert result.steps == 0


def test_run_to_deadlock_trace():
    result = run_to_deadlock(ZM_NET, {"Qj": 1, "Ri": 2}, 100, collect_trace=True)
    assert result.status is RunStatus.DEADLOCK
    assert result.trace == ("nz",)
    assert result.final_marking == {"Qk": 1, "Ri": 1}


def test_run_to_deadlock_step_limit():
    net = Net(["p"], ["t"], {("p", "t"): 1, ("t", "p"): 1})  # spins forever
    result = run_to_deadlock(net, {"p": 1}, 50)
    assert result.status is RunStatus.STEP_LIMIT_EXCEEDED
    assert result.steps == 50


def test_compute_on_transitionless_net():
    net = Net(
        ["i", "o"], [], {},
        input_places=["i"], output_place="o",
    )
    assert compute(net, [7], 100) == 0


def test_compute_adds_inputs_on_top_of_initial_marking():
    net = Net(
        ["i", "o"],
        ["t"],
        {("i", "t"): 1, ("t", "o"): 1},
        initial_marking={"i": 1},
        input_places=["i"],
        output_place="o",
    )
    assert compute(net, [2], 100) == 3


def test_compute_arity_mismatch():
    net = Net(["i", "o"], [], {}, input_places=["i"], output_place="o")
    with pytest.raises(NetError):
        compute(net, [1, 2], 100)


def test_compute_none_on_limit():
    net = Net(
        ["i", "o"], ["t"], {("i", "t"): 1, ("t", "i"): 1},
        input_places=["i"], output_place="o",
    )
    assert compute(net, [1], 10) is None


def test_metrics_empty_net():
    assert metrics(Net([], [], {})) == Metrics(0, 0, 0, 0)


def test_metrics_golden_tables(goldens):
    assert metrics(goldens["n1"]) == (30, 34, 12, 3)
    assert metrics(goldens["n2"]) == (14, 31, 51, 8)
    assert metrics(goldens["n3"]) == (11, 31, 79, 11)
    assert metrics(goldens["nw1"]) == (27, 31, 11, 3)
    assert metrics(goldens["nw2"]) == (13, 21, 23, 7)
    assert metrics(goldens["nw3"]) == (10, 21, 44, 10)


def test_degree_golden_n1_row(goldens):
    assert degree(goldens["n1"], "T1") == 3


def test_degree_isolated_transition():
    assert degree(Net(["p"], ["t"], {}), "t") == 0


def test_degree_read_loop_counts_twice():
    net = Net(["p"], ["t"], {("p", "t"): 1, ("t", "p"): 1})
    assert degree(net, "t") == 2


def test_degree_golden_n2_max(goldens):
    n2 = goldens["n2"]
    degrees = {t: degree(n2, t) for t in n2.transitions}
    assert max(degrees.values()) == 8
    # T29 touches eight half-cells, one per incident arc
    row = [
        (p, n2.w(p, "T29"), n2.w("T29", p))
        for p in n2.places
        if n2.w(p, "T29") or n2.w("T29", p)
    ]
    half_cells = sum((a != 0) + (b != 0) for _, a, b in row)
    assert half_cells == 8
    assert degrees["T29"] == 8


# --- property tests --------------------------------------------------------

weights = st.dictionaries(
    st.tuples(st.sampled_from(["p0", "p1", "p2"]), st.sampled_from(["t0", "t1"])),
    st.integers(min_value=-1, max_value=2),
    max_size=6,
)
markings = st.dictionaries(
    st.sampled_from(["p0", "p1", "p2"]), st.integers(min_value=0, max_value=3)
)


def _mirror(weight):
    # produce weights on the mirrored (transition, place) pairs
    return {
        (t, p): abs(w) % 3
        for (p, t), w in weight.items()
    }


@given(weights, weights, markings)
@settings(max_examples=200)
def test_fire_conservation_and_nonnegativity(consume, produce, marking):
    weight = dict(consume)
    weight.update(_mirror(produce))
    net = Net(["p0", "p1", "p2"], ["t0", "t1"], weight)
    for t in net.transitions:
        if not enabled(net, marking, t):
            continue
        after = fire(net, marking, t)
        for p in net.places:
            expected = (
                marking.get(p, 0) - max(net.w(p, t), 0) + net.w(t, p)
            )
            assert after.get(p, 0) == expected
            assert after.get(p, 0) >= 0


@given(weights, markings)
@settings(max_examples=200)
def test_inhibitor_soundness(consume, marking):
    net = Net(["p0", "p1", "p2"], ["t0", "t1"], consume)
    for t in net.transitions:
        for p in net.places:
            if net.w(p, t) == -1 and marking.get(p, 0) > 0:
                assert not enabled(net, marking, t)


@given(weights, markings)
@settings(max_examples=100)
def test_disconnected_place_does_not_interfere(consume, marking):
    net = Net(["p0", "p1", "p2"], ["t0", "t1"], consume)
    wider = Net(["p0", "p1", "p2", "extra"], ["t0", "t1"], consume)
    loaded = dict(marking, extra=5)
    for t in net.transitions:
        assert enabled(net, marking, t) == enabled(wider, loaded, t)
        if enabled(net, marking, t):
            a = fire(net, marking, t)
            b = fire(wider, loaded, t)
            assert {p: b.get(p, 0) for p in net.places} == {
                p: a.get(p, 0) for p in net.places
            }
