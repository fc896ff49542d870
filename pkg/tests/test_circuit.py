import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from comparator_circuits import oracles
from comparator_circuits.circuit import (
    ONE, STAR, ZERO, CcvInstance, Circuit, CircuitError, Comparator, Domain, Dummy,
    Negation, Tri, chain, evaluate, evaluate_circuit, evaluate_designated, is_directed,
    normalize_directions, ones_per_layer, outputs, refines, run, tri_and, tri_or,
    validate_circuit,
)
from figures import (
    FIG1, FIG1_INPUTS, FIG1_OUTPUTS, FIG3, FIG3_INPUTS, FIG3_OUTPUTS,
    fig1_instance, fig3_instance,
)


def test_validate_ok():
    assert validate_circuit(Circuit(3, (Comparator(1, 0),))) == []


def test_validate_out_of_range():
    errs = validate_circuit(Circuit(2, (Comparator(0, 2),)))
    assert len(errs) == 1 and "wire index out of range" in errs[0]


def test_validate_negation_in_tri():
    errs = validate_circuit(Circuit(1, (Negation(0),), Domain.TRI))
    assert any("negation not allowed in three-valued domain" in e for e in errs)


def test_validate_self_comparator_and_many_errors():
    errs = validate_circuit(Circuit(2, (Comparator(1, 1), Dummy(5), Negation(-1))))
    assert len(errs) == 3


def test_fig1_trace():
    tr = evaluate(fig1_instance())
    assert tr.outputs == FIG1_OUTPUTS
    # after gate 1 wire 0 holds 0 and wire 3 holds 1; after gate 2 wires 1, 4 hold 0, 1
    assert (tr.rows[1, 0], tr.rows[1, 3]) == (0, 1)
    assert (tr.rows[2, 1], tr.rows[2, 4]) == (0, 1)
    assert ones_per_layer(tr) == [3, 3, 3, 3, 3]


def test_fig1_third_gate_orientation_irrelevant():
    flipped = Circuit(6, FIG1.gates[:2] + (Comparator(5, 0),) + FIG1.gates[3:])
    assert outputs(flipped, FIG1_INPUTS) == FIG1_OUTPUTS


def test_fig3():
    assert evaluate(fig3_instance()).outputs == FIG3_OUTPUTS
    assert FIG3.wire_index("c") == 2


def test_designated():
    assert evaluate_designated(fig1_instance(1)) == ONE
    assert evaluate_designated(fig3_instance(2)) == ZERO
    assert evaluate_designated(CcvInstance(Circuit(1), (0,), 0)) == ZERO


def test_designated_out_of_range():
    with pytest.raises(CircuitError):
        evaluate_designated(CcvInstance(Circuit(1), (0,), 3))


def test_empty_circuit_single_row():
    tr = evaluate_circuit(Circuit(3), (1, 0, 1))
    assert tr.rows.shape == (1, 3)
    assert tr.outputs == (ONE, ZERO, ONE)


def test_tri_comparator_row():
    c = Circuit(2, (Comparator(0, 1),), Domain.TRI)
    assert outputs(c, (ONE, STAR)) == (STAR, ONE)


def test_kleene_tables_are_min_max():
    order = {ZERO: 0, STAR: 1, ONE: 2}
    for p, q in itertools.product(Tri, repeat=2):
        assert tri_and(p, q) == min(p, q, key=order.get)
        assert tri_or(p, q) == max(p, q, key=order.get)


def test_star_rejected_on_boolean():
    with pytest.raises(CircuitError):
        run(Circuit(1), ("*",))


def test_wrong_input_length():
    with pytest.raises(CircuitError):
        run(Circuit(2), (0,))


def test_negation_flips():
    assert outputs(Circuit(1, (Negation(0),)), (0,)) == (ONE,)


def test_ones_per_layer_rejects_tri():
    tr = evaluate_circuit(Circuit(1, (), Domain.TRI), ("*",))
    with pytest.raises(CircuitError):
        ones_per_layer(tr)


def test_ones_all_zero():
    c = oracles.random_circuit(3, 6, 20)
    assert set(ones_per_layer(evaluate_circuit(c, (0,) * 6))) == {0}


def test_trace_is_read_only():
    tr = evaluate(fig1_instance())
    with pytest.raises(ValueError):
        tr.rows[0, 0] = 1


def test_trace_format():
    tr = evaluate_circuit(Circuit(2, (Comparator(0, 1),), Domain.TRI), ("*", 0))
    assert tr.format() == "* 0\n0 *"


@settings(max_examples=150, deadline=None)
@given(seed=st.integers(0, 2**32), m=st.integers(1, 8), n=st.integers(0, 25),
       neg=st.booleans())
def test_frame_property(seed, m, n, neg):
    c = oracles.random_circuit(seed, m, n, with_negation=neg)
    tr = evaluate_circuit(c, oracles.random_inputs(seed + 1, m))
    for t, g in enumerate(c.gates):
        others = [w for w in range(m) if w not in g.wires]
        assert (tr.rows[t, others] == tr.rows[t + 1, others]).all()


@settings(max_examples=150, deadline=None)
@given(seed=st.integers(0, 2**32), m=st.integers(1, 10), n=st.integers(0, 30))
def test_ones_conserved(seed, m, n):
    c = oracles.random_circuit(seed, m, n)
    counts = ones_per_layer(evaluate_circuit(c, oracles.random_inputs(seed, m)))
    assert len(set(counts)) == 1


@settings(max_examples=150, deadline=None)
@given(seed=st.integers(0, 2**32), m=st.integers(1, 6), n=st.integers(0, 20),
       data=st.data())
def test_star_refinement_is_monotone(seed, m, n, data):
    c = oracles.random_circuit(seed, m, n, Domain.TRI)
    coarse = oracles.random_inputs(seed, m, Domain.TRI)
    fine = tuple(data.draw(st.sampled_from([ZERO, ONE])) if v is STAR else v for v in coarse)
    boolean = Circuit(m, c.gates, Domain.BOOL)
    assert refines(outputs(c, coarse), outputs(boolean, fine))


def test_evaluate_deterministic():
    c = oracles.random_circuit(11, 7, 30)
    x = oracles.random_inputs(11, 7)
    assert np.array_equal(evaluate_circuit(c, x).rows, evaluate_circuit(c, x).rows)


def test_run_matches_trace():
    c = oracles.random_circuit(5, 9, 40, with_negation=True)
    x = oracles.random_inputs(5, 9)
    assert tuple(run(c, x)) == evaluate_circuit(c, x).outputs


# --- direction normalization ----------------------------------------------

def test_normalize_single_upward_gate():
    c = Circuit(2, (Comparator(1, 0),))  # max to the upper wire
    norm = normalize_directions(c, (1, 0), "down")
    assert norm.circuit.num_wires == 4
    assert is_directed(norm.circuit, "down")
    vals = run(norm.circuit, norm.inputs)
    assert [vals[w] for w in norm.wire_map] == [1, 0]


def test_normalize_gate_pattern():
    c = Circuit(2, (Comparator(1, 0),))
    norm = normalize_directions(c, direction="down")
    # layer t wires are 0, 1 and layer t+1 wires are 2, 3
    assert norm.circuit.gates == (Comparator(0, 2), Comparator(1, 2), Comparator(1, 3))


def test_normalize_already_directed():
    c = Circuit(3, (Comparator(0, 1), Comparator(1, 2)))
    for x in itertools.product((0, 1), repeat=3):
        norm = normalize_directions(c, x)
        vals = run(norm.circuit, norm.inputs)
        assert [vals[w] for w in norm.wire_map] == run(c, x)


def test_normalize_rejects_negation():
    with pytest.raises(CircuitError):
        normalize_directions(Circuit(1, (Negation(0),)))


def test_lift_inputs_matches():
    c = oracles.random_circuit(2, 4, 6)
    x = oracles.random_inputs(2, 4)
    for d in ("down", "up"):
        norm = normalize_directions(c, x, d)
        assert norm.lift_inputs(x) == norm.inputs


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 2**32), m=st.integers(1, 5), n=st.integers(0, 12),
       direction=st.sampled_from(["down", "up"]))
def test_normalize_preserves_outputs(seed, m, n, direction):
    c = oracles.random_circuit(seed, m, n)
    x = oracles.random_inputs(seed, m)
    norm = normalize_directions(c, x, direction)
    assert is_directed(norm.circuit, direction)
    vals = run(norm.circuit, norm.inputs)
    assert [vals[w] for w in norm.wire_map] == run(c, x)


def test_normalize_thousand_random():
    bad = 0
    for s in range(1000):
        inst = oracles.random_ccv_instance(s, 1 + s % 5, s % 13)
        norm = normalize_directions(inst.circuit, inst.inputs, "up" if s % 2 else "down")
        vals = run(norm.circuit, norm.inputs)
        bad += vals[norm.wire_map[inst.designated_wire]] != evaluate_designated(inst)
    assert bad == 0


# --- chaining --------------------------------------------------------------

def test_chain_single_block():
    ch = chain([FIG3])
    assert ch.circuit.gates == FIG3.gates and ch.circuit.num_wires == 3


def test_chain_fig3_twice():
    ch = chain([FIG3, FIG3], [{0: 0, 1: 1, 2: 2}])
    assert ch.circuit.num_wires == 3
    assert outputs(ch.circuit, FIG3_INPUTS) == FIG3_OUTPUTS


def test_chain_fresh_wires_and_inputs():
    a = Circuit(2, (Comparator(0, 1),))
    b = Circuit(2, (Comparator(0, 1),))
    ch = chain([a, b], [{1: 0}], [(1, 0), (9, 1)])  # wired input of block 1 is ignored
    assert ch.circuit.num_wires == 3
    assert ch.inputs == (ONE, ZERO, ONE)
    assert ch.wire_maps == ((0, 1), (1, 2))
    assert outputs(ch.circuit, ch.inputs) == (ZERO, ONE, ONE)


def test_chain_errors():
    with pytest.raises(CircuitError):
        chain([FIG3, Circuit(3, (), Domain.TRI)], [{}])
    with pytest.raises(CircuitError):
        chain([FIG3, FIG3], [{0: 1, 1: 1}])
    with pytest.raises(CircuitError):
        chain([FIG3, FIG3], [])
    with pytest.raises(CircuitError):
        chain([])


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32), m=st.integers(1, 6), k=st.integers(1, 4))
def test_chain_equals_sequential(seed, m, k):
    blocks = [oracles.random_circuit(seed + i, m, 8, with_negation=True) for i in range(k)]
    perm = [list(np.random.default_rng(seed + i).permutation(m)) for i in range(k - 1)]
    wiring = [{s: int(p[s]) for s in range(m)} for p in perm]
    x = oracles.random_inputs(seed, m)
    ch = chain(blocks, wiring)
    vals = list(x)
    for i, b in enumerate(blocks):
        vals = run(b, vals)
        if i < k - 1:
            nxt = [0] * m
            for s, d in wiring[i].items():
                nxt[d] = vals[s]
            vals = nxt
    got = run(ch.circuit, x)
    assert [got[w] for w in ch.wire_maps[-1]] == vals


def test_refines():
    assert refines((STAR, ONE), (ZERO, ONE))
    assert not refines((ZERO, ONE), (ONE, ONE))


def test_tri_parse():
    assert Tri.parse("*") is STAR and Tri.parse(True) is ONE and str(STAR) == "*"
    with pytest.raises(ValueError):
        Tri.parse("x")
