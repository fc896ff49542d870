"""End-to-end acceptance checks, one test per criterion.

Each test prints a single PASS/FAIL line (visible even without ``-s``) with its
wall time, then re-raises any failure so pytest reports it normally.
"""

import time
from contextlib import contextmanager

import pytest

from comparator_circuits import oracles
from comparator_circuits.circuit import (
    ONE, STAR, ZERO, CcvInstance, Circuit, Comparator, Domain, as_tri, outputs, run,
)
from comparator_circuits.cli import main
from comparator_circuits.marriage import (
    apply_block, embed_marriage, extract_marriage, iterate_to_fixed_point, solve,
)
from comparator_circuits.reductions import (
    ccvneg_to_ccv, decode_rails, reachability_to_ccv, trivalued_to_boolean, vlfmm_to_ccv,
)
from comparator_circuits.textio import CircuitFile, parse, serialize
from comparator_circuits.verify import check_fixpoint_run, reachability_lemmas, run_suite
from figures import (
    CN2C, CN2C_INPUTS, CN2C_TARGET_OUTPUTS, D, FIG1, FIG1_INPUTS, FIG1_OUTPUTS, FIG3,
    FIG3_INPUTS, FIG3_OUTPUTS, FIG4, FIG5, FIG7, FIG7_FIXED, FIG7_I0, FIG7_I1, FIG7_MARRIAGE,
)

SEED = 20240601


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def report(num, title, limit=None):
        t0 = time.perf_counter()
        ok = False
        try:
            yield
            elapsed = time.perf_counter() - t0
            assert limit is None or elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
            ok = True
        finally:
            elapsed = time.perf_counter() - t0
            bound = f" (limit {limit:g}s)" if limit else ""
            with capsys.disabled():
                print(f"\n[criterion {num}] {'PASS' if ok else 'FAIL'}  {title}  "
                      f"{elapsed:.2f}s{bound}")
    return report


def test_criterion_1_golden_figures(criterion):
    with criterion(1, "golden figures", 1.0):
        assert outputs(FIG1, FIG1_INPUTS) == as_tri(FIG1_OUTPUTS)
        assert outputs(FIG3, FIG3_INPUTS) == as_tri(FIG3_OUTPUTS)

        out = vlfmm_to_ccv(FIG5, D)
        assert outputs(out.target.circuit, out.target.inputs) == as_tri((1, 1, 1, 0, 0, 0, 0))

        out = ccvneg_to_ccv(CcvInstance(CN2C, CN2C_INPUTS, 0))
        assert outputs(out.target.circuit, out.target.inputs) == as_tri(CN2C_TARGET_OUTPUTS)

        out = reachability_to_ccv(FIG4)
        vals = run(out.target.circuit, out.target.inputs)
        n = FIG4.num_vertices
        assert vals[:n] == [ZERO] * n and vals[n:] == [ONE] * n

        assert apply_block(FIG7, FIG7_I0) == as_tri(FIG7_I1)
        fix = iterate_to_fixed_point(FIG7)
        assert fix == as_tri(FIG7_FIXED)
        assert extract_marriage(FIG7, fix) == FIG7_MARRIAGE


def _require(res):
    assert res.ok, f"{res.suite}: {res.summary()}, failing seeds {res.failures[:10]}"


def test_criterion_2_ones_conservation(criterion):
    with criterion(2, "ones conservation, 1000 circuits", 5.0):
        res = run_suite("ones", 1000, SEED)
        assert res.trials == 1000
        _require(res)


TRI_TABLE = {
    (ZERO, ZERO): (ZERO, ZERO), (ZERO, ONE): (ZERO, ONE), (ZERO, STAR): (ZERO, STAR),
    (ONE, ZERO): (ZERO, ONE), (ONE, ONE): (ONE, ONE), (ONE, STAR): (STAR, ONE),
    (STAR, ZERO): (ZERO, STAR), (STAR, ONE): (STAR, ONE), (STAR, STAR): (STAR, STAR),
}


def test_criterion_3_reduction_sweeps(criterion):
    sweeps = [("ccv-3vlfmm", 500), ("vlfmm-ccv", 500), ("ccv-3lfmm", 500), ("ccvneg", 500),
              ("lfmm-ccvneg", 500), ("trivalued", 500), ("reachability", 500), ("conn", 200)]
    with criterion(3, "reduction soundness sweeps", 60.0):
        for pq, want in TRI_TABLE.items():
            c = Circuit(2, (Comparator(0, 1),), Domain.TRI)
            out = trivalued_to_boolean(CcvInstance(c, pq, 0))
            assert decode_rails(run(out.target.circuit, out.target.inputs), out.wire_map) == want
        for name, trials in sweeps:
            _require(run_suite(name, trials, SEED))


def test_criterion_4_reachability_lemmas(criterion):
    with criterion(4, "reachability lemma properties, 200 DAGs"):
        assert reachability_lemmas(FIG4)
        _require(run_suite("reach-lemmas", 200, SEED))


def _check_correspondence(sm):
    """G(F(M)) = M and F injective over all stable marriages; man-optimality and
    woman-optimality of solve against every stable marriage."""
    stable = oracles.enumerate_stable(sm)
    if sm.n <= 4:
        states = [embed_marriage(sm, M) for M in stable]
        assert len(set(states)) == len(stable)
        assert all(extract_marriage(sm, B) == M for B, M in zip(states, stable))
    man, woman = dict(solve(sm, "man")), {w: m for m, w in solve(sm, "woman")}
    for M in stable:
        for m, w in M:
            assert sm.men_rank[m][man[m]] <= sm.men_rank[m][w]
            assert sm.women_rank[w][woman[w]] <= sm.women_rank[w][m]


def test_criterion_5_stable_marriage_fixed_points(criterion):
    with criterion(5, "stable marriage fixed-point suite", 120.0):
        count = 0
        for n in (1, 2, 3):
            for sm in oracles.all_sm_instances(n):
                assert check_fixpoint_run(sm), sm
                _check_correspondence(sm)
                count += 1
        assert count == 1 + 16 + 6 ** 6
        res = run_suite("sm-fixpoint", 200, SEED)
        _require(res)
        for t in range(200):
            s = oracles.trial_seed(SEED, t)
            n = int(oracles.rng(s).integers(1, 7))  # enumeration is limited to n <= 6
            _check_correspondence(oracles.random_sm(s, n))


def test_criterion_6_lfmm_to_sm(criterion):
    with criterion(6, "LFMM to stable marriage, 300 graphs"):
        _require(run_suite("lfmm-sm", 300, SEED))


def test_criterion_7_decision_gadgets(criterion):
    with criterion(7, "man/woman-optimal decision gadgets, 100 instances each", 120.0):
        _require(run_suite("mosm", 100, SEED))
        _require(run_suite("wosm", 100, SEED))


def test_criterion_8_cli_round_trip(criterion, tmp_path, capsys):
    with criterion(8, "text round trip and CLI goldens"):
        for t in range(100):
            s = oracles.trial_seed(SEED, t)
            r = oracles.rng(s)
            m, n = int(r.integers(1, 10)), int(r.integers(0, 30))
            dom = Domain.TRI if t % 2 else Domain.BOOL
            cf = CircuitFile(oracles.random_circuit(s, m, n, dom, dom is Domain.BOOL),
                             oracles.random_inputs(s, m, dom))
            assert parse(serialize(cf)) == cf
            g = oracles.random_bipartite(s, int(r.integers(0, 8)), int(r.integers(0, 8)))
            assert parse(serialize(g)) == g
            dg = oracles.random_digraph(s, int(r.integers(1, 10)))
            assert parse(serialize(dg)) == dg
            sm = oracles.random_sm(s, int(r.integers(1, 8)))
            assert parse(serialize(sm)) == sm

        fig1 = tmp_path / "fig1.txt"
        fig1.write_text(serialize(CircuitFile(FIG1, FIG1_INPUTS)))
        fig7 = tmp_path / "fig7.txt"
        fig7.write_text(serialize(FIG7))
        capsys.readouterr()
        assert main(["eval", "--circuit", str(fig1), "--wire", "1"]) == 0
        assert capsys.readouterr().out == "1\n"
        assert main(["sm-solve", "--in", str(fig7), "--side", "man"]) == 0
        assert capsys.readouterr().out == "0 0\n1 1\n"
        assert main(["sm-solve", "--in", str(fig7), "--side", "woman"]) == 0
        assert capsys.readouterr().out == "0 0\n1 1\n"

