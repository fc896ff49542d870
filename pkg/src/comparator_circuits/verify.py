"""Seeded cross-check sweeps: each trial builds a random instance and compares a
construction against an independent oracle.  Trial ``t`` uses seed ``base + t``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import oracles as O
from .circuit import (
    ONE, ZERO, CcvInstance, Domain, evaluate,
    evaluate_designated, normalize_directions, ones_per_layer, refines, run,
)
from .graphs import (
    BipartiteGraph, bfs_conn_matrix, lfm_matching, lfmm_decide_edge,
    reachable_set, vlfmm_decide_vertex,
)
from .marriage import (
    lfmm_to_sm, marriage_iterates, mosm_to_ccvneg, solve, star_budget,
    substitute_stars, is_fixed_point, wosm_to_ccvneg,
)
from .reductions import (
    answer, ccv_to_3lfmm, ccv_to_3vlfmm, ccvneg_block_ends, ccvneg_to_ccv,
    conn_matrix_via_ccv, decode_rails, lfmm_to_ccvneg, reachability_gadget_size,
    reachability_to_ccv, trivalued_to_boolean, vlfmm_to_ccv,
)

TRIALS_ENV = "COMPARATOR_TRIALS"


def _sizes(seed: int, *bounds: tuple[int, int]) -> list[int]:
    g = O.rng(seed ^ 0x5EED)
    return [int(g.integers(lo, hi + 1)) for lo, hi in bounds]


def _ccv(seed: int, domain=Domain.BOOL, neg=False, max_m=8, max_n=20) -> CcvInstance:
    m, n = _sizes(seed, (1, max_m), (0, max_n))
    return O.random_ccv_instance(seed, m, n, domain, neg)


def trial_ones(seed: int) -> bool:
    inst = _ccv(seed, max_m=20, max_n=60)
    counts = ones_per_layer(evaluate(inst))
    return len(set(counts)) == 1


def trial_normalize(seed: int) -> bool:
    inst = _ccv(seed, max_m=5, max_n=12)
    direction = "up" if seed % 2 else "down"
    norm = normalize_directions(inst.circuit, inst.inputs, direction)
    want = run(inst.circuit, inst.inputs)
    got = run(norm.circuit, norm.inputs)
    return [got[w] for w in norm.wire_map] == want


def trial_ccv_3vlfmm(seed: int) -> bool:
    inst = _ccv(seed)
    out = ccv_to_3vlfmm(inst)
    if out.target.graph.max_degree() > 3:
        return False
    return answer(out) == (evaluate_designated(inst) == ONE)


def trial_ccv_3lfmm(seed: int) -> bool:
    inst = _ccv(seed)
    out = ccv_to_3lfmm(inst)
    if out.target.graph.max_degree() > 3:
        return False
    return answer(out) == (evaluate_designated(inst) == ONE)


def trial_vlfmm_ccv(seed: int) -> bool:
    nb, nt = _sizes(seed, (1, 7), (1, 7))
    g = O.random_bipartite(seed, nb, nt)
    top = int(O.rng(seed).integers(nt))
    out = vlfmm_to_ccv(g, top)
    vals = run(out.target.circuit, out.target.inputs)
    return (answer(out) == vlfmm_decide_vertex(g, top)
            and all((vals[t] == ONE) == vlfmm_decide_vertex(g, t) for t in range(nt)))


def trial_ccvneg(seed: int) -> bool:
    inst = _ccv(seed, neg=True)
    out = ccvneg_to_ccv(inst)
    m = inst.circuit.num_wires
    src = evaluate(inst).rows
    rows = evaluate(out.target).rows
    for t, r in enumerate(ccvneg_block_ends(inst.circuit)):
        row = rows[r]
        if row[2 * m] != 0:
            return False
        for w in range(m):
            if row[2 * w] != src[t, w] or row[2 * w + 1] != 1 - src[t, w]:
                return False
    return answer(out) == (evaluate_designated(inst) == ONE)


def trial_lfmm_ccvneg(seed: int) -> bool:
    nb, nt = _sizes(seed, (1, 7), (1, 7))
    g = O.random_bipartite(seed, nb, nt)
    r = O.rng(seed + 1)
    if not g.edges:
        g = BipartiteGraph(nb, nt, frozenset({(int(r.integers(nb)), int(r.integers(nt)))}))
    edges = sorted(g.edges)
    edge = edges[int(r.integers(len(edges)))]
    return answer(lfmm_to_ccvneg(g, edge)) == lfmm_decide_edge(g, *edge)


def trial_trivalued(seed: int) -> bool:
    inst = _ccv(seed, domain=Domain.TRI)
    out = trivalued_to_boolean(inst)
    want = evaluate(inst).outputs
    got = decode_rails(run(out.target.circuit, out.target.inputs), out.wire_map)
    return got == want and answer(out) == (want[inst.designated_wire] == ONE)


def trial_reachability(seed: int) -> bool:
    (n,) = _sizes(seed, (1, 10))
    dg = O.random_topological_dag(seed, n, density=float(O.rng(seed).uniform(0.05, 0.6)))
    out = reachability_to_ccv(dg)
    if out.target.circuit.num_gates != n * reachability_gadget_size(n):
        return False
    vals = run(out.target.circuit, out.target.inputs)
    got = frozenset(i for i, w in enumerate(out.wire_map) if vals[w] == ONE)
    return got == reachable_set(dg, 0) and answer(out) == ((n - 1) in got)


def reachability_lemmas(dg) -> bool:
    """At most one nu-wire changes per gadget and only upward; ones persist; nu_0 ends at 1."""
    n = dg.num_vertices
    out = reachability_to_ccv(dg)
    rows = evaluate(out.target).rows
    size = reachability_gadget_size(n)
    nu = rows[::size, n:]  # nu values at every gadget boundary
    for a, b in zip(nu[:-1], nu[1:]):
        changed = np.flatnonzero(a != b)
        if len(changed) > 1 or any(a[k] != 0 or b[k] != 1 for k in changed):
            return False
    return nu[-1, 0] == 1


def trial_reachability_lemmas(seed: int) -> bool:
    (n,) = _sizes(seed, (1, 10))
    return reachability_lemmas(O.random_topological_dag(seed, n, 0.3))


def trial_conn(seed: int) -> bool:
    (n,) = _sizes(seed, (1, 8))
    dg = O.random_digraph(seed, n, density=float(O.rng(seed).uniform(0.05, 0.5)))
    return bool((conn_matrix_via_ccv(dg) == bfs_conn_matrix(dg)).all())


def trial_lfmm_sm(seed: int) -> bool:
    nb, nt = _sizes(seed, (1, 4), (1, 4))
    g = O.random_bipartite(seed, nb, nt, degree_bound=3, density=0.5)
    red = lfmm_to_sm(g)
    man = solve(red.sm, "man")
    return red.restrict(man) == lfm_matching(g) and man == solve(red.sm, "woman")


def _sm_decision(seed: int, side: str) -> bool:
    (n,) = _sizes(seed, (1, 5))
    sm = O.random_sm(seed, n)
    best = solve(sm, side)
    build = mosm_to_ccvneg if side == "man" else wosm_to_ccvneg
    return all(answer(build(sm, m, w)) == ((m, w) in best)
               for m in range(n) for w in range(n))


def trial_mosm(seed: int) -> bool:
    return _sm_decision(seed, "man")


def trial_wosm(seed: int) -> bool:
    return _sm_decision(seed, "woman")


def check_fixpoint_run(sm) -> bool:
    """Iteration stays within budget, only ever fills stars, and both substitutions
    give Boolean fixed points whose marriages match deferred acceptance."""
    states = marriage_iterates(sm)
    if len(states) - 1 > star_budget(sm.n):
        return False
    if not all(refines(a, b) for a, b in zip(states, states[1:])):
        return False
    fix = states[-1]
    for side, v, prop in (("man", ZERO, "men"), ("woman", ONE, "women")):
        B = substitute_stars(sm, fix, v)
        if not is_fixed_point(sm, B):
            return False
        if solve(sm, side) != O.gale_shapley(sm, prop):
            return False
    return True


def trial_sm_fixpoint(seed: int) -> bool:
    (n,) = _sizes(seed, (1, 8))
    return check_fixpoint_run(O.random_sm(seed, n))


@dataclass(frozen=True)
class Suite:
    name: str
    trial: Callable[[int], bool]
    default_trials: int
    covers: tuple[str, ...] = field(default=())


SUITES = {s.name: s for s in [
    Suite("ones", trial_ones, 1000, ("ones_per_layer",)),
    Suite("normalize", trial_normalize, 500, ("normalize_directions",)),
    Suite("ccv-3vlfmm", trial_ccv_3vlfmm, 500, ("ccv_to_3vlfmm",)),
    Suite("vlfmm-ccv", trial_vlfmm_ccv, 500, ("vlfmm_to_ccv",)),
    Suite("ccv-3lfmm", trial_ccv_3lfmm, 500, ("ccv_to_3lfmm",)),
    Suite("ccvneg", trial_ccvneg, 500, ("ccvneg_to_ccv",)),
    Suite("lfmm-ccvneg", trial_lfmm_ccvneg, 500, ("lfmm_to_ccvneg",)),
    Suite("trivalued", trial_trivalued, 500, ("trivalued_to_boolean",)),
    Suite("reachability", trial_reachability, 500, ("reachability_to_ccv",)),
    Suite("reach-lemmas", trial_reachability_lemmas, 200, ()),
    Suite("conn", trial_conn, 200, ("conn_matrix_via_ccv",)),
    Suite("lfmm-sm", trial_lfmm_sm, 300, ("lfmm_to_sm",)),
    Suite("mosm", trial_mosm, 100, ("mosm_to_ccvneg",)),
    Suite("wosm", trial_wosm, 100, ("wosm_to_ccvneg",)),
    Suite("sm-fixpoint", trial_sm_fixpoint, 200,
          ("iterate_to_fixed_point", "substitute_stars", "solve")),
]}

# Every reduction-style operation must be exercised by some suite.
REQUIRED_COVERAGE = (
    "ccv_to_3vlfmm", "vlfmm_to_ccv", "ccv_to_3lfmm", "ccvneg_to_ccv",
    "lfmm_to_ccvneg", "trivalued_to_boolean", "reachability_to_ccv",
    "conn_matrix_via_ccv", "lfmm_to_sm", "mosm_to_ccvneg", "wosm_to_ccvneg",
    "iterate_to_fixed_point", "substitute_stars", "solve",
)


def default_trials(suite: str) -> int:
    env = os.environ.get(TRIALS_ENV)
    return int(env) if env else SUITES[suite].default_trials


@dataclass(frozen=True)
class SweepResult:
    suite: str
    trials: int
    failures: tuple[int, ...]  # failing seeds, in trial order

    @property
    def passed(self) -> int:
        return self.trials - len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        return f"{self.passed}/{self.trials} pass"


def run_suite(name: str, trials: int | None = None, seed: int = 0) -> SweepResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    suite = SUITES[name]
    trials = default_trials(name) if trials is None else trials
    failures = []
    for t in range(trials):
        s = O.trial_seed(seed, t)
        try:
            ok = suite.trial(s)
        except Exception:  # a crash counts as a failed trial, reported by seed
            ok = False
        if not ok:
            failures.append(s)
    return SweepResult(name, trials, tuple(failures))
