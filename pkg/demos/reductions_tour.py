"""
A tour of the reductions
========================

Push one circuit through the matching reductions and back, then answer a
reachability question with a comparator circuit.
"""

from comparator_circuits import (
    BipartiteGraph, CcvInstance, Circuit, Comparator, DiGraph, Negation, evaluate_designated,
)
from comparator_circuits.graphs import bfs_conn_matrix, lfm_matching
from comparator_circuits.reductions import (
    answer, ccv_to_3lfmm, ccv_to_3vlfmm, ccvneg_to_ccv, conn_matrix_via_ccv, vlfmm_to_ccv,
)

# start with a three-wire circuit and ask about its last wire
inst = CcvInstance(Circuit(3, (Comparator(1, 0), Comparator(2, 1))), (0, 1, 1), 2)
print("direct evaluation:", int(evaluate_designated(inst)))

# the same question as a vertex and as an edge of a degree-3 greedy matching
v = ccv_to_3vlfmm(inst)
e = ccv_to_3lfmm(inst)
print("vertex form:", v.target.graph.num_bottom, "x", v.target.graph.num_top, "->", answer(v))
print("edge form:  ", e.target.graph.num_bottom, "x", e.target.graph.num_top, "->", answer(e))

# and back again: any top vertex question becomes a circuit
g = BipartiteGraph(3, 4, frozenset({(0, 0), (0, 1), (0, 2), (1, 0), (1, 2), (2, 1), (2, 3)}))
print("greedy matching:", sorted(lfm_matching(g)))
for top in range(4):
    print(f"  top {top} matched?", answer(vlfmm_to_ccv(g, top)))

# negation gates disappear once every wire carries its complement alongside
neg = CcvInstance(Circuit(3, (Comparator(1, 0), Comparator(2, 1), Negation(2))), (0, 1, 1), 0)
out = ccvneg_to_ccv(neg)
print("negation-free copy has", out.target.circuit.num_wires, "wires and answers", answer(out))

# reachability in a small digraph, all pairs at once
dg = DiGraph(5, frozenset({(0, 1), (0, 2), (2, 3), (2, 4), (4, 1)}))
U = conn_matrix_via_ccv(dg)
print(U.astype(int))
print("agrees with BFS:", bool((U == bfs_conn_matrix(dg)).all()))
