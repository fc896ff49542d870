"""Comparator circuits, the problems they capture, and stable marriage by fixed point."""

from .circuit import (
    ONE, STAR, ZERO, CcvInstance, Circuit, CircuitError, Comparator, Domain, Dummy,
    LayerTrace, Negation, Tri, chain, evaluate, evaluate_circuit, evaluate_designated,
    normalize_directions, ones_per_layer, run, validate_circuit,
)
from .graphs import (
    BipartiteGraph, DiGraph, GraphError, bfs_conn_matrix, check_lfm_certificate,
    check_topological, layered_expansion, lfm_matching, lfmm_decide_edge,
    reachable_set, vlfmm_decide_vertex,
)
from .marriage import (
    MarriageError, SmInstance, apply_block, build_marriage_block, embed_marriage,
    extract_marriage, initial_state, iterate_to_fixed_point, lfmm_to_sm,
    mosm_to_ccvneg, pair_table, solve, star_budget, substitute_stars, wosm_to_ccvneg,
)
from .reductions import (
    LfmmInstance, ReductionError, ReductionOutput, answer, ccv_to_3lfmm, ccv_to_3vlfmm,
    ccvneg_to_ccv, conn_matrix_via_ccv, lfmm_to_ccvneg, reachability_to_ccv,
    trivalued_to_boolean, vlfmm_to_ccv, vlfmm_to_lfmm,
)
from .textio import ParseError, parse, serialize

__version__ = "0.1.0"
