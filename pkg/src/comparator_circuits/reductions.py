"""Instance-to-instance compilers between circuit and matching problems.

Every reduction returns a :class:`ReductionOutput`.  Its ``target`` is a new
instance that carries its own question (a designated wire, top vertex or
edge), so ``answer(out)`` decides the source question by solving the target.
``wire_map`` says where each source object lives in the target.

Index conventions (all arithmetic, nothing stored):

* ccv -> 3vlfmm: top ``x_l`` and bottom ``x'_l`` both get index ``l*m + x``.
* vlfmm -> ccv: top ``t`` is wire ``t``; bottom ``b`` is wire ``num_top + b``.
* ccvneg -> ccv: wire ``w`` is ``2w``, its complement ``2w + 1``, scratch ``2m``.
* three-valued -> Boolean: wire ``w`` becomes rails ``(2w, 2w + 1)``.
* reachability: ``iota_k`` is wire ``k``, ``nu_i`` is wire ``n + i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .circuit import (
    ONE, STAR, ZERO, CcvInstance, Circuit, CircuitError, Comparator, Domain, Dummy,
    Negation, Tri, check_circuit, evaluate_designated, is_directed,
    normalize_directions, run,
)
from .graphs import (
    BipartiteGraph, DiGraph, GraphError, check_topological, layered_expansion,
    lfmm_decide_edge, vlfmm_decide_vertex,
)


class ReductionError(ValueError):
    pass


@dataclass(frozen=True)
class LfmmInstance:
    """A bipartite graph plus a question: ``kind`` is ``"edge"`` or ``"top"``."""

    graph: BipartiteGraph
    kind: str
    index: tuple[int, ...]
    degree_bound: int | None = None

    def __post_init__(self):
        if self.kind not in ("edge", "top"):
            raise ReductionError(f"unknown LFMM query kind {self.kind!r}")
        if self.degree_bound is not None and self.graph.max_degree() > self.degree_bound:
            raise ReductionError(f"graph degree exceeds {self.degree_bound}")


Target = Union[CcvInstance, LfmmInstance]


@dataclass(frozen=True)
class ReductionOutput:
    target: Target
    wire_map: tuple = ()

    @property
    def decode(self) -> tuple[str, tuple[int, ...]]:
        """The target object whose status answers the source question."""
        t = self.target
        if isinstance(t, CcvInstance):
            return ("wire", (t.designated_wire,))
        return (t.kind, t.index)


def answer(out: ReductionOutput | Target) -> bool:
    t = out.target if isinstance(out, ReductionOutput) else out
    if isinstance(t, CcvInstance):
        return evaluate_designated(t) == ONE
    if t.kind == "edge":
        return lfmm_decide_edge(t.graph, *t.index)
    return vlfmm_decide_vertex(t.graph, t.index[0])


# --- CCV -> 3vLFMM ---------------------------------------------------------

def _require_boolean_monotone(inst: CcvInstance) -> None:
    c = inst.circuit
    check_circuit(c)
    if c.domain is not Domain.BOOL:
        raise ReductionError("expected a Boolean circuit")
    if c.has_negation():
        raise ReductionError("negation gates are not allowed here")
    if not 0 <= inst.designated_wire < c.num_wires:
        raise ReductionError("designated wire out of range")


def _upward(inst: CcvInstance) -> tuple[Circuit, tuple[Tri, ...], tuple[int, ...]]:
    c = inst.circuit
    if is_directed(c, "up"):
        return c, inst.inputs, tuple(range(c.num_wires))
    norm = normalize_directions(c, inst.inputs, direction="up")
    return norm.circuit, norm.inputs, norm.wire_map


def ccv_to_3vlfmm(inst: CcvInstance) -> ReductionOutput:
    """Compile a Boolean circuit into a degree-3 bipartite graph.

    Layer ``l`` has a top and a bottom vertex per wire.  A top vertex is
    matched in the lfm-matching exactly when its wire carries 1 after gate
    ``l``.  Circuits with downward comparators are first rebuilt so every
    comparator points upward (maximum to the smaller index).
    """
    _require_boolean_monotone(inst)
    c, inputs, to_norm = _upward(inst)
    m, n = c.num_wires, c.num_gates
    size = m * (n + 1)

    def v(layer, w):
        return layer * m + w

    edges = [(v(0, x), v(0, x)) for x in range(m) if inputs[x] == ONE]
    for layer, g in enumerate(c.gates, start=1):
        touched = ()
        if isinstance(g, Comparator):
            hi, lo = g.max_wire, g.min_wire  # hi < lo after normalization
            edges += [
                (v(layer, hi), v(layer - 1, hi)),
                (v(layer, hi), v(layer, hi)),
                (v(layer, lo), v(layer - 1, lo)),
                (v(layer, lo), v(layer, hi)),
                (v(layer, lo), v(layer, lo)),
            ]
            touched = (hi, lo)
        for z in range(m):
            if z not in touched:
                edges += [(v(layer, z), v(layer - 1, z)), (v(layer, z), v(layer, z))]
    graph = BipartiteGraph(size, size, frozenset(edges))
    wire_map = tuple(v(n, to_norm[w]) for w in range(inst.circuit.num_wires))
    target = LfmmInstance(graph, "top", (wire_map[inst.designated_wire],), degree_bound=3)
    return ReductionOutput(target, wire_map)


def ccv_3vlfmm_edge_budget(inst: CcvInstance) -> int:
    """Edge count of :func:`ccv_to_3vlfmm` on an already-upward circuit."""
    c = inst.circuit
    comparators = sum(isinstance(g, Comparator) for g in c.gates)
    untouched = c.num_wires * c.num_gates - 2 * comparators
    ones = sum(v == ONE for v in inst.inputs)
    return ones + 5 * comparators + 2 * untouched


# --- vLFMM -> CCV ----------------------------------------------------------

def _matching_circuit(g: BipartiteGraph, skip: tuple[int, int] | None = None,
                      offset: int = 0) -> list:
    """Greedy matching as comparators: bottom wires push their 1 to the first free top."""
    gates = []
    for b in range(g.num_bottom):
        bw = offset + g.num_top + b
        nbrs = set(g.bottom_adj[b])
        for t in range(g.num_top):
            if t in nbrs and (b, t) != skip:
                gates.append(Comparator(bw, offset + t))
            else:
                gates.append(Dummy(bw))
    return gates


def vlfmm_to_ccv(g: BipartiteGraph, top: int) -> ReductionOutput:
    if not 0 <= top < g.num_top:
        raise ReductionError(f"top vertex {top} out of range")
    m = g.num_top + g.num_bottom
    circuit = Circuit(m, tuple(_matching_circuit(g)), Domain.BOOL)
    inputs = (ZERO,) * g.num_top + (ONE,) * g.num_bottom
    return ReductionOutput(CcvInstance(circuit, inputs, top), tuple(range(g.num_top)))


# --- CCV -> 3LFMM ----------------------------------------------------------

def vlfmm_to_lfmm(g: BipartiteGraph, top: int) -> ReductionOutput:
    """Add bottom ``w_b`` and top ``w_t`` with edges ``{top, w_b}`` and ``{w_t, w_b}``.

    ``(w_b, w_t)`` is in the new lfm-matching iff ``top`` was matched.
    """
    if not 0 <= top < g.num_top:
        raise ReductionError(f"top vertex {top} out of range")
    if len(g.top_adj[top]) > 2:
        raise ReductionError("designated top vertex has degree above two")
    wb, wt = g.num_bottom, g.num_top
    edges = set(g.edges) | {(wb, top), (wb, wt)}
    g2 = BipartiteGraph(g.num_bottom + 1, g.num_top + 1, frozenset(edges))
    bound = 3 if g2.max_degree() <= 3 else None
    return ReductionOutput(LfmmInstance(g2, "edge", (wb, wt), bound), (top,))


def ccv_to_3lfmm(inst: CcvInstance) -> ReductionOutput:
    first = ccv_to_3vlfmm(inst)
    g, (top,) = first.target.graph, first.target.index
    second = vlfmm_to_lfmm(g, top)
    target = second.target
    return ReductionOutput(LfmmInstance(target.graph, "edge", target.index, 3), first.wire_map)


# --- CCV with negation -> CCV ----------------------------------------------

def ccvneg_to_ccv(inst: CcvInstance) -> ReductionOutput:
    """Double-rail translation: each wire gets a complement wire, plus a scratch wire.

    Negation of ``z`` swaps ``z`` and its complement through the scratch
    wire, which is back at 0 afterwards.
    """
    c = inst.circuit
    check_circuit(c)
    if c.domain is not Domain.BOOL:
        raise ReductionError("expected a Boolean circuit")
    m = c.num_wires
    t = 2 * m
    gates = []
    for g in c.gates:
        if isinstance(g, Comparator):
            y, x = g.min_wire, g.max_wire
            gates.append(Comparator(2 * y, 2 * x))
            gates.append(Comparator(2 * x + 1, 2 * y + 1))
        elif isinstance(g, Negation):
            z = g.wire
            gates += [Comparator(2 * z, t), Comparator(2 * z + 1, 2 * z), Comparator(t, 2 * z + 1)]
        else:
            gates.append(Dummy(2 * g.wire))
    inputs = []
    for v in inst.inputs:
        inputs += [v, Tri(1 - int(v))]
    inputs.append(ZERO)
    out = CcvInstance(Circuit(2 * m + 1, tuple(gates), Domain.BOOL), inputs,
                      2 * inst.designated_wire)
    return ReductionOutput(out, tuple(2 * w for w in range(m)))


def ccvneg_block_ends(c: Circuit) -> list[int]:
    """Trace rows of :func:`ccvneg_to_ccv`'s output at which each source gate is complete."""
    ends, pos = [0], 0
    for g in c.gates:
        pos += 2 if isinstance(g, Comparator) else 3 if isinstance(g, Negation) else 1
        ends.append(pos)
    return ends


# --- LFMM -> CCV with negation ---------------------------------------------

def lfmm_to_ccvneg(g: BipartiteGraph, edge: tuple[int, int]) -> ReductionOutput:
    """Decide ``edge in lfm(g)`` with two greedy-matching copies and one negation.

    Bottoms after ``y`` and tops after ``c`` are dropped.  The primed copy
    omits the ``(y, c)`` comparator, so ``c'`` ends at 1 iff some earlier
    bottom took ``c``.  The final ``Comparator(c, c')`` leaves
    ``c and not c'`` on ``c``.
    """
    y, cc = edge
    if edge not in g.edges:
        raise ReductionError(f"designated edge {edge} is not in the graph")
    tg = BipartiteGraph(y + 1, cc + 1,
                        frozenset((i, j) for i, j in g.edges if i <= y and j <= cc))
    half = tg.num_top + tg.num_bottom
    gates = _matching_circuit(tg) + _matching_circuit(tg, skip=(y, cc), offset=half)
    c_prime = half + cc
    gates += [Negation(c_prime), Comparator(cc, c_prime)]
    inputs = ((ZERO,) * tg.num_top + (ONE,) * tg.num_bottom) * 2
    out = CcvInstance(Circuit(2 * half, tuple(gates), Domain.BOOL), inputs, cc)
    return ReductionOutput(out, (cc,))


# --- three-valued CCV -> CCV -----------------------------------------------

RAIL_CODE = {ZERO: (ZERO, ZERO), ONE: (ONE, ONE), STAR: (ZERO, ONE)}
RAIL_DECODE = {(0, 0): ZERO, (1, 1): ONE, (0, 1): STAR}


def encode_rails(values) -> list[Tri]:
    out = []
    for v in values:
        out += RAIL_CODE[Tri.parse(v)]
    return out


def decode_rails(values, wire_map) -> tuple[Tri, ...]:
    try:
        return tuple(RAIL_DECODE[(int(values[a]), int(values[b]))] for a, b in wire_map)
    except KeyError as e:
        raise ReductionError(f"invalid rail pair {e.args[0]}") from None


def trivalued_circuit_to_boolean(c: Circuit) -> Circuit:
    check_circuit(c)
    if c.has_negation():
        raise ReductionError("negation gates are not allowed in three-valued circuits")
    gates = []
    for g in c.gates:
        if isinstance(g, Comparator):
            gates.append(Comparator(2 * g.min_wire, 2 * g.max_wire))
            gates.append(Comparator(2 * g.min_wire + 1, 2 * g.max_wire + 1))
        else:
            gates.append(Dummy(2 * g.wire))
    return Circuit(2 * c.num_wires, tuple(gates), Domain.BOOL)


def trivalued_to_boolean(inst: CcvInstance) -> ReductionOutput:
    """Encode 0, 1, * as rail pairs (0,0), (1,1), (0,1); every gate doubles.

    A final comparator on the designated rails leaves their AND on the first
    rail, which becomes the designated Boolean wire.  On valid encodings the
    first rail never exceeds the second, so that gate leaves every pair intact.
    """
    c = inst.circuit
    boolean = trivalued_circuit_to_boolean(c)
    d = inst.designated_wire
    gates = boolean.gates + (Comparator(2 * d, 2 * d + 1),)
    out = CcvInstance(Circuit(boolean.num_wires, gates, Domain.BOOL),
                      encode_rails(inst.inputs), 2 * d)
    return ReductionOutput(out, tuple((2 * w, 2 * w + 1) for w in range(c.num_wires)))


# --- Reachability -> CCV ---------------------------------------------------

def reachability_gadget_size(n: int) -> int:
    return 1 + n * (n - 1) // 2


def reachability_to_ccv(dg: DiGraph, target: int | None = None) -> ReductionOutput:
    """n gadgets; each feeds a 1 into ``nu_0`` and then tries every pair ``i < j``.

    ``nu_i`` ends at 1 iff vertex ``i`` is reachable from vertex 0.
    """
    if not check_topological(dg):
        raise ReductionError("graph has an edge (i, j) with i >= j")
    n = dg.num_vertices
    if n == 0:
        raise ReductionError("empty graph")
    gates = []
    for k in range(n):
        gates.append(Comparator(k, n))
        for i in range(n):
            for j in range(i + 1, n):
                if (i, j) in dg.edges:
                    gates.append(Comparator(n + i, n + j))
                else:
                    gates.append(Dummy(n + i))
    inputs = (ONE,) * n + (ZERO,) * n
    target = n - 1 if target is None else target
    inst = CcvInstance(Circuit(2 * n, tuple(gates), Domain.BOOL), inputs, n + target)
    return ReductionOutput(inst, tuple(n + i for i in range(n)))


def reachable_via_ccv(dg: DiGraph) -> frozenset[int]:
    out = reachability_to_ccv(dg)
    vals = run(out.target.circuit, out.target.inputs)
    return frozenset(i for i, w in enumerate(out.wire_map) if vals[w] == ONE)


def conn_matrix_via_ccv(dg: DiGraph) -> np.ndarray:
    """``U[d, i]`` is true iff vertex ``i`` is within distance ``d`` of vertex 0."""
    n = dg.num_vertices
    if n == 0:
        raise GraphError("empty graph")
    lay = layered_expansion(dg)
    out = reachability_to_ccv(lay.graph)
    vals = run(out.target.circuit, out.target.inputs)
    U = np.zeros((n, n), dtype=bool)
    for d in range(n):
        for i in range(n):
            U[d, i] = vals[out.wire_map[lay.vertex(d, i)]] == ONE
    return U


REDUCTIONS = {
    "ccv_to_3vlfmm": ccv_to_3vlfmm,
    "vlfmm_to_ccv": vlfmm_to_ccv,
    "ccv_to_3lfmm": ccv_to_3lfmm,
    "ccvneg_to_ccv": ccvneg_to_ccv,
    "lfmm_to_ccvneg": lfmm_to_ccvneg,
    "trivalued_to_boolean": trivalued_to_boolean,
    "reachability_to_ccv": reachability_to_ccv,
    "conn_matrix_via_ccv": conn_matrix_via_ccv,
}

__all__ = [
    "LfmmInstance", "ReductionError", "ReductionOutput", "answer", "REDUCTIONS",
    "CircuitError", *REDUCTIONS,
]
