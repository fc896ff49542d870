"""Line-oriented text formats for circuits, graphs, SM instances and decode sidecars.

Circuit::

    circuit <m> bool|tri
    c <i> <j>          # comparator, minimum to wire i
    n <i>              # negation
    d <i>              # dummy
    in <v0> <v1> ...   # optional input line, symbols 0 1 *

Graphs: ``bipartite <m> <n>`` or ``digraph <n>`` followed by ``e <i> <j>``
lines.  SM: ``sm <n>``, then n men's lists and n women's lists.  Decode
sidecars hold ``decode <kind> <index ...>`` lines.  Blank lines and ``#``
comments are ignored everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .circuit import Circuit, Comparator, Domain, Dummy, Negation, Tri
from .graphs import BipartiteGraph, DiGraph
from .marriage import SmInstance


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class CircuitFile:
    circuit: Circuit
    inputs: tuple[Tri, ...] | None = None


@dataclass(frozen=True)
class DecodeLine:
    kind: str
    index: tuple[int, ...]


Parsed = Union[CircuitFile, BipartiteGraph, DiGraph, SmInstance]


class _Tokens:
    """Non-empty lines as (line number, [(column, token), ...])."""

    def __init__(self, text: str):
        self.lines = []
        for no, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0]
            toks, col = [], 0
            for tok in body.split():
                col = body.index(tok, col)
                toks.append((col + 1, tok))
                col += len(tok)
            if toks:
                self.lines.append((no, toks))
        self.last = len(text.splitlines()) or 1


def _int(tok, line, lo=0, hi=None, what="index"):
    col, s = tok
    try:
        v = int(s)
    except ValueError:
        raise ParseError(f"expected an integer, got {s!r}", line, col) from None
    if v < lo or (hi is not None and v >= hi):
        raise ParseError(f"{what} out of range: {v}", line, col)
    return v


def _arity(toks, k, line):
    if len(toks) != k:
        col = toks[min(len(toks), k) - 1][0] if toks else 1
        raise ParseError(f"expected {k - 1} argument(s) after {toks[0][1]!r}", line, col)


def parse(text: str) -> Parsed:
    t = _Tokens(text)
    if not t.lines:
        raise ParseError("empty input", 1)
    line, toks = t.lines[0]
    head = toks[0][1]
    body = t.lines[1:]
    if head == "circuit":
        return _parse_circuit(line, toks, body)
    if head == "bipartite":
        return _parse_bipartite(line, toks, body)
    if head == "digraph":
        return _parse_digraph(line, toks, body)
    if head == "sm":
        return _parse_sm(line, toks, body, t.last)
    raise ParseError(f"unknown header {head!r}", line, toks[0][0])


def _parse_circuit(line, toks, body) -> CircuitFile:
    _arity(toks, 3, line)
    m = _int(toks[1], line, what="wire count")
    dom = toks[2][1]
    if dom not in ("bool", "tri"):
        raise ParseError(f"unknown domain {dom!r}", line, toks[2][0])
    domain = Domain(dom)
    gates, inputs = [], None
    for no, tk in body:
        kind = tk[0][1]
        if kind == "c":
            _arity(tk, 3, no)
            i, j = (_int(x, no, hi=m, what="wire index") for x in tk[1:])
            if i == j:
                raise ParseError("comparator joins a wire to itself", no, tk[2][0])
            gates.append(Comparator(i, j))
        elif kind in ("n", "d"):
            _arity(tk, 2, no)
            w = _int(tk[1], no, hi=m, what="wire index")
            if kind == "n" and domain is Domain.TRI:
                raise ParseError("negation not allowed in three-valued domain", no, tk[0][0])
            gates.append(Negation(w) if kind == "n" else Dummy(w))
        elif kind == "in":
            if inputs is not None:
                raise ParseError("duplicate input line", no, tk[0][0])
            if len(tk) - 1 != m:
                raise ParseError(f"expected {m} input values, got {len(tk) - 1}", no, tk[0][0])
            vals = []
            for col, s in tk[1:]:
                try:
                    v = Tri.parse(s)
                except ValueError:
                    raise ParseError(f"not a wire value: {s!r}", no, col) from None
                if v is Tri.STAR and domain is Domain.BOOL:
                    raise ParseError("star input on a Boolean circuit", no, col)
                vals.append(v)
            inputs = tuple(vals)
        else:
            raise ParseError(f"unknown circuit line {kind!r}", no, tk[0][0])
    return CircuitFile(Circuit(m, tuple(gates), domain), inputs)


def _edges(body, nb, nt, names):
    edges = []
    for no, tk in body:
        if tk[0][1] != "e":
            raise ParseError(f"unknown graph line {tk[0][1]!r}", no, tk[0][0])
        _arity(tk, 3, no)
        i = _int(tk[1], no, hi=nb, what=names[0])
        j = _int(tk[2], no, hi=nt, what=names[1])
        if (i, j) in edges:
            raise ParseError(f"duplicate edge ({i}, {j})", no, tk[0][0])
        edges.append((i, j))
    return frozenset(edges)


def _parse_bipartite(line, toks, body) -> BipartiteGraph:
    _arity(toks, 3, line)
    m = _int(toks[1], line, what="bottom count")
    n = _int(toks[2], line, what="top count")
    return BipartiteGraph(m, n, _edges(body, m, n, ("bottom index", "top index")))


def _parse_digraph(line, toks, body) -> DiGraph:
    _arity(toks, 2, line)
    n = _int(toks[1], line, lo=1, what="vertex count")
    return DiGraph(n, _edges(body, n, n, ("vertex index", "vertex index")))


def _parse_sm(line, toks, body, last) -> SmInstance:
    _arity(toks, 2, line)
    n = _int(toks[1], line, lo=1, what="instance size")
    if len(body) != 2 * n:
        where = body[2 * n][0] if len(body) > 2 * n else last
        raise ParseError(f"expected {2 * n} preference lines, got {len(body)}", where)
    lists = []
    for no, tk in body:
        if len(tk) != n:
            raise ParseError(f"expected {n} entries, got {len(tk)}", no, tk[0][0])
        row = [_int(x, no, hi=n, what="person index") for x in tk]
        if len(set(row)) != n:
            raise ParseError("preference list is not a permutation", no, tk[0][0])
        lists.append(tuple(row))
    return SmInstance(n, tuple(lists[:n]), tuple(lists[n:]))


def serialize(obj) -> str:
    if isinstance(obj, Circuit):
        obj = CircuitFile(obj)
    if isinstance(obj, CircuitFile):
        c = obj.circuit
        out = [f"circuit {c.num_wires} {c.domain.value}"]
        for g in c.gates:
            if isinstance(g, Comparator):
                out.append(f"c {g.min_wire} {g.max_wire}")
            elif isinstance(g, Negation):
                out.append(f"n {g.wire}")
            else:
                out.append(f"d {g.wire}")
        if obj.inputs is not None:
            out.append("in " + " ".join(str(Tri.parse(v)) for v in obj.inputs))
        return "\n".join(out) + "\n"
    if isinstance(obj, BipartiteGraph):
        out = [f"bipartite {obj.num_bottom} {obj.num_top}"]
        out += [f"e {i} {j}" for i, j in sorted(obj.edges)]
        return "\n".join(out) + "\n"
    if isinstance(obj, DiGraph):
        out = [f"digraph {obj.num_vertices}"]
        out += [f"e {i} {j}" for i, j in sorted(obj.edges)]
        return "\n".join(out) + "\n"
    if isinstance(obj, SmInstance):
        out = [f"sm {obj.n}"]
        out += [" ".join(map(str, p)) for p in obj.men_prefs + obj.women_prefs]
        return "\n".join(out) + "\n"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def serialize_decode(lines) -> str:
    return "".join(f"decode {d.kind} {' '.join(map(str, d.index))}\n" for d in lines)


def parse_decode(text: str) -> list[DecodeLine]:
    out = []
    for no, tk in _Tokens(text).lines:
        if tk[0][1] != "decode" or len(tk) < 3:
            raise ParseError("expected 'decode <kind> <index ...>'", no, tk[0][0])
        out.append(DecodeLine(tk[1][1], tuple(_int(x, no) for x in tk[2:])))
    return out
