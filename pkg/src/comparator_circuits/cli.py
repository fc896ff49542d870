"""Command-line entry point.

Exit codes: 0 success, 1 domain error, 2 parse error (or bad flags),
3 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .circuit import CcvInstance, evaluate, evaluate_designated
from .graphs import BipartiteGraph, DiGraph
from .marriage import SmInstance, lfmm_to_sm, mosm_to_ccvneg, solve, wosm_to_ccvneg
from .reductions import (
    answer, ccv_to_3lfmm, ccv_to_3vlfmm, ccvneg_to_ccv,
    conn_matrix_via_ccv, lfmm_to_ccvneg, reachability_to_ccv, trivalued_to_boolean,
    vlfmm_to_ccv,
)
from .textio import CircuitFile, DecodeLine, ParseError, parse, serialize, serialize_decode
from .verify import SUITES, run_suite

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _load(path: str, want):
    obj = parse(Path(path).read_text())
    if not isinstance(obj, want):
        raise UsageError(f"{path}: expected a {want.__name__} file")
    return obj


def _ccv(path: str, wire: int | None) -> CcvInstance:
    cf = _load(path, CircuitFile)
    if cf.inputs is None:
        raise UsageError(f"{path}: circuit file has no 'in' line")
    return CcvInstance(cf.circuit, cf.inputs, 0 if wire is None else wire)


def _ints(q, k: int, what: str) -> tuple[int, ...]:
    if q is None or len(q) != k:
        raise UsageError(f"--query needs {k} integer(s): {what}")
    return tuple(q)


def cmd_eval(args) -> int:
    inst = _ccv(args.circuit, args.wire)
    if args.trace:
        print(evaluate(inst).format())
    print(evaluate_designated(inst))
    return EXIT_OK


# (from, to) -> builder(source object, query) -> (target object, decode lines)
def _reduce_ccv_3vlfmm(path, q):
    out = ccv_to_3vlfmm(_ccv(path, _ints(q, 1, "wire")[0]))
    return out.target.graph, [DecodeLine("top", out.target.index)]


def _reduce_ccv_3lfmm(path, q):
    out = ccv_to_3lfmm(_ccv(path, _ints(q, 1, "wire")[0]))
    return out.target.graph, [DecodeLine("edge", out.target.index)]


def _reduce_vlfmm_ccv(path, q):
    out = vlfmm_to_ccv(_load(path, BipartiteGraph), _ints(q, 1, "top vertex")[0])
    return _ccv_target(out.target)


def _reduce_lfmm_ccvneg(path, q):
    out = lfmm_to_ccvneg(_load(path, BipartiteGraph), _ints(q, 2, "bottom top"))
    return _ccv_target(out.target)


def _reduce_ccvneg_ccv(path, q):
    return _ccv_target(ccvneg_to_ccv(_ccv(path, _ints(q, 1, "wire")[0])).target)


def _reduce_tri_ccv(path, q):
    out = trivalued_to_boolean(_ccv(path, _ints(q, 1, "wire")[0]))
    lines = [DecodeLine("wire", (out.target.designated_wire,))]
    lines += [DecodeLine("rails", (w, a, b)) for w, (a, b) in enumerate(out.wire_map)]
    return CircuitFile(out.target.circuit, out.target.inputs), lines


def _reduce_reach_ccv(path, q):
    dg = _load(path, DiGraph)
    target = _ints(q, 1, "target vertex")[0] if q else None
    out = reachability_to_ccv(dg, target)
    obj, lines = _ccv_target(out.target)
    return obj, lines + [DecodeLine("vertex", (v, w)) for v, w in enumerate(out.wire_map)]


def _reduce_lfmm_sm(path, q):
    red = lfmm_to_sm(_load(path, BipartiteGraph))
    return red.sm, [DecodeLine("restrict", (red.n,))]


def _reduce_sm_ccvneg(build):
    def go(path, q):
        m, w = _ints(q, 2, "man woman")
        return _ccv_target(build(_load(path, SmInstance), m, w))
    return go


def _ccv_target(inst: CcvInstance):
    return CircuitFile(inst.circuit, inst.inputs), [DecodeLine("wire", (inst.designated_wire,))]


REDUCE = {
    ("ccv", "3vlfmm"): _reduce_ccv_3vlfmm,
    ("ccv", "3lfmm"): _reduce_ccv_3lfmm,
    ("vlfmm", "ccv"): _reduce_vlfmm_ccv,
    ("lfmm", "ccvneg"): _reduce_lfmm_ccvneg,
    ("ccvneg", "ccv"): _reduce_ccvneg_ccv,
    ("tri", "ccv"): _reduce_tri_ccv,
    ("reach", "ccv"): _reduce_reach_ccv,
    ("lfmm", "sm"): _reduce_lfmm_sm,
    ("mosm", "ccvneg"): _reduce_sm_ccvneg(mosm_to_ccvneg),
    ("wosm", "ccvneg"): _reduce_sm_ccvneg(wosm_to_ccvneg),
}


def cmd_reduce(args) -> int:
    key = (args.src, args.dst)
    if key not in REDUCE:
        pairs = ", ".join(f"{a}->{b}" for a, b in REDUCE)
        raise UsageError(f"no reduction {args.src}->{args.dst}; available: {pairs}")
    obj, lines = REDUCE[key](args.inp, args.query)
    out = Path(args.out)
    out.write_text(serialize(obj))
    Path(str(out) + ".decode").write_text(serialize_decode(lines))
    return EXIT_OK


def cmd_sm_solve(args) -> int:
    for m, w in sorted(solve(_load(args.inp, SmInstance), args.side)):
        print(f"{m} {w}")
    return EXIT_OK


def cmd_sm_decide(args) -> int:
    sm = _load(args.inp, SmInstance)
    build = mosm_to_ccvneg if args.side == "man" else wosm_to_ccvneg
    print(1 if answer(build(sm, args.man, args.woman)) else 0)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    ok = True
    for name in names:
        r = run_suite(name, args.trials, args.seed)
        prefix = f"{name}: " if len(names) > 1 else ""
        print(prefix + r.summary())
        if not r.ok:
            print(f"{prefix}failing seeds: {' '.join(map(str, r.failures[:20]))}")
            ok = False
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_conn(args) -> int:
    U = conn_matrix_via_ccv(_load(args.inp, DiGraph))
    for row in U:
        print(" ".join("1" if v else "0" for v in row))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="comparator-circuits",
                                description="Comparator circuits, matchings and stable marriage.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate a circuit file")
    e.add_argument("--circuit", required=True)
    e.add_argument("--wire", type=int, required=True)
    e.add_argument("--trace", action="store_true", help="print every layer first")
    e.set_defaults(func=cmd_eval)

    r = sub.add_parser("reduce", help="compile an instance into another problem")
    r.add_argument("--from", dest="src", required=True,
                   choices=sorted({a for a, _ in REDUCE}))
    r.add_argument("--to", dest="dst", required=True, choices=sorted({b for _, b in REDUCE}))
    r.add_argument("--in", dest="inp", required=True)
    r.add_argument("--out", required=True, help="target file; the decode sidecar gets '.decode' appended")
    r.add_argument("--query", type=int, nargs="+",
                   help="designated object: wire, top vertex, 'bottom top' edge or 'man woman' pair")
    r.set_defaults(func=cmd_reduce)

    s = sub.add_parser("sm-solve", help="man- or woman-optimal stable marriage")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--side", choices=("man", "woman"), default="man")
    s.set_defaults(func=cmd_sm_solve)

    d = sub.add_parser("sm-decide", help="is (man, woman) in the optimal marriage, via a circuit")
    d.add_argument("--in", dest="inp", required=True)
    d.add_argument("--man", type=int, required=True)
    d.add_argument("--woman", type=int, required=True)
    d.add_argument("--side", choices=("man", "woman"), default="man")
    d.set_defaults(func=cmd_sm_decide)

    v = sub.add_parser("verify", help="run a seeded cross-check sweep")
    v.add_argument("--suite", required=True, choices=[*SUITES, "all"])
    v.add_argument("--trials", type=int, default=None)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("conn", help="distance-bounded reachability matrix of a digraph")
    c.add_argument("--in", dest="inp", required=True)
    c.set_defaults(func=cmd_conn)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
