"""Brute-force references and seeded instance generators.

Everything here is deliberately naive so that it can serve as an independent
check on the circuit constructions.  Generators draw from numpy's PCG64
(``numpy.random.default_rng``); trial ``t`` of a sweep with base seed ``s``
uses seed ``s + t``.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import TYPE_CHECKING

import numpy as np

from .circuit import Circuit, CcvInstance, Comparator, Domain, Dummy, Negation, Tri
from .graphs import BipartiteGraph, DiGraph

if TYPE_CHECKING:
    from .marriage import SmInstance


def rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def trial_seed(base: int, trial: int) -> int:
    return base + trial


def gale_shapley(sm: SmInstance, proposing: str = "men") -> frozenset[tuple[int, int]]:
    """Deferred acceptance; returns (man, woman) pairs, optimal for the proposing side."""
    if proposing not in ("men", "women"):
        raise ValueError("proposing must be 'men' or 'women'")
    if proposing == "men":
        props, recv = sm.men_prefs, sm.women_prefs
    else:
        props, recv = sm.women_prefs, sm.men_prefs
    n = sm.n
    rank = [[0] * n for _ in range(n)]
    for r in range(n):
        for k, p in enumerate(recv[r]):
            rank[r][p] = k
    nxt = [0] * n
    held = [-1] * n  # receiver -> proposer
    free = deque(range(n))
    while free:
        p = free.popleft()
        r = props[p][nxt[p]]
        nxt[p] += 1
        cur = held[r]
        if cur < 0:
            held[r] = p
        elif rank[r][p] < rank[r][cur]:
            held[r] = p
            free.append(cur)
        else:
            free.append(p)
    if proposing == "men":
        return frozenset((held[w], w) for w in range(n))
    return frozenset((m, held[m]) for m in range(n))


def _is_perfect(sm: SmInstance, M) -> bool:
    men = [m for m, _ in M]
    women = [w for _, w in M]
    return (len(M) == sm.n and sorted(men) == list(range(sm.n))
            and sorted(women) == list(range(sm.n)))


def is_stable(sm: SmInstance, M) -> bool:
    """True iff the perfect matching ``M`` has no blocking pair."""
    M = frozenset(M)
    if not _is_perfect(sm, M):
        raise ValueError("not a perfect matching")
    wife = {m: w for m, w in M}
    husband = {w: m for m, w in M}
    mrank = [{w: k for k, w in enumerate(p)} for p in sm.men_prefs]
    wrank = [{m: k for k, m in enumerate(p)} for p in sm.women_prefs]
    for m in range(sm.n):
        for w in range(sm.n):
            if mrank[m][w] < mrank[m][wife[m]] and wrank[w][m] < wrank[w][husband[w]]:
                return False
    return True


def enumerate_stable(sm: SmInstance, max_n: int = 6) -> list[frozenset[tuple[int, int]]]:
    if sm.n > max_n:
        raise ValueError(f"enumerate_stable is limited to n <= {max_n}")
    found = []
    for perm in itertools.permutations(range(sm.n)):
        M = frozenset(enumerate(perm))
        if is_stable(sm, M):
            found.append(M)
    return found


def all_sm_instances(n: int):
    """Every instance of size ``n`` (there are ``(n!)^(2n)`` of them)."""
    from .marriage import SmInstance

    perms = list(itertools.permutations(range(n)))
    for men in itertools.product(perms, repeat=n):
        for women in itertools.product(perms, repeat=n):
            yield SmInstance(n, men, women)


def random_sm(seed: int, n: int) -> SmInstance:
    from .marriage import SmInstance

    g = rng(seed)
    men = [tuple(int(x) for x in g.permutation(n)) for _ in range(n)]
    women = [tuple(int(x) for x in g.permutation(n)) for _ in range(n)]
    return SmInstance(n, men, women)


def random_circuit(seed: int, m: int, n: int, domain: Domain | str = Domain.BOOL,
                   with_negation: bool = False, dummy_rate: float = 0.1,
                   negation_rate: float = 0.2) -> Circuit:
    domain = Domain(domain)
    if with_negation and domain is Domain.TRI:
        raise ValueError("three-valued circuits cannot contain negation gates")
    if m < 1:
        raise ValueError("need at least one wire")
    g = rng(seed)
    gates = []
    for _ in range(n):
        u = g.random()
        if with_negation and u < negation_rate:
            gates.append(Negation(int(g.integers(m))))
        elif m == 1 or u < negation_rate + dummy_rate:
            gates.append(Dummy(int(g.integers(m))))
        else:
            a, b = g.choice(m, size=2, replace=False)
            gates.append(Comparator(int(a), int(b)))
    return Circuit(m, tuple(gates), domain)


def random_inputs(seed: int, m: int, domain: Domain | str = Domain.BOOL) -> tuple[Tri, ...]:
    g = rng(seed)
    k = 3 if Domain(domain) is Domain.TRI else 2
    return tuple(Tri(int(v)) for v in g.integers(k, size=m))


def random_ccv_instance(seed: int, m: int, n: int, domain: Domain | str = Domain.BOOL,
                        with_negation: bool = False) -> CcvInstance:
    g = rng(seed)
    s1, s2, w = (int(x) for x in g.integers(2**31, size=3))
    c = random_circuit(s1, m, n, domain, with_negation)
    return CcvInstance(c, random_inputs(s2, m, domain), w % m)


def random_bipartite(seed: int, m: int, n: int, degree_bound: int | None = None,
                     density: float = 0.4) -> BipartiteGraph:
    g = rng(seed)
    cand = [(i, j) for i in range(m) for j in range(n)]
    order = g.permutation(len(cand)) if cand else []
    bdeg, tdeg = [0] * m, [0] * n
    edges = []
    for k in order:
        if g.random() >= density:
            continue
        i, j = cand[k]
        if degree_bound is not None and (bdeg[i] >= degree_bound or tdeg[j] >= degree_bound):
            continue
        bdeg[i] += 1
        tdeg[j] += 1
        edges.append((i, j))
    return BipartiteGraph(m, n, frozenset(edges))


def random_topological_dag(seed: int, n: int, density: float = 0.3) -> DiGraph:
    g = rng(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if g.random() < density]
    return DiGraph(n, frozenset(edges))


def random_digraph(seed: int, n: int, density: float = 0.25) -> DiGraph:
    g = rng(seed)
    edges = [(i, j) for i in range(n) for j in range(n) if i != j and g.random() < density]
    return DiGraph(n, frozenset(edges))
