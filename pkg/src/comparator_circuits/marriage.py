"""Stable marriage through a three-valued comparator circuit.

Slot layout.  The pair ``(m, w)`` has index ``p = m*n + w``.  State
position ``2p`` holds man ``m``'s slot at the rank where he lists ``w``;
position ``2p + 1`` holds woman ``w``'s slot at the rank where she lists
``m``.  A state vector therefore has length ``2n^2`` and each pair of
positions is one man slot followed by the woman slot it is paired with.

A block has ``4n^2`` wires: input ports ``0 .. 2n^2-1`` in state order and
output ports ``2n^2 .. 4n^2-1`` in the same order.  Output ports start from
constants (1 at every man's rank-0 port, 0 elsewhere) and are only ever the
maximum end of a forwarding comparator.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .circuit import (
    ONE, STAR, TRI_VALUES, ZERO, CcvInstance, Circuit, Comparator, Domain, Negation, Tri,
    as_tri, chain, refines, run,
)
from .graphs import BipartiteGraph
from .oracles import is_stable
from .reductions import encode_rails, trivalued_circuit_to_boolean


class MarriageError(ValueError):
    pass


MarriageState = tuple  # of Tri, length 2n^2


@dataclass(frozen=True)
class SmInstance:
    n: int
    men_prefs: tuple[tuple[int, ...], ...]
    women_prefs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        men = tuple(tuple(int(x) for x in p) for p in self.men_prefs)
        women = tuple(tuple(int(x) for x in p) for p in self.women_prefs)
        object.__setattr__(self, "men_prefs", men)
        object.__setattr__(self, "women_prefs", women)
        if self.n < 0:
            raise MarriageError("negative instance size")
        perm = list(range(self.n))
        for side, prefs in (("men", men), ("women", women)):
            if len(prefs) != self.n:
                raise MarriageError(f"expected {self.n} {side} preference lists")
            for i, p in enumerate(prefs):
                if sorted(p) != perm:
                    raise MarriageError(f"{side} list {i} is not a permutation of 0..{self.n - 1}")

    @cached_property
    def men_rank(self) -> tuple[tuple[int, ...], ...]:
        """``men_rank[m][w]`` is the position of ``w`` in ``m``'s list."""
        return tuple(_inverse(p) for p in self.men_prefs)

    @cached_property
    def women_rank(self) -> tuple[tuple[int, ...], ...]:
        return tuple(_inverse(p) for p in self.women_prefs)


def _inverse(perm) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for k, x in enumerate(perm):
        inv[x] = k
    return tuple(inv)


# --- slots -----------------------------------------------------------------

def man_slot(sm: SmInstance, m: int, j: int) -> int:
    return 2 * (m * sm.n + sm.men_prefs[m][j])


def woman_slot(sm: SmInstance, w: int, k: int) -> int:
    return 2 * (sm.women_prefs[w][k] * sm.n + w) + 1


@dataclass(frozen=True)
class PairTable:
    """Slot bijection: ``(m, j) <-> (w, k)`` when each names the other at that rank."""

    man_to_woman: dict
    woman_to_man: dict

    def __len__(self) -> int:
        return len(self.man_to_woman)


def pair_table(sm: SmInstance) -> PairTable:
    mw, wm = {}, {}
    for m in range(sm.n):
        for j, w in enumerate(sm.men_prefs[m]):
            k = sm.women_rank[w][m]
            mw[(m, j)] = (w, k)
            wm[(w, k)] = (m, j)
    return PairTable(mw, wm)


def slot_labels(sm: SmInstance) -> tuple[str, ...]:
    labels = [""] * (2 * sm.n * sm.n)
    for m in range(sm.n):
        for j in range(sm.n):
            labels[man_slot(sm, m, j)] = f"m{m}_{j}"
    for w in range(sm.n):
        for k in range(sm.n):
            labels[woman_slot(sm, w, k)] = f"w{w}_{k}"
    return tuple(labels)


# --- the block ---------------------------------------------------------------

@dataclass(frozen=True)
class MarriageBlock:
    circuit: Circuit
    constants: tuple[Tri, ...]  # inputs for the output ports

    @property
    def size(self) -> int:
        return len(self.constants)

    def inputs(self, state) -> tuple[Tri, ...]:
        return tuple(state) + self.constants


@lru_cache(maxsize=256)
def build_marriage_block(sm: SmInstance) -> MarriageBlock:
    n = sm.n
    if n < 1:
        raise MarriageError("marriage block needs n >= 1")
    N = 2 * n * n
    gates = [Comparator(2 * p, 2 * p + 1) for p in range(n * n)]
    for m in range(n):
        for j in range(n - 1):
            gates.append(Comparator(man_slot(sm, m, j), N + man_slot(sm, m, j + 1)))
    for w in range(n):
        for k in range(n - 1):
            gates.append(Comparator(woman_slot(sm, w, k), N + woman_slot(sm, w, k + 1)))
    labels = slot_labels(sm)
    names = tuple(s + "^i" for s in labels) + tuple(s + "^o" for s in labels)
    constants = [ZERO] * N
    for m in range(n):
        constants[man_slot(sm, m, 0)] = ONE
    return MarriageBlock(Circuit(2 * N, tuple(gates), Domain.TRI, names), tuple(constants))


def apply_block(sm: SmInstance, state) -> MarriageState:
    """One application of the block function: feed ``state`` in, read the output ports."""
    block = build_marriage_block(sm)
    if len(state) != block.size:
        raise MarriageError(f"state must have {block.size} entries")
    vals = run(block.circuit, block.inputs(state))
    return tuple(TRI_VALUES[v] for v in vals[block.size:])


def initial_state(sm: SmInstance) -> MarriageState:
    state = [STAR] * (2 * sm.n * sm.n)
    for m in range(sm.n):
        state[man_slot(sm, m, 0)] = ONE
    for w in range(sm.n):
        state[woman_slot(sm, w, 0)] = ZERO
    return tuple(state)


def star_budget(n: int) -> int:
    return 2 * n * n - 2 * n


def is_fixed_point(sm: SmInstance, state) -> bool:
    return apply_block(sm, state) == as_tri(state)


def marriage_iterates(sm: SmInstance) -> list[MarriageState]:
    """``I_0, I_1, ...`` up to the first fixed point (at most ``c(n)`` steps)."""
    states = [initial_state(sm)]
    for _ in range(star_budget(sm.n)):
        nxt = apply_block(sm, states[-1])
        if nxt == states[-1]:
            break
        states.append(nxt)
    if not is_fixed_point(sm, states[-1]):
        raise MarriageError("no fixed point within the star budget")
    return states


def iterate_to_fixed_point(sm: SmInstance) -> MarriageState:
    return marriage_iterates(sm)[-1]


def substitute_stars(sm: SmInstance, state, value) -> MarriageState:
    value = Tri.parse(value)
    if value is STAR:
        raise MarriageError("substitute a Boolean value for stars")
    if not is_fixed_point(sm, state):
        raise MarriageError("state is not a fixed point")
    out = tuple(value if v is STAR else v for v in as_tri(state))
    if not is_fixed_point(sm, out):
        raise MarriageError("substitution did not give a fixed point")
    return out


def extract_marriage(sm: SmInstance, state) -> frozenset[tuple[int, int]]:
    state = as_tri(state)
    if STAR in state:
        raise MarriageError("state is not Boolean")
    if not refines(initial_state(sm), state):
        raise MarriageError("state does not extend the initial state")
    if not is_fixed_point(sm, state):
        raise MarriageError("state is not a fixed point")
    n = sm.n
    M = frozenset((m, w) for m in range(n) for w in range(n)
                  if state[2 * (m * n + w)] == ONE and state[2 * (m * n + w) + 1] == ZERO)
    if len(M) != n or len({m for m, _ in M}) != n or len({w for _, w in M}) != n:
        raise MarriageError("extracted pairs are not a perfect matching")
    if not is_stable(sm, M):
        raise MarriageError("extracted marriage is not stable")
    return M


def embed_marriage(sm: SmInstance, M) -> MarriageState:
    """Each man's row is 1 up to his wife's rank and 0 after; each woman's row is
    0 up to her husband's rank and 1 after."""
    M = frozenset(M)
    try:
        stable = is_stable(sm, M)
    except ValueError as e:
        raise MarriageError(str(e)) from None
    if not stable:
        raise MarriageError("marriage is not stable")
    state = [ZERO] * (2 * sm.n * sm.n)
    for m, w in M:
        r = sm.men_rank[m][w]
        s = sm.women_rank[w][m]
        for j in range(sm.n):
            state[man_slot(sm, m, j)] = ONE if j <= r else ZERO
        for k in range(sm.n):
            state[woman_slot(sm, w, k)] = ZERO if k <= s else ONE
    state = tuple(state)
    if not is_fixed_point(sm, state):
        raise MarriageError("embedded state is not a fixed point")
    return state


def _side(side: str) -> str:
    if side not in ("man", "woman"):
        raise MarriageError("side must be 'man' or 'woman'")
    return side


def solve(sm: SmInstance, side: str = "man") -> frozenset[tuple[int, int]]:
    """Man-optimal (stars to 0) or woman-optimal (stars to 1) stable marriage."""
    value = ZERO if _side(side) == "man" else ONE
    return extract_marriage(sm, substitute_stars(sm, iterate_to_fixed_point(sm), value))


# --- decision circuits -------------------------------------------------------

@dataclass(frozen=True)
class UnrolledMarriage:
    """``c(n)`` chained blocks in rail encoding; ``ports[s]`` is the wire holding slot ``s``."""

    circuit: Circuit
    inputs: tuple[Tri, ...]
    ports: tuple[int, ...]


@lru_cache(maxsize=64)
def unrolled_marriage(sm: SmInstance) -> UnrolledMarriage:
    n = sm.n
    if n < 1:
        raise MarriageError("need n >= 1")
    N = 2 * n * n
    init = initial_state(sm)
    blocks = star_budget(n)
    if blocks == 0:
        tri = Circuit(N, (), Domain.TRI)
        tri_inputs, ports = init, tuple(range(N))
    else:
        block = build_marriage_block(sm)
        wiring = {N + s: s for s in range(N)}
        ch = chain([block.circuit] * blocks, [wiring] * (blocks - 1),
                   [block.inputs(init)] * blocks)
        tri, tri_inputs = ch.circuit, ch.inputs
        ports = tuple(ch.wire_maps[-1][N + s] for s in range(N))
    boolean = trivalued_circuit_to_boolean(tri)
    return UnrolledMarriage(boolean, tuple(encode_rails(tri_inputs)), ports)


def _decision(sm: SmInstance, m: int, w: int, side: str) -> CcvInstance:
    _side(side)
    if not (0 <= m < sm.n and 0 <= w < sm.n):
        raise MarriageError(f"pair ({m}, {w}) out of range")
    un = unrolled_marriage(sm)
    p = m * sm.n + w
    gm, gw = un.ports[2 * p], un.ports[2 * p + 1]
    m1, m2, w1, w2 = 2 * gm, 2 * gm + 1, 2 * gw, 2 * gw + 1
    if side == "man":
        # man slot exactly 1 and woman slot 0 or *
        extra = (Comparator(m2, m1), Negation(w1), Comparator(m2, w1))
    else:
        # man slot 1 or * and woman slot exactly 0
        extra = (Comparator(w1, w2), Negation(w2), Comparator(m2, w2))
    c = un.circuit
    return CcvInstance(Circuit(c.num_wires, c.gates + extra, Domain.BOOL), un.inputs, m2)


def mosm_to_ccvneg(sm: SmInstance, m: int, w: int) -> CcvInstance:
    """Designated wire is 1 iff ``(m, w)`` is in the man-optimal stable marriage."""
    return _decision(sm, m, w, "man")


def wosm_to_ccvneg(sm: SmInstance, m: int, w: int) -> CcvInstance:
    return _decision(sm, m, w, "woman")


# --- LFMM -> SM ---------------------------------------------------------------

@dataclass(frozen=True)
class LfmmSm:
    sm: SmInstance
    n: int  # padded side size; original vertices keep their indices below n

    def restrict(self, M) -> frozenset[tuple[int, int]]:
        """The pairs between original vertices, read as (bottom, top) edges."""
        return frozenset((m, w) for m, w in M if m < self.n and w < self.n)


def lfmm_to_sm(g: BipartiteGraph) -> LfmmSm:
    """Men are bottoms, women are tops, each side padded to ``n`` and then doubled."""
    if g.max_degree() > 3:
        raise MarriageError("graph degree exceeds 3")
    n = max(g.num_bottom, g.num_top)
    if n == 0:
        raise MarriageError("empty graph")
    men_adj = [g.bottom_adj[i] if i < g.num_bottom else () for i in range(n)]
    women_adj = [g.top_adj[j] if j < g.num_top else () for j in range(n)]

    def prefs(adj):
        lists = []
        for i in range(n):
            a = list(adj[i])
            rest = [x for x in range(n) if x not in adj[i]]
            lists.append(a + list(range(n, 2 * n)) + rest)
        lists += [list(range(2 * n)) for _ in range(n)]
        return lists

    return LfmmSm(SmInstance(2 * n, prefs(men_adj), prefs(women_adj)), n)
