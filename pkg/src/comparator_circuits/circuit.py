"""Comparator circuits over Boolean and three-valued wires.

A circuit is an ordered list of gates over ``m`` parallel wires.  A
``Comparator(i, j)`` leaves the minimum of the two wire values on wire ``i``
and the maximum on wire ``j``; on Booleans that is ``(p and q, p or q)``.
Three-valued wires carry ``0``, ``1`` or ``*`` (unknown) and the comparator
uses the strong Kleene tables, which coincide with min/max under the order
``0 < * < 1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

import numpy as np


class Tri(enum.IntEnum):
    """Wire value. ``STAR`` means the value is not known to be 0 or 1."""

    ZERO = 0
    ONE = 1
    STAR = 2

    def __str__(self) -> str:
        return "*" if self is Tri.STAR else str(int(self))

    @classmethod
    def parse(cls, value: Union[int, str, "Tri"]) -> "Tri":
        if isinstance(value, str):
            value = value.strip()
            if value == "*":
                return cls.STAR
            if value in ("0", "1"):
                return cls(int(value))
            raise ValueError(f"not a wire value: {value!r}")
        if isinstance(value, (bool, np.bool_)):
            return cls(int(value))
        return cls(int(value))


ZERO, ONE, STAR = Tri.ZERO, Tri.ONE, Tri.STAR
TRI_VALUES = (ZERO, ONE, STAR)  # indexed by value code
_CODES = {0: 0, 1: 1, 2: 2, "0": 0, "1": 1, "*": 2}


def value_codes(values: Iterable) -> list[int]:
    """Integer codes 0, 1, 2 for a sequence of wire values in any accepted spelling."""
    try:
        return [_CODES[v] for v in values]
    except (KeyError, TypeError):
        return [int(Tri.parse(v)) for v in values]


def as_tri(values: Iterable) -> tuple[Tri, ...]:
    return tuple(TRI_VALUES[v] for v in value_codes(values))

# Indexed by value codes (0, 1, 2=star).
AND_TABLE = np.array(
    [[0, 0, 0],
     [0, 1, 2],
     [0, 2, 2]], dtype=np.int8)
OR_TABLE = np.array(
    [[0, 1, 2],
     [1, 1, 1],
     [2, 1, 2]], dtype=np.int8)
_AND = tuple(tuple(int(v) for v in row) for row in AND_TABLE)
_OR = tuple(tuple(int(v) for v in row) for row in OR_TABLE)
_NOT = (1, 0, 2)


def tri_and(p, q) -> Tri:
    return Tri(_AND[int(p)][int(q)])


def tri_or(p, q) -> Tri:
    return Tri(_OR[int(p)][int(q)])


class Domain(str, enum.Enum):
    BOOL = "bool"
    TRI = "tri"


class CircuitError(ValueError):
    """Raised for malformed circuits, inputs or wirings."""


@dataclass(frozen=True)
class Comparator:
    min_wire: int
    max_wire: int

    @property
    def wires(self) -> tuple[int, ...]:
        return (self.min_wire, self.max_wire)


@dataclass(frozen=True)
class Negation:
    wire: int

    @property
    def wires(self) -> tuple[int, ...]:
        return (self.wire,)


@dataclass(frozen=True)
class Dummy:
    wire: int

    @property
    def wires(self) -> tuple[int, ...]:
        return (self.wire,)


Gate = Union[Comparator, Negation, Dummy]

_OP_CMP, _OP_NEG, _OP_DUMMY = 0, 1, 2


@dataclass(frozen=True)
class Circuit:
    num_wires: int
    gates: tuple[Gate, ...] = ()
    domain: Domain = Domain.BOOL
    wire_names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "domain", Domain(self.domain))
        if self.wire_names is not None:
            object.__setattr__(self, "wire_names", tuple(self.wire_names))

    @property
    def num_gates(self) -> int:
        return len(self.gates)

    @cached_property
    def _program(self) -> tuple[tuple[int, int, int], ...]:
        prog = []
        for g in self.gates:
            if isinstance(g, Comparator):
                prog.append((_OP_CMP, g.min_wire, g.max_wire))
            elif isinstance(g, Negation):
                prog.append((_OP_NEG, g.wire, g.wire))
            else:
                prog.append((_OP_DUMMY, g.wire, g.wire))
        return tuple(prog)

    @cached_property
    def _errors(self) -> tuple[str, ...]:
        return tuple(validate_circuit(self))

    def wire_index(self, name: str) -> int:
        if self.wire_names is None:
            raise KeyError(name)
        return self.wire_names.index(name)

    def has_negation(self) -> bool:
        return any(isinstance(g, Negation) for g in self.gates)


@dataclass(frozen=True)
class CcvInstance:
    """A circuit, its input vector and the wire whose output is asked about."""

    circuit: Circuit
    inputs: tuple[Tri, ...]
    designated_wire: int = 0

    def __post_init__(self):
        object.__setattr__(self, "inputs", as_tri(self.inputs))


@dataclass(frozen=True)
class LayerTrace:
    """Wire values after every gate; row 0 is the circuit input."""

    rows: np.ndarray
    domain: Domain = Domain.BOOL

    @property
    def outputs(self) -> tuple[Tri, ...]:
        return tuple(Tri(int(v)) for v in self.rows[-1])

    def __len__(self) -> int:
        return self.rows.shape[0]

    def format(self) -> str:
        sym = np.array(["0", "1", "*"])
        return "\n".join(" ".join(sym[r]) for r in self.rows)


def validate_circuit(c: Circuit) -> list[str]:
    """Return every violated circuit invariant; an empty list means well formed."""
    errors = []
    if c.num_wires < 0:
        errors.append("negative wire count")
    if c.wire_names is not None and len(c.wire_names) != c.num_wires:
        errors.append("wire name count does not match wire count")
    for t, g in enumerate(c.gates):
        if not isinstance(g, (Comparator, Negation, Dummy)):
            errors.append(f"gate {t}: unknown gate kind {type(g).__name__}")
            continue
        for w in g.wires:
            if not 0 <= w < c.num_wires:
                errors.append(f"gate {t}: wire index out of range ({w})")
        if isinstance(g, Comparator) and g.min_wire == g.max_wire:
            errors.append(f"gate {t}: comparator joins wire {g.min_wire} to itself")
        if isinstance(g, Negation) and c.domain is Domain.TRI:
            errors.append(f"gate {t}: negation not allowed in three-valued domain")
    return errors


def check_circuit(c: Circuit) -> None:
    errors = c._errors
    if errors:
        raise CircuitError("; ".join(errors))


def _coerce_inputs(c: Circuit, inputs: Iterable) -> list[int]:
    values = value_codes(inputs)
    if len(values) != c.num_wires:
        raise CircuitError(f"expected {c.num_wires} inputs, got {len(values)}")
    if c.domain is Domain.BOOL and STAR in values:
        raise CircuitError("star input on a Boolean circuit")
    return values


def run(c: Circuit, inputs: Iterable) -> list[int]:
    """Final wire values only; O(m) memory for long circuits."""
    check_circuit(c)
    vals = _coerce_inputs(c, inputs)
    and_t, or_t = _AND, _OR
    for op, a, b in c._program:
        if op == _OP_CMP:
            p, q = vals[a], vals[b]
            vals[a] = and_t[p][q]
            vals[b] = or_t[p][q]
        elif op == _OP_NEG:
            vals[a] = _NOT[vals[a]]
    return vals


def outputs(c: Circuit, inputs: Iterable) -> tuple[Tri, ...]:
    return tuple(TRI_VALUES[v] for v in run(c, inputs))


def evaluate_circuit(c: Circuit, inputs: Iterable) -> LayerTrace:
    check_circuit(c)
    vals = _coerce_inputs(c, inputs)
    rows = np.empty((c.num_gates + 1, c.num_wires), dtype=np.int8)
    rows[0] = vals
    for t, (op, a, b) in enumerate(c._program, start=1):
        if op == _OP_CMP:
            p, q = vals[a], vals[b]
            vals[a] = _AND[p][q]
            vals[b] = _OR[p][q]
        elif op == _OP_NEG:
            vals[a] = _NOT[vals[a]]
        rows[t] = rows[t - 1]
        rows[t, a] = vals[a]
        rows[t, b] = vals[b]
    rows.setflags(write=False)
    return LayerTrace(rows, c.domain)


def evaluate(inst: CcvInstance) -> LayerTrace:
    return evaluate_circuit(inst.circuit, inst.inputs)


def evaluate_designated(inst: CcvInstance) -> Tri:
    if not 0 <= inst.designated_wire < inst.circuit.num_wires:
        raise CircuitError(f"designated wire {inst.designated_wire} out of range")
    return Tri(run(inst.circuit, inst.inputs)[inst.designated_wire])


def ones_per_layer(trace: LayerTrace) -> list[int]:
    if trace.domain is not Domain.BOOL or (trace.rows == STAR).any():
        raise CircuitError("ones_per_layer needs a Boolean trace")
    return [int(n) for n in (trace.rows == ONE).sum(axis=1)]


@dataclass(frozen=True)
class Normalized:
    circuit: Circuit
    wire_map: tuple[int, ...]  # original wire -> wire carrying its output
    direction: str = "down"
    inputs: tuple[Tri, ...] | None = None

    def lift_inputs(self, inputs: Sequence) -> tuple[Tri, ...]:
        """Place original inputs on the layer-0 copies; every other wire is 0."""
        m = len(self.wire_map)
        n = self.circuit.num_wires // m - 1 if m else 0
        return norm_inputs(m, n, inputs, self.direction == "up")


def _layer_wire(n_gates: int, layer: int, w: int, m: int, up: bool) -> int:
    # Upward layout puts later layers at lower indices.
    return ((n_gates - layer) if up else layer) * m + w


def is_directed(c: Circuit, direction: str = "down") -> bool:
    """True if every comparator moves its maximum toward larger (down) or smaller (up) indices."""
    for g in c.gates:
        if isinstance(g, Comparator):
            if direction == "down" and g.max_wire < g.min_wire:
                return False
            if direction == "up" and g.max_wire > g.min_wire:
                return False
    return True


def normalize_directions(c: Circuit, inputs: Sequence | None = None,
                         direction: str = "down") -> Normalized:
    """Rebuild ``c`` so that every comparator points the same way.

    Every layer of the original gets a fresh copy of all wires.  A gate
    between layers ``t`` and ``t+1`` is simulated by three comparators that
    all run from a layer-``t`` wire to a layer-``t+1`` wire; untouched wires
    are forwarded by one comparator each.  Fresh wires start at 0.
    """
    if direction not in ("down", "up"):
        raise ValueError("direction must be 'down' or 'up'")
    check_circuit(c)
    if c.domain is not Domain.BOOL or c.has_negation():
        raise CircuitError("normalize_directions needs a Boolean circuit without negation gates")
    m, n = c.num_wires, c.num_gates
    up = direction == "up"

    def wire(layer, w):
        return _layer_wire(n, layer, w, m, up)

    gates: list[Gate] = []
    for t, g in enumerate(c.gates):
        touched = ()
        if isinstance(g, Comparator):
            lo, hi = g.min_wire, g.max_wire
            gates.append(Comparator(wire(t, hi), wire(t + 1, hi)))
            gates.append(Comparator(wire(t, lo), wire(t + 1, hi)))
            gates.append(Comparator(wire(t, lo), wire(t + 1, lo)))
            touched = (lo, hi)
        for w in range(m):
            if w not in touched:
                gates.append(Comparator(wire(t, w), wire(t + 1, w)))
    out = Circuit(m * (n + 1), tuple(gates), Domain.BOOL)
    wire_map = tuple(wire(n, w) for w in range(m))
    lifted = norm_inputs(m, n, inputs, up) if inputs is not None else None
    return Normalized(out, wire_map, direction, lifted)


def norm_inputs(m: int, n: int, inputs: Sequence, up: bool) -> tuple[Tri, ...]:
    full = [ZERO] * (m * (n + 1))
    vals = [Tri.parse(v) for v in inputs]
    if len(vals) != m:
        raise CircuitError(f"expected {m} inputs, got {len(vals)}")
    for w, v in enumerate(vals):
        full[_layer_wire(n, 0, w, m, up)] = v
    return tuple(full)


@dataclass(frozen=True)
class Chained:
    circuit: Circuit
    wire_maps: tuple[tuple[int, ...], ...]  # per block: local wire -> global wire
    inputs: tuple[Tri, ...] | None = None


def chain(blocks: Sequence[Circuit], wiring: Sequence[Mapping[int, int]] = (),
          block_inputs: Sequence[Sequence] | None = None) -> Chained:
    """Concatenate blocks into one circuit.

    ``wiring[b]`` maps wires of block ``b`` to wires of block ``b + 1``: the
    value left on the source wire becomes the input of the target wire.
    Unwired wires of later blocks get fresh global wires whose inputs come
    from ``block_inputs``; inputs given for wired targets are ignored.
    """
    if not blocks:
        raise CircuitError("chain needs at least one block")
    domain = blocks[0].domain
    if any(b.domain is not domain for b in blocks):
        raise CircuitError("domain mismatch between chained blocks")
    if len(wiring) != len(blocks) - 1:
        raise CircuitError("need one wiring map between each pair of blocks")
    if block_inputs is not None and len(block_inputs) != len(blocks):
        raise CircuitError("need one input vector per block")
    for b in blocks:
        check_circuit(b)

    maps: list[tuple[int, ...]] = [tuple(range(blocks[0].num_wires))]
    total = blocks[0].num_wires
    inputs = list(block_inputs[0]) if block_inputs is not None else None
    for k in range(1, len(blocks)):
        prev, cur, wmap = blocks[k - 1], blocks[k], wiring[k - 1]
        targets = list(wmap.values())
        if len(set(targets)) != len(targets):
            raise CircuitError(f"wiring collision into block {k}")
        for src, dst in wmap.items():
            if not (0 <= src < prev.num_wires and 0 <= dst < cur.num_wires):
                raise CircuitError(f"wiring into block {k} names a missing wire")
        fed = {dst: maps[k - 1][src] for src, dst in wmap.items()}
        local = []
        for w in range(cur.num_wires):
            if w in fed:
                local.append(fed[w])
            else:
                local.append(total)
                total += 1
                if inputs is not None:
                    inputs.append(block_inputs[k][w])
        maps.append(tuple(local))

    gates: list[Gate] = []
    for b, gm in zip(blocks, maps):
        for g in b.gates:
            if isinstance(g, Comparator):
                gates.append(Comparator(gm[g.min_wire], gm[g.max_wire]))
            else:
                gates.append(type(g)(gm[g.wire]))
    circuit = Circuit(total, tuple(gates), domain)
    return Chained(circuit, tuple(maps),
                   tuple(Tri.parse(v) for v in inputs) if inputs is not None else None)


def refines(coarse: Sequence, fine: Sequence) -> bool:
    """True if ``fine`` agrees with ``coarse`` on every Boolean position of ``coarse``."""
    return all(int(a) == STAR or int(a) == int(b) for a, b in zip(coarse, fine))
