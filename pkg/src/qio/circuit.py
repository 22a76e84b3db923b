"""Circuit IR over the gate set {X, Z, P, H, CNOT, T}.

The ``.qc`` text format is line based::

    qubits 2
    # comments start with '#'
    H 0
    CNOT 0 1
    T 1

Wire indices are zero-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import CircuitParseError

SINGLE_QUBIT_KINDS = ("X", "Z", "P", "H", "T")
CLIFFORD_KINDS = ("X", "Z", "P", "H", "CNOT")
GATE_KINDS = SINGLE_QUBIT_KINDS + ("CNOT",)


@dataclass(frozen=True)
class Gate:
    kind: str
    wires: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        arity = 2 if self.kind == "CNOT" else 1
        if len(self.wires) != arity:
            raise ValueError(f"{self.kind} takes {arity} wire(s), got {len(self.wires)}")
        if any(w < 0 for w in self.wires):
            raise ValueError("wire indices must be non-negative")
        if arity == 2 and self.wires[0] == self.wires[1]:
            raise ValueError("CNOT control equals target")

    @property
    def wire(self) -> int:
        return self.wires[0]

    @property
    def control(self) -> int:
        return self.wires[0]

    @property
    def target(self) -> int:
        return self.wires[1]

    @property
    def is_clifford(self) -> bool:
        return self.kind != "T"

    def __str__(self) -> str:
        return " ".join([self.kind, *map(str, self.wires)])


def X(q: int) -> Gate:
    return Gate("X", (q,))


def Z(q: int) -> Gate:
    return Gate("Z", (q,))


def P(q: int) -> Gate:
    return Gate("P", (q,))


def H(q: int) -> Gate:
    return Gate("H", (q,))


def T(q: int) -> Gate:
    return Gate("T", (q,))


def CNOT(control: int, target: int) -> Gate:
    return Gate("CNOT", (control, target))


@dataclass(frozen=True)
class Circuit:
    """Immutable gate sequence on ``n`` wires. ``len(c)`` is the circuit size."""

    n: int
    gates: tuple[Gate, ...] = field(default=())

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a circuit needs at least one qubit")
        object.__setattr__(self, "gates", tuple(self.gates))
        for pos, g in enumerate(self.gates):
            if max(g.wires) >= self.n:
                raise ValueError(f"gate {pos} ({g}) touches a wire outside [0, {self.n})")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.n != self.n:
            raise ValueError("qubit counts differ")
        return Circuit(self.n, self.gates + other.gates)

    @property
    def t_count(self) -> int:
        return t_count(self)

    @property
    def is_clifford(self) -> bool:
        return all(g.is_clifford for g in self.gates)


def t_count(c: Circuit) -> int:
    """Number of T gates in ``c``."""
    return sum(1 for g in c.gates if g.kind == "T")


def parse_circuit(text: str) -> Circuit:
    """Parse ``.qc`` source into a :class:`Circuit`."""
    n = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if n is None:
            if tokens[0] != "qubits":
                raise CircuitParseError("missing 'qubits <n>' header", lineno)
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise CircuitParseError("header must be 'qubits <n>'", lineno)
            n = int(tokens[1])
            if n < 1:
                raise CircuitParseError("qubit count must be positive", lineno)
            continue
        kind, args = tokens[0], tokens[1:]
        if kind not in GATE_KINDS:
            raise CircuitParseError(f"unknown gate {kind!r}", lineno)
        if not all(a.isdigit() for a in args):
            raise CircuitParseError(f"wire indices must be non-negative integers: {line!r}", lineno)
        wires = tuple(int(a) for a in args)
        arity = 2 if kind == "CNOT" else 1
        if len(wires) != arity:
            raise CircuitParseError(f"{kind} takes {arity} wire(s)", lineno)
        if any(w >= n for w in wires):
            raise CircuitParseError(f"wire out of range for {n} qubit(s)", lineno)
        if arity == 2 and wires[0] == wires[1]:
            raise CircuitParseError("CNOT control equals target", lineno)
        gates.append(Gate(kind, wires))
    if n is None:
        raise CircuitParseError("missing 'qubits <n>' header")
    return Circuit(n, tuple(gates))


def serialize_circuit(c: Circuit) -> str:
    return "".join([f"qubits {c.n}\n", *(f"{g}\n" for g in c.gates)])


def random_circuit(n: int, length: int, t: int, seed: int, kinds: Sequence[str] | None = None) -> Circuit:
    """Seeded random circuit with exactly ``length`` gates, ``t`` of them T.

    The non-T gates are drawn uniformly from ``kinds`` (default: the Clifford
    gate set, without CNOT when ``n == 1``).
    """
    if t > length:
        raise ValueError(f"T-count {t} exceeds circuit length {length}")
    if t < 0 or length < 0:
        raise ValueError("length and T-count must be non-negative")
    rng = np.random.default_rng(seed)
    if kinds is None:
        kinds = CLIFFORD_KINDS if n > 1 else ("X", "Z", "P", "H")
    t_slots = set(rng.choice(length, size=t, replace=False).tolist()) if t else set()
    gates = []
    for i in range(length):
        if i in t_slots:
            gates.append(T(int(rng.integers(n))))
            continue
        kind = kinds[int(rng.integers(len(kinds)))]
        if kind == "CNOT":
            c, tg = rng.choice(n, size=2, replace=False).tolist()
            gates.append(CNOT(c, tg))
        else:
            gates.append(Gate(kind, (int(rng.integers(n)),)))
    return Circuit(n, tuple(gates))


# Identity-acting gate sequences used as insertions and size padding.
def _identity_blocks(n: int, rng) -> list[list[Gate]]:
    q = int(rng.integers(n))
    blocks = [[H(q), H(q)], [X(q), X(q)], [Z(q), Z(q)], [Z(q), P(q), P(q)]]
    if n > 1:
        c, t = rng.choice(n, size=2, replace=False).tolist()
        blocks.append([CNOT(c, t), CNOT(c, t)])
    return blocks


def _rewrite_once(gates: list[Gate], n: int, rng, allow_t: bool) -> list[Gate]:
    """Apply one randomly chosen unitary-preserving rewrite."""
    options = ["insert"]
    idx_z = [i for i, g in enumerate(gates) if g.kind == "Z"]
    idx_p = [i for i, g in enumerate(gates) if g.kind == "P"]
    idx_pp = [i for i in range(len(gates) - 1) if gates[i].kind == "P" and gates[i + 1] == gates[i]]
    idx_tt = [i for i in range(len(gates) - 1) if gates[i].kind == "T" and gates[i + 1] == gates[i]]
    if idx_z:
        options += ["z_to_pp", "z_to_hxh"]
    if idx_pp:
        options.append("pp_to_z")
    if allow_t and idx_p:
        options.append("p_to_tt")
    if idx_tt:
        options.append("tt_to_p")
    choice = options[int(rng.integers(len(options)))]
    out = list(gates)
    if choice == "insert":
        blocks = _identity_blocks(n, rng)
        block = blocks[int(rng.integers(len(blocks)))]
        pos = int(rng.integers(len(out) + 1))
        out[pos:pos] = block
    elif choice == "z_to_pp":
        i = idx_z[int(rng.integers(len(idx_z)))]
        q = out[i].wire
        out[i:i + 1] = [P(q), P(q)]
    elif choice == "z_to_hxh":
        i = idx_z[int(rng.integers(len(idx_z)))]
        q = out[i].wire
        out[i:i + 1] = [H(q), X(q), H(q)]
    elif choice == "pp_to_z":
        i = idx_pp[int(rng.integers(len(idx_pp)))]
        out[i:i + 2] = [Z(out[i].wire)]
    elif choice == "p_to_tt":
        i = idx_p[int(rng.integers(len(idx_p)))]
        q = out[i].wire
        out[i:i + 1] = [T(q), T(q)]
    else:
        i = idx_tt[int(rng.integers(len(idx_tt)))]
        out[i:i + 2] = [P(out[i].wire)]
    return out


def pad_circuit(c: Circuit, size: int) -> Circuit:
    """Pad ``c`` with identity-acting gates on wire 0 up to exactly ``size`` gates.

    Even gaps use ``X, X`` pairs; an odd gap spends one ``Z, P, P`` triple.
    """
    gap = size - len(c)
    if gap < 0:
        raise ValueError(f"circuit already has {len(c)} > {size} gates")
    if gap == 1:
        raise ValueError("a gap of exactly one gate cannot be filled by an identity sequence")
    extra: list[Gate] = []
    if gap % 2:
        extra += [Z(0), P(0), P(0)]
        gap -= 3
    extra += [X(0), X(0)] * (gap // 2)
    return Circuit(c.n, c.gates + tuple(extra))


def equivalent_pair(base: Circuit, seed: int, rewrites: int = 3, allow_t: bool | None = None) -> tuple[Circuit, Circuit]:
    """Two same-size circuits with the same unitary as ``base``.

    Each side receives ``rewrites`` random relation rewrites (identity-pair
    insertion, ``Z <-> P P``, ``Z -> H X H``, ``P <-> T T``); the shorter side
    is then padded. ``P -> T T`` is only used when ``allow_t`` is true, which
    defaults to whether ``base`` already contains T gates.
    """
    if allow_t is None:
        allow_t = t_count(base) > 0
    rng = np.random.default_rng(seed)
    sides = []
    for _ in range(2):
        gates = list(base.gates)
        for _ in range(rewrites):
            gates = _rewrite_once(gates, base.n, rng, allow_t)
        sides.append(Circuit(base.n, tuple(gates)))
    c1, c2 = sides
    size = max(len(c1), len(c2))
    if abs(len(c1) - len(c2)) == 1:
        size += 2
    return pad_circuit(c1, size), pad_circuit(c2, size)

