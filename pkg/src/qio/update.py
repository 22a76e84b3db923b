"""Clifford update functions and their straight-line classical circuits.

A teleportation byproduct on wire i is ``X^b_i Z^a_i``; a whole register is
described by a :class:`PauliLabel` with bits ``(a_1, b_1, ..., a_n, b_n)``.
For a Clifford ``C`` the update function ``F_C`` maps a label ``s`` to the
label ``s'`` with ``C Pauli(s) C^dagger = phase * Pauli(s')``. Phases are
dropped here; they only matter once Paulis are summed (see ``pauli_sum``).

Per-gate rules on ``(a, b)`` = (Z exponent, X exponent)::

    X, Z : identity
    H    : (a, b) -> (b, a)
    P    : (a, b) -> (a ^ b, b)
    CNOT : (a1, b1, a2, b2) -> (a1 ^ a2, b1, a2, b1 ^ b2)

Registers of an :class:`UpdateCircuit` are numbered ``a_i -> 2i``,
``b_i -> 2i + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .circuit import Circuit, Gate
from .errors import NonCliffordError
from .tableau import canonical_synthesize, from_circuit


@dataclass(frozen=True, order=True)
class PauliLabel:
    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if len(bits) % 2 or any(b not in (0, 1) for b in bits):
            raise ValueError(f"label needs an even number of 0/1 bits, got {self.bits!r}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_string(cls, text: str) -> "PauliLabel":
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a binary label: {text!r}")
        return cls(tuple(int(ch) for ch in text))

    @classmethod
    def identity(cls, n: int) -> "PauliLabel":
        return cls((0,) * (2 * n))

    @property
    def n(self) -> int:
        return len(self.bits) // 2

    def a(self, i: int) -> int:
        return self.bits[2 * i]

    def b(self, i: int) -> int:
        return self.bits[2 * i + 1]

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


def all_labels(n: int) -> Iterator[PauliLabel]:
    """Every label on ``n`` wires in lexicographic order."""
    for bits in product((0, 1), repeat=2 * n):
        yield PauliLabel(bits)


def _apply_rule(bits: list[int], g: Gate) -> None:
    k = g.kind
    if k in ("X", "Z"):
        return
    if k == "T":
        raise NonCliffordError("T has no Pauli-to-Pauli update rule")
    if k == "CNOT":
        c, t = g.control, g.target
        bits[2 * c] ^= bits[2 * t]
        bits[2 * t + 1] ^= bits[2 * c + 1]
        return
    q = g.wire
    if k == "H":
        bits[2 * q], bits[2 * q + 1] = bits[2 * q + 1], bits[2 * q]
    elif k == "P":
        bits[2 * q] ^= bits[2 * q + 1]


def gate_update(label: PauliLabel, g: Gate) -> PauliLabel:
    bits = list(label.bits)
    _apply_rule(bits, g)
    return PauliLabel(tuple(bits))


def compose_update(c: Circuit, label: PauliLabel) -> PauliLabel:
    """``F_C(label)``: the gate rules folded left to right over ``c``."""
    if label.n != c.n:
        raise ValueError(f"label has {label.n} wires, circuit has {c.n}")
    bits = list(label.bits)
    for pos, g in enumerate(c.gates):
        if g.kind == "T":
            raise NonCliffordError(f"gate {pos} is T; circuit is not Clifford", position=pos)
        _apply_rule(bits, g)
    return PauliLabel(tuple(bits))


@dataclass(frozen=True)
class UpdateCircuit:
    """Straight-line program of ``("SWAP", i, j)`` / ``("XOR", src, dst)`` on 2n bit registers."""

    n: int
    ops: tuple[tuple[str, int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(tuple(op) for op in self.ops))
        for op in self.ops:
            name, i, j = op
            if name not in ("SWAP", "XOR"):
                raise ValueError(f"unknown instruction {name!r}")
            if not (0 <= i < 2 * self.n and 0 <= j < 2 * self.n) or i == j:
                raise ValueError(f"bad registers in {op!r}")

    def __len__(self) -> int:
        return len(self.ops)

    def dump(self) -> str:
        return "".join([f"update n={self.n}\n", *(f"{name} {i} {j}\n" for name, i, j in self.ops)])

    @classmethod
    def parse(cls, text: str) -> "UpdateCircuit":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("update n="):
            raise ValueError("missing 'update n=<n>' header")
        n = int(lines[0].split("=", 1)[1])
        ops = []
        for ln in lines[1:]:
            name, i, j = ln.split()
            ops.append((name, int(i), int(j)))
        return cls(n, tuple(ops))


def compile_update_circuit(c: Circuit) -> UpdateCircuit:
    """One SWAP per H, one XOR per P, two XORs per CNOT; X and Z cost nothing."""
    ops: list[tuple[str, int, int]] = []
    for pos, g in enumerate(c.gates):
        k = g.kind
        if k == "T":
            raise NonCliffordError(f"gate {pos} is T; circuit is not Clifford", position=pos)
        if k == "H":
            ops.append(("SWAP", 2 * g.wire, 2 * g.wire + 1))
        elif k == "P":
            ops.append(("XOR", 2 * g.wire + 1, 2 * g.wire))
        elif k == "CNOT":
            ops.append(("XOR", 2 * g.target, 2 * g.control))
            ops.append(("XOR", 2 * g.control + 1, 2 * g.target + 1))
    return UpdateCircuit(c.n, tuple(ops))


def io_update(c: Circuit) -> UpdateCircuit:
    """Obfuscated update circuit: compile the canonical form of ``c``.

    The result depends on ``c`` only through its tableau, so equivalent
    Clifford circuits produce identical programs.
    """
    return compile_update_circuit(canonical_synthesize(from_circuit(c)))


def eval_update(u: UpdateCircuit, label: PauliLabel) -> PauliLabel:
    if label.n != u.n:
        raise ValueError(f"label has {label.n} wires, update circuit expects {u.n}")
    bits = list(label.bits)
    for name, i, j in u.ops:
        if name == "SWAP":
            bits[i], bits[j] = bits[j], bits[i]
        else:
            bits[j] ^= bits[i]
    return PauliLabel(tuple(bits))
