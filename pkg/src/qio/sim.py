"""Dense pure-state simulator.

Qubit 0 is the most significant bit of the amplitude index, so ``X`` on
qubit 0 of ``|00>`` gives index 2. States are immutable; every operation
returns a new :class:`Statevector`.

Bell outcomes follow ``|beta_ab> = (I (x) X^b Z^a) |beta_00>`` on an ordered
pair ``(first, second)``. Measuring ``|psi>_C |beta_00>_AB`` on ``(C, A)``
with outcome ``(a, b)`` leaves ``X^b Z^a |psi>`` on ``B``.

Sampling uses ``numpy.random.default_rng`` (PCG64), passed in explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .circuit import Circuit
from .errors import CapExceeded
from .pauli_sum import PauliSum, parseval
from .update import PauliLabel

SIM_QUBIT_CAP = 24
NORM_TOL = 1e-12

_SQ = 1 / np.sqrt(2)
# rows: outcome 2a + b; columns: basis index 2x + y of (first, second)
BELL_BASIS = _SQ * np.array([
    [1, 0, 0, 1],
    [0, 1, 1, 0],
    [1, 0, 0, -1],
    [0, 1, -1, 0],
], dtype=complex)
_PHASES = {"Z": -1.0, "P": 1j, "T": np.exp(1j * np.pi / 4)}


def _check_cap(m: int) -> None:
    if m > SIM_QUBIT_CAP:
        raise CapExceeded(f"simulator is capped at {SIM_QUBIT_CAP} qubits, asked for {m}")


class Statevector:
    __slots__ = ("m", "amps")

    def __init__(self, amps, m: int | None = None, check: bool = True):
        amps = np.array(amps, dtype=complex).reshape(-1)
        if m is None:
            m = int(amps.size).bit_length() - 1
        if amps.size != 2 ** m:
            raise ValueError(f"{amps.size} amplitudes do not describe {m} qubits")
        _check_cap(m)
        if check and abs(np.vdot(amps, amps).real - 1) > NORM_TOL:
            raise ValueError("statevector is not normalized")
        amps.flags.writeable = False
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "amps", amps)

    def __setattr__(self, name, value):
        raise AttributeError("Statevector is immutable")

    def __repr__(self):
        return f"Statevector(m={self.m})"

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amps, self.amps).real))

    def tensor(self, other: "Statevector") -> "Statevector":
        """``self (x) other``: ``self`` takes the leading (low-numbered) qubits."""
        return Statevector(np.kron(self.amps, other.amps), self.m + other.m, check=False)

    def dump(self) -> str:
        lines = [f"state m={self.m}"]
        for idx in np.flatnonzero(self.amps):
            z = self.amps[idx]
            lines.append(f"{idx:0{self.m}b} {z.real + 0.0:.17g} {z.imag + 0.0:.17g}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Statevector":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("state m="):
            raise ValueError("missing 'state m=<m>' header")
        m = int(lines[0].split("=", 1)[1])
        _check_cap(m)
        amps = np.zeros(2 ** m, dtype=complex)
        for ln in lines[1:]:
            idx, re, im = ln.split()
            if len(idx) != m:
                raise ValueError(f"index {idx!r} is not {m} bits wide")
            amps[int(idx, 2)] = complex(float(re), float(im))
        return cls(amps, m, check=False)


def basis_state(m: int, x: str) -> Statevector:
    if len(x) != m or set(x) - {"0", "1"}:
        raise ValueError(f"basis string {x!r} does not have {m} binary digits")
    _check_cap(m)
    amps = np.zeros(2 ** m, dtype=complex)
    amps[int(x, 2) if m else 0] = 1
    return Statevector(amps, m)


def random_state(m: int, rng: np.random.Generator) -> Statevector:
    v = rng.normal(size=2 ** m) + 1j * rng.normal(size=2 ** m)
    return Statevector(v / np.linalg.norm(v), m, check=False)


def bell_pairs(n: int) -> Statevector:
    """``n`` copies of ``|beta_00>``; pair i sits on qubits ``(i, n + i)``."""
    if n < 1:
        raise ValueError("need at least one Bell pair")
    _check_cap(2 * n)
    amps = np.zeros(4 ** n, dtype=complex)
    x = np.arange(2 ** n)
    amps[(x << n) | x] = 2.0 ** (-n / 2)
    return Statevector(amps, 2 * n, check=False)


def _apply_gate_tensor(psi: np.ndarray, g, wires: Sequence[int]) -> np.ndarray:
    k = g.kind
    if k == "CNOT":
        c, t = wires[g.control], wires[g.target]
        idx = [slice(None)] * psi.ndim
        idx[c] = 1
        sub_axis = t - (1 if t > c else 0)
        psi[tuple(idx)] = np.flip(psi[tuple(idx)], axis=sub_axis).copy()
        return psi
    q = wires[g.wire]
    if k == "X":
        return np.flip(psi, axis=q).copy()
    one = [slice(None)] * psi.ndim
    one[q] = 1
    if k == "H":
        zero = [slice(None)] * psi.ndim
        zero[q] = 0
        s0, s1 = psi[tuple(zero)].copy(), psi[tuple(one)].copy()
        psi[tuple(zero)] = (s0 + s1) * _SQ
        psi[tuple(one)] = (s0 - s1) * _SQ
        return psi
    psi[tuple(one)] *= _PHASES[k]
    return psi


def apply_circuit(s: Statevector, c: Circuit, wires: Sequence[int] | None = None) -> Statevector:
    """Run ``c`` with circuit wire ``i`` mapped to state qubit ``wires[i]``."""
    wires = list(range(c.n)) if wires is None else list(wires)
    if len(wires) != c.n or len(set(wires)) != len(wires) or any(not 0 <= w < s.m for w in wires):
        raise ValueError(f"wires {wires} do not map {c.n} circuit qubits into a {s.m}-qubit state")
    psi = s.amps.reshape([2] * s.m).copy()
    for g in c.gates:
        psi = _apply_gate_tensor(psi, g, wires)
    return Statevector(psi.reshape(-1), s.m, check=False)


def apply_pauli(s: Statevector, label: PauliLabel, wires: Sequence[int] | None = None) -> Statevector:
    """Apply ``X^b Z^a`` on each listed wire (Z first, then X)."""
    return Statevector(_pauli_tensor(s, label, wires).reshape(-1), s.m, check=False)


def _pauli_tensor(s: Statevector, label: PauliLabel, wires) -> np.ndarray:
    wires = list(range(label.n)) if wires is None else list(wires)
    if len(wires) != label.n:
        raise ValueError("label width does not match wire list")
    psi = s.amps.reshape([2] * s.m).copy()
    for i, q in enumerate(wires):
        if label.a(i):
            one = [slice(None)] * s.m
            one[q] = 1
            psi[tuple(one)] *= -1
        if label.b(i):
            psi = np.flip(psi, axis=q)
    return psi


def apply_pauli_sum(s: Statevector, ps: PauliSum, wires: Sequence[int] | None = None) -> Statevector:
    """``sum_i beta_i Pauli_i |s>``; ``ps`` must be unitary (exact Parseval 1)."""
    if parseval(ps) != 1:
        raise ValueError("Pauli sum does not have unit Parseval weight; refusing to apply")
    out = np.zeros([2] * s.m, dtype=complex)
    for label, coeff in ps.items():
        out += complex(coeff) * _pauli_tensor(s, label, wires)
    out = out.reshape(-1)
    norm = np.linalg.norm(out)
    if abs(norm - 1) > 1e-10:
        raise ValueError(f"Pauli sum changed the norm to {norm}")
    return Statevector(out / norm, s.m, check=False)


def _bell_amplitudes(s: Statevector, pairs: Sequence[tuple[int, int]]):
    flat = [w for p in pairs for w in p]
    if len(set(flat)) != len(flat):
        raise ValueError(f"Bell pairs overlap: {list(pairs)}")
    if any(not 0 <= w < s.m for w in flat):
        raise ValueError("Bell pair wire out of range")
    rest = [w for w in range(s.m) if w not in set(flat)]
    n = len(pairs)
    psi = s.amps.reshape([2] * s.m).transpose(flat + rest)
    psi = psi.reshape([4] * n + [2 ** len(rest)])
    for i in range(n):
        psi = np.moveaxis(np.tensordot(BELL_BASIS.conj(), psi, axes=([1], [i])), 0, i)
    return psi.reshape(4 ** n, 2 ** len(rest)), len(rest)


def _label(index: int, n: int) -> PauliLabel:
    return PauliLabel(tuple((index >> (2 * n - 1 - j)) & 1 for j in range(2 * n)))


@dataclass(frozen=True)
class BellBranch:
    outcome: PauliLabel
    probability: float
    residual: Statevector | None


def bell_branches(s: Statevector, pairs: Sequence[tuple[int, int]]) -> list[BellBranch]:
    """Every one of the 4^n outcomes with its Born probability and residual state.

    Residuals live on the unmeasured wires in increasing order; they are
    ``None`` for zero-probability outcomes.
    """
    amps, rest = _bell_amplitudes(s, pairs)
    probs = np.sum(np.abs(amps) ** 2, axis=1)
    out = []
    for idx, p in enumerate(probs):
        res = Statevector(amps[idx] / np.sqrt(p), rest, check=False) if p > 1e-300 else None
        out.append(BellBranch(_label(idx, len(pairs)), float(p), res))
    return out


def bell_measure(s: Statevector, pairs: Sequence[tuple[int, int]],
                 rng: np.random.Generator | None = None,
                 outcome: PauliLabel | None = None) -> tuple[PauliLabel, Statevector, float]:
    """Generalized Bell measurement on ``pairs`` of ``(first, second)`` wires.

    Samples with ``rng`` or, in replay mode, forces ``outcome``. Returns the
    outcome, the normalized residual on the unmeasured wires, and the
    outcome's probability.
    """
    amps, rest = _bell_amplitudes(s, pairs)
    probs = np.sum(np.abs(amps) ** 2, axis=1)
    n = len(pairs)
    if outcome is not None:
        if outcome.n != n:
            raise ValueError(f"outcome has {outcome.n} pairs, measurement has {n}")
        idx = int(str(outcome), 2)
        if probs[idx] <= 1e-300:
            raise ValueError(f"outcome {outcome} has zero probability")
    else:
        if rng is None:
            raise ValueError("sampled mode needs an explicit numpy Generator")
        idx = int(rng.choice(len(probs), p=probs / probs.sum()))
    p = float(probs[idx])
    return _label(idx, n), Statevector(amps[idx] / np.sqrt(p), rest, check=False), p
