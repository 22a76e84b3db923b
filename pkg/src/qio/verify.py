"""Brute-force dense-matrix oracles.

Everything here is deliberately naive: unitaries are built as explicit
``2^n x 2^n`` matrices by Kronecker products, with qubit 0 as the most
significant bit of the basis index. Other modules are tested against these
functions, so they share no code with the fast paths.
"""

from __future__ import annotations

from functools import reduce

import numpy as np

from .circuit import Circuit, Gate
from .errors import CapExceeded

ORACLE_QUBIT_CAP = 10

I2 = np.eye(2, dtype=complex)
GATE_MATRICES = {
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "P": np.array([[1, 0], [0, 1j]], dtype=complex),
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    "T": np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=complex),
}
_P0 = np.array([[1, 0], [0, 0]], dtype=complex)
_P1 = np.array([[0, 0], [0, 1]], dtype=complex)


def _kron_all(mats):
    return reduce(np.kron, mats)


def gate_unitary(g: Gate, n: int) -> np.ndarray:
    """Full ``2^n x 2^n`` matrix of a single gate."""
    if g.kind == "CNOT":
        a = [I2] * n
        b = [I2] * n
        a[g.control] = _P0
        b[g.control] = _P1
        b[g.target] = GATE_MATRICES["X"]
        return _kron_all(a) + _kron_all(b)
    ops = [I2] * n
    ops[g.wire] = GATE_MATRICES[g.kind]
    return _kron_all(ops)


def circuit_unitary(c: Circuit, cap: int = ORACLE_QUBIT_CAP) -> np.ndarray:
    if c.n > cap:
        raise CapExceeded(f"dense oracle is capped at {cap} qubits, circuit has {c.n}")
    u = np.eye(2 ** c.n, dtype=complex)
    for g in c.gates:
        u = gate_unitary(g, c.n) @ u
    return u


def pauli_matrix(bits) -> np.ndarray:
    """Dense ``X^b Z^a`` tensor product for label bits ``(a_1, b_1, ..., a_n, b_n)``."""
    bits = tuple(getattr(bits, "bits", bits))
    x, z = GATE_MATRICES["X"], GATE_MATRICES["Z"]
    factors = []
    for i in range(0, len(bits), 2):
        a, b = bits[i], bits[i + 1]
        factors.append(np.linalg.matrix_power(x, b) @ np.linalg.matrix_power(z, a))
    return _kron_all(factors)


def pauli_sum_matrix(ps) -> np.ndarray:
    dim = 2 ** ps.n
    out = np.zeros((dim, dim), dtype=complex)
    for label, coeff in ps.items():
        out += complex(coeff) * pauli_matrix(label)
    return out


def _phase_pivot(u: np.ndarray, v: np.ndarray):
    idx = np.unravel_index(np.argmax(np.abs(v)), v.shape)
    if abs(v[idx]) == 0:
        return None
    lam = u[idx] / v[idx]
    if abs(lam) == 0:
        return None
    return lam / abs(lam)


def equal_up_to_phase(u: np.ndarray, v: np.ndarray, tol: float = 1e-9) -> bool:
    """True iff ``u = lambda * v`` entrywise within ``tol`` for some unit ``lambda``.

    ``lambda`` is read off the largest-magnitude entry of ``v``; smaller
    entries would make the ratio ill-conditioned.
    """
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    lam = _phase_pivot(u, v)
    if lam is None:
        return bool(np.max(np.abs(u), initial=0.0) <= tol)
    return bool(np.max(np.abs(u - lam * v)) <= tol)


def state_fidelity(psi: np.ndarray, phi: np.ndarray) -> float:
    """``|<psi|phi>|^2`` for normalized vectors (global phase drops out)."""
    return float(abs(np.vdot(psi, phi)) ** 2)


def align_phase(psi: np.ndarray, ref: np.ndarray) -> np.ndarray:
    """``psi`` rotated by the unit phase that matches ``ref`` on its largest amplitude."""
    lam = _phase_pivot(ref, psi)
    return psi if lam is None else psi * lam


def check_conjugation(c: Circuit, s, ps, tol: float = 1e-9) -> bool:
    """True iff ``dense(ps) @ U_c == U_c @ Pauli(s)`` entrywise, no phase slack."""
    if ps.n != c.n or len(tuple(getattr(s, "bits", s))) != 2 * c.n:
        raise ValueError("dimension mismatch between circuit, label and Pauli sum")
    u = circuit_unitary(c)
    lhs = pauli_sum_matrix(ps) @ u
    rhs = u @ pauli_matrix(s)
    return bool(np.max(np.abs(lhs - rhs)) <= tol)


def update_functions_equal(c1: Circuit, c2: Circuit, term_limit: int | None = None, cap: int = 3) -> bool:
    """True iff the exact Pauli-sum update maps of ``c1`` and ``c2`` agree on all 4^n labels."""
    from .pauli_sum import DEFAULT_TERM_LIMIT, propagate
    from .update import all_labels

    if c1.n != c2.n:
        raise ValueError("circuits act on different qubit counts")
    if c1.n > cap:
        raise CapExceeded(f"update-function comparison is capped at {cap} qubits")
    limit = DEFAULT_TERM_LIMIT if term_limit is None else term_limit
    return all(propagate(c1, s, limit) == propagate(c2, s, limit) for s in all_labels(c1.n))


def circuits_equivalent(c1: Circuit, c2: Circuit, tol: float = 1e-9) -> bool:
    if c1.n != c2.n:
        return False
    return equal_up_to_phase(circuit_unitary(c1), circuit_unitary(c2), tol)
