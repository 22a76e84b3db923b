"""Stabilizer tableaux of Clifford unitaries and deterministic circuit synthesis.

A tableau of an n-qubit Clifford ``U`` stores, for every generator
``X_1..X_n, Z_1..Z_n``, the Pauli ``U g U^dagger``. Row ``r`` holds bits
``[x_1..x_n | z_1..z_n]`` plus a sign bit ``s`` and denotes
``(-1)^s * prod_j i^(x_j z_j) X_j^(x_j) Z_j^(z_j)``, i.e. a per-qubit
``Y`` where both bits are set. With that convention every row is Hermitian
and only a sign has to be tracked.

The tableau determines ``U`` up to global phase, so it is the canonical
datum; :func:`canonical_synthesize` turns it into a circuit by a fixed
elimination order that reads nothing but the tableau bits.
"""

from __future__ import annotations

import numpy as np

from .circuit import CNOT, Circuit, Gate, H, P, X, Z
from .errors import NonCliffordError


class CliffordTableau:
    """Immutable 2n x 2n symplectic matrix over GF(2) plus 2n sign bits."""

    __slots__ = ("n", "matrix", "phases")

    def __init__(self, n: int, matrix, phases):
        matrix = np.array(matrix, dtype=np.uint8) & 1
        phases = np.array(phases, dtype=np.uint8) & 1
        if matrix.shape != (2 * n, 2 * n) or phases.shape != (2 * n,):
            raise ValueError(f"tableau shapes do not match n={n}")
        matrix.flags.writeable = False
        phases.flags.writeable = False
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "phases", phases)

    def __setattr__(self, name, value):
        raise AttributeError("CliffordTableau is immutable")

    def __eq__(self, other):
        if not isinstance(other, CliffordTableau):
            return NotImplemented
        return (self.n == other.n and np.array_equal(self.matrix, other.matrix)
                and np.array_equal(self.phases, other.phases))

    def __hash__(self):
        return hash((self.n, self.matrix.tobytes(), self.phases.tobytes()))

    def __repr__(self):
        return f"CliffordTableau(n={self.n})"

    @property
    def x_rows(self) -> np.ndarray:
        """Images of X_1..X_n."""
        return self.matrix[: self.n]

    @property
    def z_rows(self) -> np.ndarray:
        """Images of Z_1..Z_n."""
        return self.matrix[self.n:]

    def is_symplectic(self) -> bool:
        n = self.n
        m = self.matrix.astype(np.int64)
        j = np.zeros((2 * n, 2 * n), dtype=np.int64)
        j[:n, n:] = np.eye(n, dtype=np.int64)
        j[n:, :n] = np.eye(n, dtype=np.int64)
        return bool(np.array_equal((m @ j @ m.T) % 2, j))

    def dump(self) -> str:
        """Debug text: header, then one ``<2n bits> <sign>`` line per row."""
        lines = [f"tableau n={self.n}"]
        for row, s in zip(self.matrix, self.phases):
            lines.append("".join(map(str, row.tolist())) + f" {int(s)}")
        return "\n".join(lines) + "\n"


def identity_tableau(n: int) -> CliffordTableau:
    if n < 1:
        raise ValueError("identity tableau needs n >= 1")
    return CliffordTableau(n, np.eye(2 * n, dtype=np.uint8), np.zeros(2 * n, dtype=np.uint8))


def _conjugate_rows(m: np.ndarray, r: np.ndarray, n: int, g: Gate) -> None:
    """In-place conjugation of every row by ``g`` (standard sign bookkeeping)."""
    k = g.kind
    if k == "T":
        raise NonCliffordError("T is not a Clifford gate")
    if k == "CNOT":
        c, t = g.control, g.target
        xc, xt, zc, zt = m[:, c], m[:, t], m[:, n + c], m[:, n + t]
        r ^= xc & zt & (xt ^ zc ^ 1)
        m[:, t] ^= xc
        m[:, n + c] ^= zt
        return
    q = g.wire
    x, z = m[:, q], m[:, n + q]
    if k == "X":
        r ^= z
    elif k == "Z":
        r ^= x
    elif k == "H":
        r ^= x & z
        m[:, [q, n + q]] = m[:, [n + q, q]]
    elif k == "P":
        r ^= x & z
        m[:, n + q] ^= x


def apply_gate(t: CliffordTableau, g: Gate) -> CliffordTableau:
    """Tableau of ``g * U`` where ``U`` is the unitary of ``t``."""
    if g.kind == "T":
        raise NonCliffordError("T is not a Clifford gate")
    m = t.matrix.copy()
    r = t.phases.copy()
    _conjugate_rows(m, r, t.n, g)
    return CliffordTableau(t.n, m, r)


def from_circuit(c: Circuit) -> CliffordTableau:
    m = np.eye(2 * c.n, dtype=np.uint8)
    r = np.zeros(2 * c.n, dtype=np.uint8)
    for pos, g in enumerate(c.gates):
        if g.kind == "T":
            raise NonCliffordError(f"gate {pos} is T; circuit is not Clifford", position=pos)
        _conjugate_rows(m, r, c.n, g)
    return CliffordTableau(c.n, m, r)


def canonical_synthesize(t: CliffordTableau) -> Circuit:
    """Deterministic circuit for ``t``.

    Gates are chosen that map the tableau to the identity, working qubit by
    qubit in increasing order:

    1. row ``X_i``: move every Z-only bit on qubits >= i to an X bit with H,
       bring an X bit onto qubit i with CNOT, clear the other X bits with
       CNOT(i, k), clear remaining Z bits with H then CNOT(i, k), and drop a
       Z on qubit i with P;
    2. row ``Z_i``: clear a Y on qubit i with H P H, then fold every other
       qubit k > i into a Z (P and/or H) and clear it with CNOT(k, i);
    3. once every row is ``+-X_i`` / ``+-Z_i``, fix signs with Z (for X rows)
       and X (for Z rows).

    The reduction sequence is then reversed and inverted (P^-1 = Z P).
    The identity tableau yields the empty circuit.
    """
    n = t.n
    m = t.matrix.copy()
    r = t.phases.copy()
    ops: list[Gate] = []

    def emit(g: Gate) -> None:
        ops.append(g)
        _conjugate_rows(m, r, n, g)

    for i in range(n):
        row = i
        # -- X_i row -> X_i
        for k in range(i, n):
            if m[row, k] == 0 and m[row, n + k] == 1:
                emit(H(k))
        if m[row, i] == 0:
            j = next(k for k in range(i + 1, n) if m[row, k])
            emit(CNOT(j, i))
        for k in range(i + 1, n):
            if m[row, k]:
                emit(CNOT(i, k))
        for k in range(i + 1, n):
            if m[row, n + k]:
                emit(H(k))
                emit(CNOT(i, k))
        if m[row, n + i]:
            emit(P(i))
        # -- Z_i row -> Z_i
        row = n + i
        if m[row, i]:
            emit(H(i))
            emit(P(i))
            emit(H(i))
        for k in range(i + 1, n):
            xk, zk = m[row, k], m[row, n + k]
            if xk and zk:
                emit(P(k))
                emit(H(k))
            elif xk:
                emit(H(k))
            if m[row, n + k]:
                emit(CNOT(k, i))
    for i in range(n):
        if r[i]:
            emit(Z(i))
    for i in range(n):
        if r[n + i]:
            emit(X(i))
    assert np.array_equal(m, np.eye(2 * n, dtype=np.uint8)) and not r.any()

    out: list[Gate] = []
    for g in reversed(ops):
        if g.kind == "P":
            out += [Z(g.wire), P(g.wire)]
        else:
            out.append(g)
    return Circuit(n, tuple(out))


def max_canonical_size(n: int) -> int:
    """Upper bound on ``len(canonical_synthesize(t))`` for any n-qubit tableau.

    Per qubit i with ``r = n - i - 1`` later qubits, the X row costs at most
    ``(r + 1) + 1 + r + 2r + 2`` gates (P counts twice after inversion) and
    the Z row at most ``4 + 4r``; sign fixing adds two.
    """
    return sum(8 * (n - i - 1) + 10 for i in range(n))
