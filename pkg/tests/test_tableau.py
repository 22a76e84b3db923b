from functools import reduce

import numpy as np
import pytest

from qio.circuit import CNOT, Circuit, H, P, T, X, Z, equivalent_pair, random_circuit, serialize_circuit
from qio.errors import NonCliffordError
from qio.tableau import (apply_gate, canonical_synthesize, from_circuit, identity_tableau,
                         max_canonical_size)
from qio.verify import GATE_MATRICES, circuit_unitary, equal_up_to_phase

XM, ZM, I2 = GATE_MATRICES["X"], GATE_MATRICES["Z"], np.eye(2)


def row_matrix(row, sign, n):
    """Dense operator of a tableau row, with Y where both bits are set."""
    factors = []
    for j in range(n):
        x, z = row[j], row[n + j]
        f = I2.astype(complex)
        if x:
            f = f @ XM
        if z:
            f = f @ ZM
        if x and z:
            f = 1j * f
        factors.append(f)
    return (-1) ** int(sign) * reduce(np.kron, factors)


def generator(n, idx):
    factors = [I2] * n
    factors[idx % n] = XM if idx < n else ZM
    return reduce(np.kron, factors)


def assert_tableau_matches_unitary(t, u):
    n = t.n
    for r in range(2 * n):
        expected = u @ generator(n, r) @ u.conj().T
        assert np.allclose(row_matrix(t.matrix[r], t.phases[r], n), expected, atol=1e-12)


def test_identity_tableau():
    t = identity_tableau(1)
    assert np.array_equal(t.matrix, np.eye(2)) and not t.phases.any()
    assert np.array_equal(identity_tableau(3).matrix, np.eye(6))
    assert identity_tableau(3).is_symplectic()
    with pytest.raises(ValueError):
        identity_tableau(0)


def test_hadamard_swaps_x_and_z():
    t = apply_gate(identity_tableau(1), H(0))
    assert t.matrix.tolist() == [[0, 1], [1, 0]] and not t.phases.any()


def test_p_twice_is_z():
    t = apply_gate(apply_gate(identity_tableau(1), P(0)), P(0))
    assert t == from_circuit(Circuit(1, (Z(0),)))


def test_x_flips_z_row_sign():
    t = apply_gate(identity_tableau(1), X(0))
    assert t.matrix.tolist() == [[1, 0], [0, 1]]
    assert t.phases.tolist() == [0, 1]


def test_t_is_rejected():
    with pytest.raises(NonCliffordError):
        apply_gate(identity_tableau(1), T(0))
    with pytest.raises(NonCliffordError) as info:
        from_circuit(Circuit(2, (H(0), CNOT(0, 1), T(1))))
    assert info.value.position == 2


def test_from_circuit_examples():
    assert from_circuit(Circuit(1, (H(0), H(0)))) == identity_tableau(1)
    assert from_circuit(Circuit(1, (P(0), P(0)))) == from_circuit(Circuit(1, (Z(0),)))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_tableau_rules_against_dense_conjugation(n):
    for seed in range(40):
        c = random_circuit(n, 12, 0, seed)
        t = from_circuit(c)
        assert t.is_symplectic()
        assert_tableau_matches_unitary(t, circuit_unitary(c))


def test_symplectic_after_every_gate():
    c = random_circuit(4, 40, 0, 3)
    t = identity_tableau(4)
    for g in c.gates:
        t = apply_gate(t, g)
        assert t.is_symplectic()


def test_canonical_identity_is_empty():
    assert canonical_synthesize(identity_tableau(3)).gates == ()


def test_canonical_of_hadamard_round_trips():
    t = from_circuit(Circuit(1, (H(0),)))
    c = canonical_synthesize(t)
    assert from_circuit(c) == t
    assert c == canonical_synthesize(t)


def test_canonical_round_trip_corpus():
    for seed in range(200):
        n = 1 + seed % 4
        c = random_circuit(n, 5 + seed % 25, 0, seed)
        t = from_circuit(c)
        canon = canonical_synthesize(t)
        assert from_circuit(canon) == t
        assert len(canon) <= max_canonical_size(n)


def test_canonical_soundness_dense():
    for seed in range(60):
        c = random_circuit(1 + seed % 3, 20, 0, seed)
        canon = canonical_synthesize(from_circuit(c))
        assert equal_up_to_phase(circuit_unitary(canon), circuit_unitary(c), 1e-9)


def test_canonicity_on_equivalent_pairs():
    for seed in range(100):
        base = random_circuit(1 + seed % 4, 10, 0, seed)
        c1, c2 = equivalent_pair(base, seed + 1000)
        s1 = serialize_circuit(canonical_synthesize(from_circuit(c1)))
        s2 = serialize_circuit(canonical_synthesize(from_circuit(c2)))
        assert s1 == s2


def test_size_bound_is_quadratic():
    for n in range(1, 10):
        assert max_canonical_size(n) == 4 * n * n + 6 * n


def test_dump_format():
    text = from_circuit(Circuit(1, (X(0),))).dump()
    assert text == "tableau n=1\n10 0\n01 1\n"
