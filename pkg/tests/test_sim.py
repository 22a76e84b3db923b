import numpy as np
import pytest

from qio.circuit import CNOT, Circuit, H, P, T, X, Z, random_circuit
from qio.errors import CapExceeded
from qio.pauli_sum import GaussianDyadic, PauliSum, propagate
from qio.sim import (Statevector, apply_circuit, apply_pauli, apply_pauli_sum, basis_state,
                     bell_branches, bell_measure, bell_pairs, random_state)
from qio.update import PauliLabel, all_labels
from qio.verify import circuit_unitary, pauli_matrix, pauli_sum_matrix, state_fidelity

SQ = 1 / np.sqrt(2)


def test_basis_state():
    assert np.array_equal(basis_state(2, "10").amps, [0, 0, 1, 0])
    with pytest.raises(ValueError):
        basis_state(2, "1")


def test_bell_pairs_single():
    assert np.allclose(bell_pairs(1).amps, [SQ, 0, 0, SQ])


def test_bell_pairs_layout():
    s = bell_pairs(2)
    nz = {f"{i:04b}" for i in np.flatnonzero(s.amps)}
    # pair i sits on qubits (i, n + i)
    assert nz == {"0000", "0101", "1010", "1111"}
    assert np.allclose(s.amps[list(int(x, 2) for x in nz)], 0.5)


def test_gate_examples():
    assert np.allclose(apply_circuit(basis_state(1, "0"), Circuit(1, (H(0),))).amps, [SQ, SQ])
    assert np.allclose(apply_circuit(basis_state(1, "0"), Circuit(1, (X(0),))).amps, [0, 1])
    tt = apply_circuit(basis_state(1, "1"), Circuit(1, (T(0), T(0))))
    assert np.allclose(tt.amps, [0, 1j])


def test_qubit_zero_is_most_significant():
    out = apply_circuit(basis_state(2, "00"), Circuit(2, (X(0),)))
    assert np.flatnonzero(out.amps).tolist() == [2]
    out = apply_circuit(basis_state(2, "10"), Circuit(2, (CNOT(0, 1),)))
    assert np.flatnonzero(out.amps).tolist() == [3]


def test_apply_circuit_matches_dense(rng):
    for seed in range(30):
        c = random_circuit(1 + seed % 4, 20, seed % 4, seed)
        s = random_state(c.n, rng)
        assert np.allclose(apply_circuit(s, c).amps, circuit_unitary(c) @ s.amps, atol=1e-12)


def test_wire_mapping(rng):
    c = Circuit(2, (H(0), CNOT(0, 1), P(1)))
    s = random_state(4, rng)
    # run on qubits 3 and 1; compare against the dense operator placed by permutation
    out = apply_circuit(s, c, [3, 1])
    psi = s.amps.reshape([2] * 4).transpose(3, 1, 0, 2).reshape(4, 4)
    ref = (circuit_unitary(c) @ psi).reshape(2, 2, 2, 2).transpose(2, 1, 3, 0).reshape(-1)
    assert np.allclose(out.amps, ref)


def test_apply_pauli_matches_matrix(rng):
    for label in all_labels(2):
        s = random_state(2, rng)
        assert np.allclose(apply_pauli(s, label).amps, pauli_matrix(label) @ s.amps)


def test_teleport_identity_outcomes():
    rng = np.random.default_rng(7)
    psi = random_state(1, rng)
    joint = psi.tensor(bell_pairs(1))
    branches = bell_branches(joint, [(0, 1)])
    assert [str(b.outcome) for b in branches] == ["00", "01", "10", "11"]
    for br in branches:
        assert br.probability == pytest.approx(0.25, abs=1e-12)
        # residual is X^b Z^a |psi>, exactly, with no extra phase
        expect = pauli_matrix(br.outcome) @ psi.amps
        assert np.allclose(br.residual.amps, expect, atol=1e-12)
    assert np.allclose(branches[0].residual.amps, psi.amps)


def test_teleport_two_qubits(rng):
    psi = random_state(2, rng)
    joint = psi.tensor(bell_pairs(2))
    for br in bell_branches(joint, [(0, 2), (1, 3)]):
        assert br.probability == pytest.approx(1 / 16)
        assert np.allclose(br.residual.amps, pauli_matrix(br.outcome) @ psi.amps)


def test_bell_measure_seeded_reproducible():
    joint = random_state(1, np.random.default_rng(3)).tensor(bell_pairs(1))
    a = [bell_measure(joint, [(0, 1)], rng=np.random.default_rng(11))[0] for _ in range(3)]
    b = [bell_measure(joint, [(0, 1)], rng=np.random.default_rng(11))[0] for _ in range(3)]
    assert a == b


def test_bell_measure_sampling_frequencies():
    joint = basis_state(1, "0").tensor(bell_pairs(1))
    rng = np.random.default_rng(5)
    counts = {}
    for _ in range(4000):
        lab = str(bell_measure(joint, [(0, 1)], rng=rng)[0])
        counts[lab] = counts.get(lab, 0) + 1
    assert set(counts) == {"00", "01", "10", "11"}
    assert all(abs(v / 4000 - 0.25) < 0.04 for v in counts.values())


def test_bell_measure_errors():
    s = bell_pairs(2)
    with pytest.raises(ValueError, match="overlap"):
        bell_measure(s, [(0, 1), (1, 2)], rng=np.random.default_rng(0))
    with pytest.raises(ValueError):
        bell_measure(s, [(0, 2)])
    # |beta_00> on (0, 1) directly: only outcome 00 is possible
    with pytest.raises(ValueError, match="zero probability"):
        bell_measure(bell_pairs(1), [(0, 1)], outcome=PauliLabel.from_string("01"))
    lab, res, p = bell_measure(bell_pairs(1), [(0, 1)], outcome=PauliLabel.from_string("00"))
    assert p == pytest.approx(1.0) and res.m == 0


def test_apply_pauli_sum_matches_dense(rng):
    for seed in range(15):
        c = random_circuit(2, 10, 1 + seed % 3, seed)
        for s_lab in list(all_labels(2))[::3]:
            ps = propagate(c, s_lab)
            s = random_state(2, rng)
            out = apply_pauli_sum(s, ps)
            assert np.allclose(out.amps, pauli_sum_matrix(ps) @ s.amps, atol=1e-12)


def test_apply_pauli_sum_refuses_non_unitary():
    ps = PauliSum(1, {PauliLabel.from_string("00"): GaussianDyadic(1, 0, 1)})
    with pytest.raises(ValueError, match="Parseval"):
        apply_pauli_sum(basis_state(1, "0"), ps)


def test_cap():
    with pytest.raises(CapExceeded):
        basis_state(25, "0" * 25)


def test_dump_and_parse():
    s = apply_circuit(basis_state(1, "0"), Circuit(1, (H(0), P(0))))
    text = s.dump()
    assert text.splitlines()[0] == "state m=1"
    assert text.splitlines()[2].startswith("1 0 0.7071067811865")
    back = Statevector.parse(text)
    assert np.array_equal(back.amps, s.amps)
    assert "-0 " not in apply_circuit(basis_state(1, "1"), Circuit(1, (Z(0),))).dump()


def test_fidelity_helper(rng):
    s = random_state(2, rng)
    assert state_fidelity(s.amps, 1j * s.amps) == pytest.approx(1.0)
