"""
Gate teleportation for Clifford circuits
========================================

The circuit is baked into an auxiliary state. After the Bell measurement,
a small classical XOR/SWAP network turns the measured byproduct into the
Pauli correction that has to follow the circuit.
"""

import numpy as np

from qio import obfuscate, random_circuit
from qio.obfuscator import evaluate, evaluate_branches
from qio.sim import apply_circuit, random_state
from qio.verify import state_fidelity

c = random_circuit(2, 15, 0, seed=3)
prog = obfuscate(c, "teleport-clifford")
print("aux qubits:", prog.aux.m)
print(prog.update.dump())

psi = random_state(2, np.random.default_rng(1))
want = apply_circuit(psi, c).amps

# one seeded run
rep = evaluate(prog, psi, seed=11)
print("outcome", rep.outcome, "fidelity", state_fidelity(rep.output.amps, want))

# every branch at once
fids = [state_fidelity(r.output.amps, want) for r in evaluate_branches(prog, psi)]
print(len(fids), "branches, worst fidelity", min(fids))
