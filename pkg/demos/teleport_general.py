"""
Gate teleportation with a few T gates
=====================================

For Clifford+T circuits the program stores, for every Bell outcome, the
exact Pauli sum to apply afterwards. The table has 4^n entries and each
entry has at most 4^t terms.
"""

import numpy as np

from qio import obfuscate, random_circuit
from qio.circuit import equivalent_pair
from qio.obfuscator import evaluate_branches
from qio.sim import apply_circuit, random_state
from qio.verify import state_fidelity

c = random_circuit(2, 12, 3, seed=5)
prog = obfuscate(c, "teleport-general")
print("table entries", len(prog.table), "largest", max(len(v) for v in prog.table.values()))

psi = random_state(2, np.random.default_rng(2))
want = apply_circuit(psi, c).amps
print("worst fidelity", min(state_fidelity(r.output.amps, want) for r in evaluate_branches(prog, psi)))

# rewriting T T <-> P changes the circuit but not the table
c1, c2 = equivalent_pair(random_circuit(1, 6, 2, seed=8), seed=8, allow_t=True)
print([str(g) for g in c1.gates])
print([str(g) for g in c2.gates])
print("tables equal:", obfuscate(c1, "teleport-general").table == obfuscate(c2, "teleport-general").table)
