"""
Teleportation through Bell pairs
================================

Measuring an input qubit and one half of a Bell pair in the Bell basis
leaves the input on the other half, up to a known Pauli ``X^b Z^a``.
"""

import numpy as np

from qio.sim import bell_branches, bell_pairs, random_state
from qio.verify import pauli_matrix

rng = np.random.default_rng(0)
psi = random_state(1, rng)

# qubit 0 holds the input, (1, 2) is the Bell pair
joint = psi.tensor(bell_pairs(1))
for br in bell_branches(joint, [(0, 1)]):
    byproduct = pauli_matrix(br.outcome) @ psi.amps
    print(br.outcome, f"p={br.probability:.3f}",
          "residual is X^b Z^a psi:", np.allclose(br.residual.amps, byproduct))
