"""
Circuits, tableaux and canonical forms
======================================

A Clifford circuit is fully described by how it conjugates Paulis. The
tableau records that action; re-synthesizing a circuit from the tableau
gives one fixed representative per Clifford unitary.
"""

from qio import Circuit, CNOT, H, P, Z, parse_circuit, serialize_circuit
from qio.tableau import canonical_synthesize, from_circuit, max_canonical_size
from qio.verify import circuits_equivalent

# circuits are plain text: a header, then one gate per line
c = parse_circuit("qubits 2\nH 0\nCNOT 0 1\nP 1\n")
print(serialize_circuit(c))

# the tableau: images of X_1, X_2, Z_1, Z_2 with their signs
print(from_circuit(c).dump())

# two spellings of the same unitary
a = Circuit(1, (P(0), P(0)))
b = Circuit(1, (Z(0),))
print("P P equals Z up to phase:", circuits_equivalent(a, b))

# ...share one canonical circuit
ca = canonical_synthesize(from_circuit(a))
cb = canonical_synthesize(from_circuit(b))
print(serialize_circuit(ca) == serialize_circuit(cb), serialize_circuit(ca))

# canonical circuits never exceed a quadratic gate budget
for n in range(1, 6):
    print(n, max_canonical_size(n))
