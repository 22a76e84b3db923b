"""
Obfuscating a Clifford circuit by canonicalization
==================================================

Equivalent circuits of the same size produce byte-identical programs, so the
program reveals nothing about which circuit it came from.
"""

from qio import obfuscate, random_circuit, serialize_program
from qio.circuit import equivalent_pair

base = random_circuit(3, 20, 0, seed=7)
c1, c2 = equivalent_pair(base, seed=7)
print("sizes", len(c1), len(c2))
print("same gate list?", c1.gates == c2.gates)

p1 = serialize_program(obfuscate(c1, "canonical"))
p2 = serialize_program(obfuscate(c2, "canonical"))
print("identical programs?", p1 == p2)
print(p1)
