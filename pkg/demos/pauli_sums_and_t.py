"""
Corrections past a T gate
=========================

Conjugating a Pauli through T does not give a Pauli; it gives a short sum
of Paulis. Coefficients stay exact in the ring generated by (1 +/- i)/2
and the eighth root of unity.
"""

from qio import Circuit, H, T, propagate
from qio.pauli_sum import GaussianDyadic, parseval
from qio.update import PauliLabel, all_labels

half = GaussianDyadic(1, 1, 1)        # (1 + i) / 2
print(half * half.conjugate())        # 1/2

x = PauliLabel.from_string("01")      # X on one qubit
ps = propagate(Circuit(1, (T(0),)), x)
print(ps.dump())
for label, coeff in ps.items():
    print(label, complex(coeff))

# sums stay normalized and grow slowly with the number of T gates
c = Circuit(1, (T(0), H(0), T(0), H(0), T(0)))
for s in all_labels(1):
    out = propagate(c, s)
    print(s, len(out), "terms, Parseval", parseval(out), "max k", out.max_denominator_exponent())
