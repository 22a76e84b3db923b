"""Indistinguishability obfuscation for Clifford and low-T-count quantum circuits."""

from .circuit import (CNOT, Circuit, Gate, H, P, T, X, Z, equivalent_pair, parse_circuit,
                      random_circuit, serialize_circuit, t_count)
from .errors import (CapExceeded, CircuitParseError, NonCliffordError, ProgramFormatError, QioError,
                     TCountExceeded, TermLimitExceeded)
from .obfuscator import (EvalReport, ObfuscatedProgram, deserialize_program, evaluate,
                         evaluate_branches, obfuscate, obfuscate_k, qio_canonical, qio_teleport_clifford,
                         qio_teleport_general, serialize_program)
from .pauli_sum import GaussianDyadic, OmegaDyadic, PauliSum, gd_add, gd_mul, parseval, propagate
from .sim import Statevector, apply_circuit, basis_state, bell_measure, bell_pairs
from .tableau import CliffordTableau, apply_gate, canonical_synthesize, from_circuit, identity_tableau
from .update import (PauliLabel, UpdateCircuit, compile_update_circuit, compose_update, eval_update,
                     gate_update, io_update)

__version__ = "0.1.0"
