"""
Program files and the command line
==================================

Programs serialize to deterministic JSON. The ``qio`` command wraps the
same pipeline; here it is driven in-process.
"""

import tempfile
from pathlib import Path

from qio import Circuit, H, obfuscate, serialize_program, deserialize_program
from qio.cli import main

text = serialize_program(obfuscate(Circuit(1, (H(0),)), "teleport-clifford"))
print(text)
print("round trip:", serialize_program(deserialize_program(text)) == text)

with tempfile.TemporaryDirectory() as tmp:
    src = Path(tmp) / "h.qc"
    src.write_text("qubits 1\nH 0\n")
    prog = Path(tmp) / "h.json"
    main(["stats", str(src)])
    main(["obfuscate", str(src), "--scheme", "teleport-clifford", "--out", str(prog)])
    main(["evaluate", str(prog), "--input", "0", "--branch", "10"])
