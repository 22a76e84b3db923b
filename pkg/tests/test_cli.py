import json

import numpy as np
import pytest

from qio.cli import main
from qio.sim import Statevector
from qio.verify import state_fidelity


@pytest.fixture
def qc(tmp_path):
    def write(name, body, n=1):
        path = tmp_path / name
        path.write_text(f"qubits {n}\n" + "".join(f"{g}\n" for g in body))
        return str(path)
    return write


def _state(out):
    lines = out.splitlines()
    start = next(i for i, ln in enumerate(lines) if ln.startswith("state m="))
    return Statevector.parse("\n".join(lines[start:]))


def test_canonicalize_p_squared_and_z(qc, capsys):
    assert main(["canonicalize", qc("pp.qc", ["P 0", "P 0"])]) == 0
    a = capsys.readouterr().out
    assert main(["canonicalize", qc("z.qc", ["Z 0"])]) == 0
    assert capsys.readouterr().out == a


def test_canonicalize_hh_is_empty(qc, capsys):
    assert main(["canonicalize", qc("hh.qc", ["H 0", "H 0"])]) == 0
    assert capsys.readouterr().out == "qubits 1\n"


def test_canonicalize_t_exit_3(qc, capsys):
    assert main(["canonicalize", qc("t.qc", ["T 0"])]) == 3
    assert "T" in capsys.readouterr().err


def test_parse_error_exit_2(qc, capsys):
    assert main(["canonicalize", qc("bad.qc", ["Q 0"])]) == 2
    assert "line 2" in capsys.readouterr().err


def test_obfuscate_deterministic(qc, tmp_path):
    src = qc("c.qc", ["H 0", "CNOT 0 1", "P 1"], n=2)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["obfuscate", src, "--scheme", "teleport-clifford", "--out", str(a)]) == 0
    assert main(["obfuscate", src, "--scheme", "teleport-clifford", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_obfuscate_equivalent_pair_identical(qc, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["obfuscate", qc("pp.qc", ["P 0", "P 0"]), "--scheme", "teleport-clifford", "--out", str(a)]) == 0
    assert main(["obfuscate", qc("z.qc", ["Z 0", "X 0", "X 0"]), "--scheme", "teleport-clifford",
                 "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_obfuscate_term_limit_exit_4(qc):
    src = qc("t.qc", ["T 0"] * 5)
    assert main(["obfuscate", src, "--scheme", "teleport-general", "--term-limit", "16"]) == 4


def test_evaluate_identity(qc, tmp_path, capsys):
    prog = tmp_path / "id.json"
    assert main(["obfuscate", qc("id.qc", []), "--scheme", "teleport-clifford", "--out", str(prog)]) == 0
    assert main(["evaluate", str(prog), "--input", "0", "--branch", "00"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("outcome 00\nprobability 0.25")
    assert np.allclose(_state(out).amps, [1, 0])
    for branch in ("01", "10", "11"):
        assert main(["evaluate", str(prog), "--input", "1", "--branch", branch]) == 0
        assert state_fidelity(_state(capsys.readouterr().out).amps, np.array([0, 1])) >= 1 - 1e-10


def test_evaluate_matches_run(qc, tmp_path, capsys):
    src = qc("c.qc", ["H 0", "CNOT 0 1", "P 1", "H 1"], n=2)
    prog = tmp_path / "p.json"
    assert main(["obfuscate", src, "--scheme", "teleport-clifford", "--out", str(prog)]) == 0
    assert main(["run", src, "--state", "10"]) == 0
    direct = Statevector.parse(capsys.readouterr().out)
    assert main(["evaluate", str(prog), "--input", "10", "--seed", "3"]) == 0
    assert state_fidelity(_state(capsys.readouterr().out).amps, direct.amps) >= 1 - 1e-10


def test_evaluate_state_file_input(qc, tmp_path, capsys):
    src = qc("h.qc", ["H 0"])
    assert main(["run", src, "--state", "0"]) == 0
    state_file = tmp_path / "plus.state"
    state_file.write_text(capsys.readouterr().out)
    prog = tmp_path / "p.json"
    assert main(["obfuscate", src, "--out", str(prog)]) == 0
    assert main(["evaluate", str(prog), "--input", str(state_file)]) == 0
    assert np.allclose(_state(capsys.readouterr().out).amps, [1, 0])


def test_verify_equiv(qc, capsys):
    assert main(["verify-equiv", qc("pp.qc", ["P 0", "P 0"]), qc("z.qc", ["Z 0"])]) == 0
    assert main(["verify-equiv", qc("h.qc", ["H 0"]), qc("x.qc", ["X 0"])]) == 1
    big = qc("big.qc", [], n=11)
    assert main(["verify-equiv", big, big]) == 5


def test_stats(qc, capsys):
    assert main(["stats", qc("t3.qc", ["T 0", "H 0", "T 0", "T 0"])]) == 0
    out = capsys.readouterr().out
    assert "t_count 3" in out and "term_forecast 64" in out
    assert main(["stats", qc("c.qc", ["H 0"])]) == 0
    assert "term_forecast 1\n" in capsys.readouterr().out
    assert main(["stats", qc("e.qc", [])]) == 0
    out = capsys.readouterr().out
    assert "size 0\n" in out and "term_forecast 1\n" in out


def test_config_file(qc, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"term_limit": 16}))
    src = qc("t.qc", ["T 0"] * 3)
    assert main(["--config", str(cfg), "obfuscate", src, "--scheme", "teleport-general"]) == 4
    cfg.write_text(json.dumps({"bogus": 1}))
    assert main(["--config", str(cfg), "stats", src]) == 2
