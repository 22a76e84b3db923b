"""Command-line entry point ``qio``.

Exit codes: 0 ok, 1 inequivalent, 2 parse error, 3 non-Clifford input,
4 T-count/term limit exceeded, 5 desk-scale cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from . import sim, verify
from .circuit import parse_circuit, serialize_circuit, t_count
from .errors import (CapExceeded, CircuitParseError, NonCliffordError, ProgramFormatError,
                     TermLimitExceeded)
from .obfuscator import SCHEMES, deserialize_program, evaluate, obfuscate, serialize_program
from .pauli_sum import DEFAULT_TERM_LIMIT
from .tableau import canonical_synthesize, from_circuit
from .update import PauliLabel

EXIT_OK, EXIT_INEQUIVALENT, EXIT_PARSE, EXIT_NON_CLIFFORD, EXIT_T_LIMIT, EXIT_CAP = range(6)


@dataclass
class CliConfig:
    seed: int = 0
    term_limit: int = DEFAULT_TERM_LIMIT
    qubit_cap: int = sim.SIM_QUBIT_CAP
    oracle_cap: int = verify.ORACLE_QUBIT_CAP

    @classmethod
    def load(cls, path: str | None) -> "CliConfig":
        if path is None:
            return cls()
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**raw)


def _read_circuit(path: str):
    return parse_circuit(Path(path).read_text(encoding="utf-8"))


def _read_input_state(spec: str, n: int) -> sim.Statevector:
    p = Path(spec)
    if p.is_file():
        state = sim.Statevector.parse(p.read_text(encoding="utf-8"))
        if abs(state.norm() - 1) > 1e-9:
            raise ValueError("input state is not normalized")
        return state
    return sim.basis_state(n, spec)


def cmd_canonicalize(args, cfg: CliConfig) -> int:
    c = _read_circuit(args.input)
    sys.stdout.write(serialize_circuit(canonical_synthesize(from_circuit(c))))
    return EXIT_OK


def cmd_obfuscate(args, cfg: CliConfig) -> int:
    c = _read_circuit(args.input)
    limit = args.term_limit if args.term_limit is not None else cfg.term_limit
    if c.n * (3 if args.scheme != "canonical" else 1) > cfg.qubit_cap:
        raise CapExceeded(f"evaluating this program needs more than {cfg.qubit_cap} qubits")
    text = serialize_program(obfuscate(c, args.scheme, limit))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_evaluate(args, cfg: CliConfig) -> int:
    prog = deserialize_program(Path(args.program).read_text(encoding="utf-8"))
    state = _read_input_state(args.input, prog.n)
    branch = PauliLabel.from_string(args.branch) if args.branch else None
    seed = args.seed if args.seed is not None else cfg.seed
    rep = evaluate(prog, state, branch=branch, seed=seed)
    out = sys.stdout
    out.write(f"outcome {rep.outcome if rep.outcome is not None else '-'}\n")
    out.write(f"probability {rep.branch_probability:.17g}\n")
    out.write(rep.output.dump())
    return EXIT_OK


def cmd_run(args, cfg: CliConfig) -> int:
    c = _read_circuit(args.input)
    if c.n > cfg.qubit_cap:
        raise CapExceeded(f"simulator cap is {cfg.qubit_cap} qubits")
    state = _read_input_state(args.state, c.n)
    sys.stdout.write(sim.apply_circuit(state, c).dump())
    return EXIT_OK


def cmd_verify_equiv(args, cfg: CliConfig) -> int:
    a, b = _read_circuit(args.a), _read_circuit(args.b)
    if max(a.n, b.n) > cfg.oracle_cap:
        raise CapExceeded(f"dense oracle cap is {cfg.oracle_cap} qubits")
    if a.n != b.n:
        print("inequivalent: qubit counts differ")
        return EXIT_INEQUIVALENT
    same = verify.equal_up_to_phase(verify.circuit_unitary(a, cfg.oracle_cap),
                                    verify.circuit_unitary(b, cfg.oracle_cap))
    checks = ["unitary"]
    if same and a.n <= 3 and 4 ** max(t_count(a), t_count(b)) <= cfg.term_limit:
        same = verify.update_functions_equal(a, b, cfg.term_limit)
        checks.append("update-function")
    print(("equivalent" if same else "inequivalent") + f" ({', '.join(checks)})")
    return EXIT_OK if same else EXIT_INEQUIVALENT


def cmd_stats(args, cfg: CliConfig) -> int:
    c = _read_circuit(args.input)
    t = t_count(c)
    print(f"qubits {c.n}")
    print(f"size {len(c)}")
    print(f"t_count {t}")
    print(f"clifford {'yes' if t == 0 else 'no'}")
    print(f"term_forecast {4 ** t}")
    print(f"within_term_limit {'yes' if 4 ** t <= cfg.term_limit else 'no'}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qio", description="Quantum circuit obfuscation toolkit")
    parser.add_argument("--config", help="JSON file with seed, term_limit, qubit_cap, oracle_cap")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("canonicalize", help="print the canonical form of a Clifford circuit")
    p.add_argument("input")
    p.set_defaults(func=cmd_canonicalize)

    p = sub.add_parser("obfuscate", help="write an obfuscated program")
    p.add_argument("input")
    p.add_argument("--scheme", choices=SCHEMES, default="canonical")
    p.add_argument("--out")
    p.add_argument("--term-limit", type=int)
    p.add_argument("--seed", type=int, help="accepted for symmetry; obfuscation is deterministic")
    p.set_defaults(func=cmd_obfuscate)

    p = sub.add_parser("evaluate", help="run an obfuscated program on an input state")
    p.add_argument("program")
    p.add_argument("--input", required=True, help="basis string such as 010, or a state dump file")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--branch", help="replay this Bell outcome (2n bits)")
    mode.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("run", help="simulate a circuit directly")
    p.add_argument("input")
    p.add_argument("--state", required=True, help="basis string or state dump file")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify-equiv", help="check two circuits for equivalence")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_verify_equiv)

    p = sub.add_parser("stats", help="size, T-count and correction-term forecast")
    p.add_argument("input")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = CliConfig.load(args.config)
        return args.func(args, cfg)
    except (CircuitParseError, ProgramFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NonCliffordError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NON_CLIFFORD
    except TermLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_T_LIMIT
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
