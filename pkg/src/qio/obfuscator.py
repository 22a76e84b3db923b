"""Obfuscation pipelines, the program container, evaluation and file format.

Three schemes are supported:

``canonical``
    The program is the canonical circuit of the tableau; no auxiliary state.
``teleport-clifford``
    Auxiliary state ``(I (x) C) |beta_00>^n`` plus an obfuscated classical
    update circuit that turns Bell outcomes into a Pauli correction.
``teleport-general``
    Same auxiliary state for a Clifford+T circuit; the correction is the full
    table ``outcome -> C Pauli(outcome) C^dagger`` of exact Pauli sums.

Evaluation joins ``input (x) aux`` into 3n qubits ordered input, aux side A,
aux side B, Bell-measures ``(input_i, A_i)`` and corrects side B.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .circuit import Circuit, parse_circuit, t_count
from .errors import CircuitParseError, NonCliffordError, ProgramFormatError, TCountExceeded
from .pauli_sum import DEFAULT_TERM_LIMIT, OmegaDyadic, PauliSum, propagate
from .sim import (Statevector, apply_circuit, apply_pauli, apply_pauli_sum, bell_branches,
                  bell_measure, bell_pairs)
from .tableau import canonical_synthesize, from_circuit
from .update import PauliLabel, UpdateCircuit, all_labels, compile_update_circuit, eval_update

SCHEMES = ("canonical", "teleport-clifford", "teleport-general")


@dataclass(frozen=True)
class ObfuscatedProgram:
    scheme: str
    n: int
    circuit: Circuit | None = None
    aux: Statevector | None = None
    update: UpdateCircuit | None = None
    table: Mapping[PauliLabel, PauliSum] | None = None

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.scheme == "canonical":
            if self.circuit is None or self.circuit.n != self.n:
                raise ValueError("canonical program needs an n-qubit circuit")
            return
        if self.aux is None or self.aux.m != 2 * self.n:
            raise ValueError("teleport program needs a 2n-qubit auxiliary state")
        if abs(self.aux.norm() - 1) > 1e-12:
            raise ValueError("auxiliary state is not normalized")
        if self.scheme == "teleport-clifford":
            if self.update is None or self.update.n != self.n:
                raise ValueError("teleport-clifford program needs an n-wire update circuit")
        else:
            if self.table is None or len(self.table) != 4 ** self.n:
                raise ValueError("teleport-general program needs all 4^n correction entries")


@dataclass(frozen=True)
class EvalReport:
    outcome: PauliLabel | None
    output: Statevector
    branch_probability: float


def _require_clifford(c: Circuit) -> None:
    for pos, g in enumerate(c.gates):
        if g.kind == "T":
            raise NonCliffordError(f"gate {pos} is T; scheme needs a Clifford circuit", position=pos)


def _side_b(n: int) -> list[int]:
    return list(range(n, 2 * n))


def qio_canonical(c: Circuit) -> ObfuscatedProgram:
    return ObfuscatedProgram("canonical", c.n, circuit=canonical_synthesize(from_circuit(c)))


def qio_teleport_clifford(c: Circuit) -> ObfuscatedProgram:
    """Gate-teleportation obfuscation of a Clifford circuit.

    Both the auxiliary state and the update circuit are built from the
    canonical form of ``c``, so equivalent inputs serialize identically.
    """
    _require_clifford(c)
    canon = canonical_synthesize(from_circuit(c))
    aux = apply_circuit(bell_pairs(c.n), canon, _side_b(c.n))
    return ObfuscatedProgram("teleport-clifford", c.n, aux=aux, update=compile_update_circuit(canon))


def qio_teleport_general(c: Circuit, term_limit: int = DEFAULT_TERM_LIMIT) -> ObfuscatedProgram:
    t = t_count(c)
    if 4 ** t > term_limit:
        raise TCountExceeded(f"T-count {t} needs up to 4^{t} correction terms, above the limit {term_limit}")
    aux = apply_circuit(bell_pairs(c.n), c, _side_b(c.n))
    table = {s: propagate(c, s, term_limit) for s in all_labels(c.n)}
    return ObfuscatedProgram("teleport-general", c.n, aux=aux, table=table)


def obfuscate(c: Circuit, scheme: str = "canonical", term_limit: int = DEFAULT_TERM_LIMIT) -> ObfuscatedProgram:
    if scheme == "canonical":
        return qio_canonical(c)
    if scheme == "teleport-clifford":
        return qio_teleport_clifford(c)
    if scheme == "teleport-general":
        return qio_teleport_general(c, term_limit)
    raise ValueError(f"unknown scheme {scheme!r}")


def obfuscate_k(c: Circuit, k: int, scheme: str = "canonical",
                term_limit: int = DEFAULT_TERM_LIMIT) -> list[ObfuscatedProgram]:
    """``k`` independently prepared programs, one per allowed evaluation."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return [obfuscate(c, scheme, term_limit) for _ in range(k)]


def _correct(p: ObfuscatedProgram, outcome: PauliLabel, residual: Statevector) -> Statevector:
    if p.scheme == "teleport-clifford":
        fixed = eval_update(p.update, outcome)
        # Z^a' X^b': X part first, then Z part
        x_part = PauliLabel(tuple(b if j % 2 else 0 for j, b in enumerate(fixed.bits)))
        z_part = PauliLabel(tuple(0 if j % 2 else b for j, b in enumerate(fixed.bits)))
        return apply_pauli(apply_pauli(residual, x_part), z_part)
    try:
        correction = p.table[outcome]
    except KeyError:
        raise ProgramFormatError(f"no correction for outcome {outcome}", "payload.correction") from None
    return apply_pauli_sum(residual, correction)


def _joint(p: ObfuscatedProgram, state: Statevector):
    if state.m != p.n:
        raise ValueError(f"program expects {p.n} input qubit(s), got {state.m}")
    pairs = [(i, p.n + i) for i in range(p.n)]
    return state.tensor(p.aux), pairs


def evaluate(p: ObfuscatedProgram, state: Statevector, *, branch: PauliLabel | None = None,
             seed: int | None = None, rng: np.random.Generator | None = None) -> EvalReport:
    """Run ``p`` on ``state``.

    Teleport schemes measure in the Bell basis; pass ``branch`` to replay a
    fixed outcome, otherwise the outcome is sampled from ``rng`` (or a fresh
    PCG64 generator seeded with ``seed``, default 0).
    """
    if p.scheme == "canonical":
        if state.m != p.n:
            raise ValueError(f"program expects {p.n} input qubit(s), got {state.m}")
        return EvalReport(None, apply_circuit(state, p.circuit), 1.0)
    joint, pairs = _joint(p, state)
    if branch is None and rng is None:
        rng = np.random.default_rng(0 if seed is None else seed)
    outcome, residual, prob = bell_measure(joint, pairs, rng=rng, outcome=branch)
    return EvalReport(outcome, _correct(p, outcome, residual), prob)


def evaluate_branches(p: ObfuscatedProgram, state: Statevector) -> list[EvalReport]:
    """Exhaustive mode: one report per Bell outcome with nonzero probability."""
    if p.scheme == "canonical":
        return [evaluate(p, state)]
    joint, pairs = _joint(p, state)
    return [EvalReport(br.outcome, _correct(p, br.outcome, br.residual), br.probability)
            for br in bell_branches(joint, pairs) if br.residual is not None]


# ---------------------------------------------------------------- file format

def _fmt(x: float) -> str:
    return f"{x + 0.0:.17g}"


def _state_to_json(s: Statevector) -> dict:
    return {"m": s.m, "amplitudes": [[_fmt(z.real), _fmt(z.imag)] for z in s.amps]}


def _sum_to_json(ps: PauliSum) -> dict:
    return {str(lab): list(c.numerators()) for lab, c in ps.items()}


def program_to_dict(p: ObfuscatedProgram) -> dict:
    if p.scheme == "canonical":
        payload = {"gates": [str(g) for g in p.circuit.gates]}
    elif p.scheme == "teleport-clifford":
        payload = {"aux": _state_to_json(p.aux),
                   "correction": [f"{name} {i} {j}" for name, i, j in p.update.ops]}
    else:
        payload = {"aux": _state_to_json(p.aux),
                   "correction": {str(s): _sum_to_json(p.table[s]) for s in sorted(p.table)}}
    return {"scheme": p.scheme, "n": p.n, "payload": payload}


def serialize_program(p: ObfuscatedProgram) -> str:
    return json.dumps(program_to_dict(p), indent=1) + "\n"


def _field(obj, key, path, kind=None):
    if not isinstance(obj, dict):
        raise ProgramFormatError("expected an object", path)
    if key not in obj:
        raise ProgramFormatError("missing field", f"{path}.{key}" if path else key)
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise ProgramFormatError(f"expected {kind.__name__}", f"{path}.{key}" if path else key)
    return val


def _state_from_json(obj, path: str, m: int) -> Statevector:
    got_m = _field(obj, "m", path, int)
    amps = _field(obj, "amplitudes", path, list)
    if got_m != m or len(amps) != 2 ** m:
        raise ProgramFormatError(f"expected {2 ** m} amplitudes on {m} qubits", path)
    try:
        vec = np.array([complex(float(re), float(im)) for re, im in amps])
        return Statevector(vec, m, check=False)
    except (TypeError, ValueError) as exc:
        raise ProgramFormatError(f"bad amplitude: {exc}", f"{path}.amplitudes") from None


def program_from_dict(obj) -> ObfuscatedProgram:
    scheme = _field(obj, "scheme", "", str)
    n = _field(obj, "n", "", int)
    payload = _field(obj, "payload", "", dict)
    try:
        if scheme == "canonical":
            gates = _field(payload, "gates", "payload", list)
            try:
                circ = parse_circuit(f"qubits {n}\n" + "".join(f"{g}\n" for g in gates))
            except CircuitParseError as exc:
                raise ProgramFormatError(str(exc), "payload.gates") from None
            return ObfuscatedProgram(scheme, n, circuit=circ)
        if scheme not in SCHEMES:
            raise ProgramFormatError(f"unknown scheme {scheme!r}", "scheme")
        aux = _state_from_json(_field(payload, "aux", "payload", dict), "payload.aux", 2 * n)
        if scheme == "teleport-clifford":
            lines = _field(payload, "correction", "payload", list)
            try:
                upd = UpdateCircuit.parse(f"update n={n}\n" + "".join(f"{ln}\n" for ln in lines))
            except ValueError as exc:
                raise ProgramFormatError(str(exc), "payload.correction") from None
            return ObfuscatedProgram(scheme, n, aux=aux, update=upd)
        raw = _field(payload, "correction", "payload", dict)
        table = {}
        for key, terms in raw.items():
            path = f"payload.correction.{key}"
            try:
                label = PauliLabel.from_string(key)
                if not isinstance(terms, dict):
                    raise ValueError("expected an object of terms")
                table[label] = PauliSum(n, {PauliLabel.from_string(t): OmegaDyadic.from_numerators(*v)
                                            for t, v in terms.items()})
            except (TypeError, ValueError) as exc:
                raise ProgramFormatError(str(exc), path) from None
        return ObfuscatedProgram(scheme, n, aux=aux, table=table)
    except ProgramFormatError:
        raise
    except ValueError as exc:
        raise ProgramFormatError(str(exc), "payload") from None


def deserialize_program(text: str) -> ObfuscatedProgram:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProgramFormatError(f"not valid JSON ({exc.msg} at line {exc.lineno})") from None
    return program_from_dict(obj)


def program_qubit_count(p: ObfuscatedProgram) -> int:
    """Qubits in the auxiliary state (0 for the canonical scheme)."""
    return 0 if p.aux is None else p.aux.m


def classical_size(p: ObfuscatedProgram) -> int:
    """Bytes of the serialized program with the auxiliary amplitudes left out."""
    d = program_to_dict(p)
    d["payload"].pop("aux", None)
    return len(json.dumps(d, indent=1)) + 1

