"""Exact Pauli-sum propagation through Clifford+T circuits.

Coefficients live in the ring generated by ``1``, ``i``, ``omega = e^{i pi/4}``
and ``1/2``. A :class:`GaussianDyadic` is ``(p + q i) / 2^k``; a general
coefficient :class:`OmegaDyadic` is ``u + v * omega`` with Gaussian-dyadic
``u`` and ``v``. Clifford-only circuits never leave the Gaussian part.

For a circuit ``C`` and a label ``s``, :func:`propagate` returns the exact
operator ``C Pauli(s) C^dagger`` as a sum of ``X^b Z^a`` terms. Conjugating a
single term by a gate gives::

    X    : (-1)^a
    Z    : (-1)^b
    H    : (-1)^(a b),  (a, b) -> (b, a)
    P    : i^b,         (a, b) -> (a ^ b, b)
    CNOT : 1,           a_c ^= a_t, b_t ^= b_c
    T    : b = 0 unchanged; b = 1 splits into
           omega (1 + i)/2 on (a ^ 1, b)  +  omega (1 - i)/2 on (a, b)

The T rule comes from ``T X T^dagger = omega X Z P`` and
``P = (1 + i)/2 I + (1 - i)/2 Z``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Iterable, Mapping

from .circuit import Circuit, t_count
from .errors import TermLimitExceeded
from .update import PauliLabel

DEFAULT_TERM_LIMIT = 4 ** 10
OMEGA = cmath.exp(1j * cmath.pi / 4)


@dataclass(frozen=True)
class GaussianDyadic:
    """Exact ``(p + q i) / 2^k``, kept normalized (``k == 0`` or ``p``, ``q`` not both even)."""

    p: int = 0
    q: int = 0
    k: int = 0

    def __post_init__(self):
        p, q, k = self.p, self.q, self.k
        if k < 0:
            p, q, k = p << -k, q << -k, 0
        if p == 0 and q == 0:
            k = 0
        while k > 0 and p % 2 == 0 and q % 2 == 0:
            p, q, k = p // 2, q // 2, k - 1
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "k", k)

    def __add__(self, other: "GaussianDyadic") -> "GaussianDyadic":
        k = max(self.k, other.k)
        s1, s2 = k - self.k, k - other.k
        return GaussianDyadic((self.p << s1) + (other.p << s2), (self.q << s1) + (other.q << s2), k)

    def __neg__(self) -> "GaussianDyadic":
        return GaussianDyadic(-self.p, -self.q, self.k)

    def __sub__(self, other: "GaussianDyadic") -> "GaussianDyadic":
        return self + (-other)

    def __mul__(self, other: "GaussianDyadic") -> "GaussianDyadic":
        return GaussianDyadic(self.p * other.p - self.q * other.q,
                              self.p * other.q + self.q * other.p,
                              self.k + other.k)

    def conjugate(self) -> "GaussianDyadic":
        return GaussianDyadic(self.p, -self.q, self.k)

    def times_i(self) -> "GaussianDyadic":
        return GaussianDyadic(-self.q, self.p, self.k)

    def __bool__(self) -> bool:
        return bool(self.p or self.q)

    def __complex__(self) -> complex:
        return complex(self.p, self.q) / (2 ** self.k)

    def __str__(self) -> str:
        return f"({self.p}{self.q:+d}i)/2^{self.k}"


ZERO = GaussianDyadic(0, 0, 0)
ONE = GaussianDyadic(1, 0, 0)
HALF_ONE_PLUS_I = GaussianDyadic(1, 1, 1)
HALF_ONE_MINUS_I = GaussianDyadic(1, -1, 1)


def gd_add(x: GaussianDyadic, y: GaussianDyadic) -> GaussianDyadic:
    return x + y


def gd_mul(x: GaussianDyadic, y: GaussianDyadic) -> GaussianDyadic:
    return x * y


@dataclass(frozen=True)
class OmegaDyadic:
    """Exact ``u + v * omega`` with ``omega = e^{i pi/4}`` (so ``omega^2 = i``).

    ``{1, omega}`` is a basis over Q(i), so the pair ``(u, v)`` is unique.
    """

    u: GaussianDyadic = ZERO
    v: GaussianDyadic = ZERO

    @classmethod
    def of(cls, x) -> "OmegaDyadic":
        if isinstance(x, OmegaDyadic):
            return x
        if isinstance(x, GaussianDyadic):
            return cls(x, ZERO)
        if isinstance(x, int):
            return cls(GaussianDyadic(x))
        raise TypeError(f"cannot convert {type(x).__name__} exactly")

    def __add__(self, other) -> "OmegaDyadic":
        other = OmegaDyadic.of(other)
        return OmegaDyadic(self.u + other.u, self.v + other.v)

    __radd__ = __add__

    def __neg__(self) -> "OmegaDyadic":
        return OmegaDyadic(-self.u, -self.v)

    def __sub__(self, other) -> "OmegaDyadic":
        return self + (-OmegaDyadic.of(other))

    def __mul__(self, other) -> "OmegaDyadic":
        other = OmegaDyadic.of(other)
        u1, v1, u2, v2 = self.u, self.v, other.u, other.v
        return OmegaDyadic(u1 * u2 + (v1 * v2).times_i(), u1 * v2 + v1 * u2)

    __rmul__ = __mul__

    def times_i(self) -> "OmegaDyadic":
        return OmegaDyadic(self.u.times_i(), self.v.times_i())

    def times_omega(self) -> "OmegaDyadic":
        # (u + v w) w = v i + u w
        return OmegaDyadic(self.v.times_i(), self.u)

    def conjugate(self) -> "OmegaDyadic":
        # conj(omega) = -i omega
        return OmegaDyadic(self.u.conjugate(), -self.v.conjugate().times_i())

    def abs2(self) -> "OmegaDyadic":
        return self * self.conjugate()

    @property
    def k(self) -> int:
        """Denominator exponent of the common power-of-two denominator."""
        return max(self.u.k, self.v.k)

    @property
    def is_gaussian(self) -> bool:
        return not self.v

    def numerators(self) -> tuple[int, int, int, int, int]:
        """``(p_u, q_u, p_v, q_v, k)`` over the common denominator ``2^k``."""
        k = self.k
        su, sv = k - self.u.k, k - self.v.k
        return (self.u.p << su, self.u.q << su, self.v.p << sv, self.v.q << sv, k)

    @classmethod
    def from_numerators(cls, pu: int, qu: int, pv: int, qv: int, k: int) -> "OmegaDyadic":
        return cls(GaussianDyadic(pu, qu, k), GaussianDyadic(pv, qv, k))

    def __bool__(self) -> bool:
        return bool(self.u) or bool(self.v)

    def __eq__(self, other):
        if isinstance(other, (GaussianDyadic, int)):
            other = OmegaDyadic.of(other)
        if not isinstance(other, OmegaDyadic):
            return NotImplemented
        return self.u == other.u and self.v == other.v

    def __hash__(self):
        return hash((self.u, self.v))

    def __complex__(self) -> complex:
        return complex(self.u) + complex(self.v) * OMEGA

    def __str__(self) -> str:
        return str(self.u) if self.is_gaussian else f"{self.u} + {self.v}*w"


_ONE_W = OmegaDyadic(ONE)
_T_FLIP = OmegaDyadic(ZERO, HALF_ONE_PLUS_I)      # omega (1 + i)/2
_T_KEEP = OmegaDyadic(ZERO, HALF_ONE_MINUS_I)     # omega (1 - i)/2


class PauliSum:
    """Immutable map ``PauliLabel -> OmegaDyadic`` with zero terms removed."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[PauliLabel, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for label, coeff in items:
            if not isinstance(label, PauliLabel):
                label = PauliLabel(tuple(label))
            if label.n != n:
                raise ValueError(f"label {label} does not act on {n} qubit(s)")
            coeff = OmegaDyadic.of(coeff)
            if coeff:
                clean[label] = clean.get(label, OmegaDyadic()) + coeff
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_terms", {lab: clean[lab] for lab in sorted(clean) if clean[lab]})

    def __setattr__(self, name, value):
        raise AttributeError("PauliSum is immutable")

    def __len__(self) -> int:
        return len(self._terms)

    def __getitem__(self, label: PauliLabel) -> OmegaDyadic:
        return self._terms.get(label, OmegaDyadic())

    def __contains__(self, label) -> bool:
        return label in self._terms

    def items(self):
        """Terms in lexicographic label order."""
        return self._terms.items()

    def labels(self):
        return list(self._terms)

    def __eq__(self, other):
        if not isinstance(other, PauliSum):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, tuple(self._terms.items())))

    def __repr__(self):
        body = ", ".join(f"{lab}: {c}" for lab, c in self._terms.items())
        return f"PauliSum(n={self.n}, {{{body}}})"

    def max_denominator_exponent(self) -> int:
        return max((c.k for c in self._terms.values()), default=0)

    def dump(self) -> str:
        """One ``<label> <p_u> <q_u> <p_v> <q_v> <k>`` line per term, sorted by label."""
        out = []
        for lab, c in self._terms.items():
            out.append(f"{lab} " + " ".join(map(str, c.numerators())) + "\n")
        return "".join(out)

    @classmethod
    def parse(cls, n: int, text: str) -> "PauliSum":
        terms = {}
        for line in text.splitlines():
            if not line.strip():
                continue
            lab, *nums = line.split()
            if len(nums) != 5:
                raise ValueError(f"expected 6 fields per term line, got {line!r}")
            terms[PauliLabel.from_string(lab)] = OmegaDyadic.from_numerators(*map(int, nums))
        return cls(n, terms)


def _conjugate_term(bits: list[int], coeff: OmegaDyadic, g) -> list[tuple[tuple[int, ...], OmegaDyadic]]:
    k = g.kind
    if k == "CNOT":
        c, t = g.control, g.target
        bits[2 * c] ^= bits[2 * t]
        bits[2 * t + 1] ^= bits[2 * c + 1]
        return [(tuple(bits), coeff)]
    q = g.wire
    a, b = bits[2 * q], bits[2 * q + 1]
    if k == "X":
        return [(tuple(bits), -coeff if a else coeff)]
    if k == "Z":
        return [(tuple(bits), -coeff if b else coeff)]
    if k == "H":
        bits[2 * q], bits[2 * q + 1] = b, a
        return [(tuple(bits), -coeff if a and b else coeff)]
    if k == "P":
        bits[2 * q] = a ^ b
        return [(tuple(bits), coeff.times_i() if b else coeff)]
    # T
    if not b:
        return [(tuple(bits), coeff)]
    keep = tuple(bits)
    bits[2 * q] ^= 1
    return [(tuple(bits), coeff * _T_FLIP), (keep, coeff * _T_KEEP)]


def propagate(c: Circuit, s: PauliLabel, term_limit: int = DEFAULT_TERM_LIMIT) -> PauliSum:
    """Exact ``C Pauli(s) C^dagger`` as a Pauli sum.

    Raises :class:`TermLimitExceeded` when ``4^t_count(c)`` exceeds
    ``term_limit``.
    """
    if s.n != c.n:
        raise ValueError(f"label has {s.n} wires, circuit has {c.n}")
    t = t_count(c)
    if 4 ** t > term_limit:
        raise TermLimitExceeded(f"T-count {t} allows up to 4^{t} terms, above the limit {term_limit}")
    terms: dict[tuple[int, ...], OmegaDyadic] = {s.bits: _ONE_W}
    for g in c.gates:
        nxt: dict[tuple[int, ...], OmegaDyadic] = {}
        for bits, coeff in terms.items():
            for lab, val in _conjugate_term(list(bits), coeff, g):
                nxt[lab] = nxt[lab] + val if lab in nxt else val
        terms = {lab: v for lab, v in nxt.items() if v}
    return PauliSum(c.n, ((PauliLabel(b), v) for b, v in terms.items()))


def parseval(ps: PauliSum) -> OmegaDyadic:
    """Exact ``sum |beta_i|^2``; equals 1 for every :func:`propagate` output."""
    total = OmegaDyadic()
    for _, coeff in ps.items():
        total = total + coeff.abs2()
    return total
