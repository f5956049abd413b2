"""Exact arithmetic on n-qubit Pauli operators in binary symplectic form.

A Pauli operator is stored as two bitmasks (x, z) plus a global phase that
is a power of i.  Bit j of each mask belongs to qubit j, and qubit 0 is the
leftmost character of a text label, so ``parse_pauli("XI")`` puts the X on
qubit 0.  The single-qubit encoding is

    (x=0, z=0) -> I      (x=1, z=0) -> X
    (x=0, z=1) -> Z      (x=1, z=1) -> Y

where the stored operator for (1, 1) is Y itself, not XZ; the multiplication
table below absorbs all i-bookkeeping, so Hamiltonian terms stay phase-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

_LABEL_CHARS = frozenset("IXYZ")

# Single-qubit code: 2*x + z, i.e. I=0, Z=1, X=2, Y=3.
_CODE_TO_CHAR = "IZXY"
_CHAR_TO_XZ = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}

# _PHASE[a][b] is the power of i picked up when multiplying single-qubit
# Paulis sigma_a * sigma_b = i^g * sigma_(a XOR b), codes as above.
# Derivation: XY = iZ, YZ = iX, ZX = iY and the reversed orders pick up -i.
_PHASE = (
    (0, 0, 0, 0),  # I * {I, Z, X, Y}
    (0, 0, 1, 3),  # Z * {I, Z, X, Y}:  ZX = iY,  ZY = -iX
    (0, 3, 0, 1),  # X * {I, Z, X, Y}:  XZ = -iY, XY = iZ
    (0, 1, 3, 0),  # Y * {I, Z, X, Y}:  YZ = iX,  YX = -iZ
)


def _popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True)
class PauliString:
    """An n-qubit Pauli operator i^phase_ipow * P_0 x P_1 x ... x P_{n-1}."""

    n_qubits: int
    x: int
    z: int
    phase_ipow: int = 0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("PauliString needs at least one qubit")
        mask = (1 << self.n_qubits) - 1
        if self.x & ~mask or self.z & ~mask:
            raise ValueError("x/z bits set beyond n_qubits")
        if self.phase_ipow not in (0, 1, 2, 3):
            raise ValueError(f"phase_ipow must be in {{0,1,2,3}}, got {self.phase_ipow}")

    @property
    def x_bits(self) -> tuple[int, ...]:
        return tuple((self.x >> j) & 1 for j in range(self.n_qubits))

    @property
    def z_bits(self) -> tuple[int, ...]:
        return tuple((self.z >> j) & 1 for j in range(self.n_qubits))

    def code(self, qubit: int) -> int:
        """Single-qubit code 2*x + z (I=0, Z=1, X=2, Y=3) on `qubit`."""
        return 2 * ((self.x >> qubit) & 1) + ((self.z >> qubit) & 1)

    @property
    def label(self) -> str:
        return "".join(_CODE_TO_CHAR[self.code(q)] for q in range(self.n_qubits))

    def __repr__(self):
        prefix = ("", "i*", "-", "-i*")[self.phase_ipow]
        return f"PauliString({prefix}{self.label})"


def identity_pauli(n_qubits: int) -> PauliString:
    return PauliString(n_qubits, 0, 0, 0)


def parse_pauli(label: str) -> PauliString:
    """Parse a text label such as "XIZY" into a phase-free PauliString.

    Character position j (leftmost = 0) acts on qubit j.
    """
    if not label:
        raise ValueError("empty Pauli label")
    x = z = 0
    for j, ch in enumerate(label):
        if ch not in _LABEL_CHARS:
            raise ValueError(f"invalid Pauli character {ch!r} in label {label!r}")
        xb, zb = _CHAR_TO_XZ[ch]
        x |= xb << j
        z |= zb << j
    return PauliString(len(label), x, z, 0)


def format_pauli(p: PauliString) -> str:
    """Inverse of parse_pauli for phase-free operators (the label alone)."""
    return p.label


def commutes(p: PauliString, q: PauliString) -> bool:
    """True iff the symplectic inner product of p and q vanishes mod 2."""
    if p.n_qubits != q.n_qubits:
        raise ValueError(f"qubit count mismatch: {p.n_qubits} vs {q.n_qubits}")
    return (_popcount(p.x & q.z) + _popcount(p.z & q.x)) % 2 == 0


def multiply(p: PauliString, q: PauliString) -> PauliString:
    """Exact operator product p * q, including the accumulated i-power."""
    if p.n_qubits != q.n_qubits:
        raise ValueError(f"qubit count mismatch: {p.n_qubits} vs {q.n_qubits}")
    phase = p.phase_ipow + q.phase_ipow
    support = p.x | p.z | q.x | q.z
    for j in range(p.n_qubits):
        if (support >> j) & 1:
            phase += _PHASE[p.code(j)][q.code(j)]
    return PauliString(p.n_qubits, p.x ^ q.x, p.z ^ q.z, phase % 4)


@dataclass(frozen=True)
class PauliSumHamiltonian:
    """Hermitian operator sum_j c_j P_j with real coefficients in Hartree."""

    n_qubits: int
    terms: tuple[tuple[float, PauliString], ...]

    def __post_init__(self):
        seen = set()
        for coeff, pauli in self.terms:
            if pauli.n_qubits != self.n_qubits:
                raise ValueError("term qubit count differs from Hamiltonian")
            if pauli.phase_ipow != 0:
                raise ValueError("Hamiltonian terms must be phase-free Paulis")
            if not math.isfinite(coeff):
                raise ValueError(f"non-finite coefficient {coeff!r}")
            key = (pauli.x, pauli.z)
            if key in seen:
                raise ValueError(f"duplicate Pauli term {pauli.label}")
            seen.add(key)

    @property
    def num_terms(self) -> int:
        return len(self.terms)

    def coefficient_1norm(self) -> float:
        return float(sum(abs(c) for c, _ in self.terms))

    def __repr__(self):
        body = " + ".join(f"{c:g}*{p.label}" for c, p in self.terms)
        return f"PauliSumHamiltonian({body})"


def hamiltonian_from_pairs(
    pairs: Iterable[tuple[float, Union[str, PauliString]]],
) -> PauliSumHamiltonian:
    """Build a Hamiltonian from (coefficient, label-or-PauliString) pairs.

    Duplicate labels are merged by coefficient addition, keeping the position
    of the first occurrence.  All labels must share one qubit count.
    """
    order: list[tuple[int, int]] = []
    merged: dict[tuple[int, int], float] = {}
    paulis: dict[tuple[int, int], PauliString] = {}
    n_qubits = None
    for coeff, term in pairs:
        pauli = parse_pauli(term) if isinstance(term, str) else term
        if n_qubits is None:
            n_qubits = pauli.n_qubits
        elif pauli.n_qubits != n_qubits:
            raise ValueError(
                f"inconsistent qubit counts: {pauli.n_qubits} vs {n_qubits}"
            )
        key = (pauli.x, pauli.z)
        if key in merged:
            merged[key] += float(coeff)
        else:
            merged[key] = float(coeff)
            paulis[key] = PauliString(pauli.n_qubits, pauli.x, pauli.z, 0)
            order.append(key)
    if n_qubits is None:
        raise ValueError("Hamiltonian needs at least one term")
    terms = tuple((merged[k], paulis[k]) for k in order)
    return PauliSumHamiltonian(n_qubits, terms)


def pauli_codes(p: PauliString) -> Sequence[int]:
    """Per-qubit codes (I=0, Z=1, X=2, Y=3) in qubit order."""
    return [p.code(q) for q in range((p.n_qubits))]
