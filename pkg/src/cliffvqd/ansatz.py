"""Hardware-efficient ansatz template and its Clifford-restricted compilation.

The template is L entangling blocks, each an Ry column, an Rz column and a
linear CNOT chain, followed by one trailing Ry column and Rz column.  With
angles restricted to k*pi/2 for k in {0,1,2,3} every rotation compiles to a
short Clifford sequence, so the whole circuit runs on the stabilizer engine.

Parameter ordering is column-major: within a rotation column, ascending
qubit index; the Ry column of a block precedes its Rz column.  For two
qubits and two blocks this is

    Ry(t0) q0, Ry(t1) q1, Rz(t2) q0, Rz(t3) q1, CNOT(0,1),
    Ry(t4..t5), Rz(t6..t7), CNOT(0,1), Ry(t8..t9), Rz(t10..t11)

giving 2*n*(L+1) parameters in general.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _dense
from .tableau import StabilizerTableau, tableau_init

# Rz(k*pi/2) up to global phase; Rx and Ry are basis-change conjugations of Rz.
_RZ_CLIFFORDS = {0: (), 1: ("S",), 2: ("Z",), 3: ("S_DAG",)}


def rotation_to_cliffords(axis: str, k: int) -> tuple[str, ...]:
    """Clifford gate sequence equal (up to global phase) to axis rotation by k*pi/2.

    Sequences are in circuit application order: first element acts first.
    Ry uses Ry(t) = S Rx(t) S_dag, Rx uses Rx(t) = H Rz(t) H.
    """
    if axis not in ("RX", "RY", "RZ"):
        raise ValueError(f"unknown rotation axis {axis!r}")
    if k not in (0, 1, 2, 3):
        raise ValueError(f"grid index k must be in {{0,1,2,3}}, got {k}")
    core = _RZ_CLIFFORDS[k]
    if axis == "RZ":
        return core
    if axis == "RX":
        return ("H",) + core + ("H",)
    return ("S_DAG", "H") + core + ("H", "S")


@dataclass(frozen=True)
class AnsatzTemplate:
    """Circuit skeleton: rotation slots and CNOT chains in application order."""

    n_qubits: int
    entangling_blocks: int

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("template needs at least one qubit")
        if self.entangling_blocks < 0:
            raise ValueError("entangling_blocks must be non-negative")

    @property
    def parameter_count(self) -> int:
        return 2 * self.n_qubits * (self.entangling_blocks + 1)

    @cached_property
    def schedule(self) -> tuple[tuple, ...]:
        """Slots in application order.

        Rotation slots are ("RY"|"RZ", qubit, param_index); entanglers are
        ("CNOT", control, target).
        """
        n = self.n_qubits
        slots: list[tuple] = []
        p = 0
        for block in range(self.entangling_blocks + 1):
            for q in range(n):
                slots.append(("RY", q, p))
                p += 1
            for q in range(n):
                slots.append(("RZ", q, p))
                p += 1
            if block < self.entangling_blocks:
                for q in range(n - 1):
                    slots.append(("CNOT", q, q + 1))
        return tuple(slots)


@dataclass(frozen=True)
class CliffordParams:
    """One grid point of the discrete search: angle_j = ks[j] * pi/2."""

    ks: tuple[int, ...]

    def __post_init__(self):
        for k in self.ks:
            if k not in (0, 1, 2, 3):
                raise ValueError(f"grid entries must be in {{0,1,2,3}}, got {k}")

    @classmethod
    def from_digits(cls, digits: str) -> "CliffordParams":
        return cls(tuple(int(d) for d in digits))

    def digits(self) -> str:
        return "".join(str(k) for k in self.ks)

    def angles(self) -> np.ndarray:
        return np.asarray(self.ks, dtype=float) * (np.pi / 2)

    def __len__(self) -> int:
        return len(self.ks)


def prepare_state(template: AnsatzTemplate, params: CliffordParams) -> StabilizerTableau:
    """Compile the discrete parameter point to Cliffords and run the tableau."""
    if len(params) != template.parameter_count:
        raise ValueError(
            f"parameter count mismatch: template wants {template.parameter_count}, "
            f"got {len(params)}"
        )
    t = tableau_init(template.n_qubits)
    for slot in template.schedule:
        if slot[0] == "CNOT":
            t.cnot(slot[1], slot[2])
        else:
            axis, q, p = slot
            for gate in rotation_to_cliffords(axis, params.ks[p]):
                t.apply(gate, q)
    return t


DENSE_QUBIT_CAP = 12


def dense_unitary(
    template: AnsatzTemplate, angles, max_qubits: int = DENSE_QUBIT_CAP
) -> np.ndarray:
    """Exact 2^n x 2^n matrix of the ansatz at arbitrary real angles (radians)."""
    n = template.n_qubits
    if n > max_qubits:
        raise ValueError(f"dense unitary capped at {max_qubits} qubits, got {n}")
    angles = np.asarray(angles, dtype=float)
    if angles.shape != (template.parameter_count,):
        raise ValueError(
            f"angle count mismatch: template wants {template.parameter_count}, "
            f"got {angles.shape}"
        )
    dim = 2**n
    u = np.eye(dim, dtype=complex).reshape((2,) * n + (dim,))
    for slot in template.schedule:
        if slot[0] == "CNOT":
            u = _dense.apply_2q(u, _dense.CNOT, slot[1], slot[2])
        else:
            axis, q, p = slot
            u = _dense.apply_1q(u, _dense.ROTATIONS[axis](angles[p]), q)
    return u.reshape(dim, dim)
