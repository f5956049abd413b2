"""Dense gate matrices and statevector application helpers.

Basis convention throughout: qubit 0 is the most significant bit of the
computational basis index, matching the leftmost-character-is-qubit-0 rule
for Pauli labels.  States and unitaries are reshaped to rank-n tensors with
axis q owned by qubit q; a unitary carries one extra trailing axis for its
columns, so the same application routines serve both.
"""

from __future__ import annotations

import numpy as np

_SQ2 = 1.0 / np.sqrt(2.0)

CLIFFORD_1Q = {
    "H": np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "S_DAG": np.array([[1, 0], [0, -1j]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)

PAULI_1Q = {
    "I": np.eye(2, dtype=complex),
    "X": CLIFFORD_1Q["X"],
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": CLIFFORD_1Q["Z"],
}


def rx(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def ry(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz(theta: float) -> np.ndarray:
    return np.array(
        [[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]], dtype=complex
    )


ROTATIONS = {"RX": rx, "RY": ry, "RZ": rz}


def apply_1q(tensor: np.ndarray, mat: np.ndarray, q: int) -> np.ndarray:
    """Apply a 2x2 matrix on tensor axis q (qubit q)."""
    out = np.tensordot(mat, tensor, axes=([1], [q]))
    return np.moveaxis(out, 0, q)


def apply_2q(tensor: np.ndarray, mat4: np.ndarray, q1: int, q2: int) -> np.ndarray:
    """Apply a 4x4 matrix on tensor axes (q1, q2)."""
    m = mat4.reshape(2, 2, 2, 2)
    out = np.tensordot(m, tensor, axes=([2, 3], [q1, q2]))
    return np.moveaxis(out, (0, 1), (q1, q2))


def apply_named_gate(tensor: np.ndarray, gate: str, qubits: tuple[int, ...]) -> np.ndarray:
    if gate == "CNOT":
        return apply_2q(tensor, CNOT, *qubits)
    return apply_1q(tensor, CLIFFORD_1Q[gate], qubits[0])


def zero_state(n_qubits: int) -> np.ndarray:
    """|0...0> as a rank-n tensor."""
    psi = np.zeros((2,) * n_qubits, dtype=complex)
    psi[(0,) * n_qubits] = 1.0
    return psi


def statevector_of_gates(n_qubits: int, gates) -> np.ndarray:
    """Run a list of (gate_name, qubits...) on |0...0>; returns a flat 2^n vector."""
    psi = zero_state(n_qubits)
    for gate, *qubits in gates:
        psi = apply_named_gate(psi, gate, tuple(qubits))
    return psi.reshape(-1)
