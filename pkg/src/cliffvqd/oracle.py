"""Dense ground truth: Hamiltonian matrices, eigenspectra, statevectors.

Everything here is independent of the stabilizer engine so it can serve as
an oracle for it: Pauli matrices are built by bit arithmetic on basis
indices, the eigensolver is an in-repo cyclic Jacobi on the real-symmetric
embedding of the Hermitian matrix, and statevectors are simulated directly.
Intended scale is small (capped at 12 qubits); nothing here is tuned for
speed beyond vectorized numpy.
"""

from __future__ import annotations

import numpy as np

from . import _dense
from .ansatz import DENSE_QUBIT_CAP, AnsatzTemplate
from .paulis import PauliString, PauliSumHamiltonian

_IPOW = np.array([1, 1j, -1, -1j])


def _index_bits(n: int) -> np.ndarray:
    """bit_of_qubit[q, m] for all basis indices m; qubit 0 is the MSB."""
    m = np.arange(2**n)
    return np.array([(m >> (n - 1 - q)) & 1 for q in range(n)], dtype=np.int64)


def apply_pauli_dense(p: PauliString, v: np.ndarray) -> np.ndarray:
    """P|v> on a flat statevector, including the stored i^phase factor."""
    n = p.n_qubits
    dim = 1 << n
    if v.shape != (dim,):
        raise ValueError(f"state dimension mismatch: expected {dim}, got {v.shape}")
    bits = _index_bits(n)
    amp = np.full(dim, _IPOW[p.phase_ipow], dtype=complex)
    flip = 0
    for q in range(n):
        code = p.code(q)
        if code == 1:  # Z
            amp *= 1 - 2 * bits[q]
        elif code == 2:  # X
            flip |= 1 << (n - 1 - q)
        elif code == 3:  # Y:  |0> -> i|1>,  |1> -> -i|0>
            amp *= 1j * (1 - 2 * bits[q])
            flip |= 1 << (n - 1 - q)
    out = np.zeros(dim, dtype=complex)
    src = np.arange(dim)
    out[src ^ flip] = amp * v
    return out


def pauli_matrix(p: PauliString, max_qubits: int = DENSE_QUBIT_CAP) -> np.ndarray:
    """Dense matrix of a PauliString (exact entries in {0, +-1, +-i} x i^phase)."""
    if p.n_qubits > max_qubits:
        raise ValueError(f"dense matrices capped at {max_qubits} qubits")
    dim = 1 << p.n_qubits
    m = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        e = np.zeros(dim, dtype=complex)
        e[col] = 1.0
        m[:, col] = apply_pauli_dense(p, e)
    return m


def dense_hamiltonian(
    h: PauliSumHamiltonian, max_qubits: int = DENSE_QUBIT_CAP
) -> np.ndarray:
    """Sum of c_j * P_j as an explicit Hermitian matrix (Hartree units)."""
    if h.n_qubits > max_qubits:
        raise ValueError(f"dense Hamiltonians capped at {max_qubits} qubits")
    dim = 1 << h.n_qubits
    m = np.zeros((dim, dim), dtype=complex)
    for coeff, pauli in h.terms:
        m += coeff * pauli_matrix(pauli, max_qubits=max_qubits)
    return m


def eigenspectrum(m: np.ndarray, hermitian_tol: float = 1e-12) -> list[float]:
    """All eigenvalues of a Hermitian matrix, ascending.

    The d x d Hermitian matrix is embedded as the 2d x 2d real symmetric
    [[Re, -Im], [Im, Re]], diagonalized by cyclic Jacobi rotations until the
    off-diagonal Frobenius norm is negligible, and the doubled spectrum is
    collapsed by pairing consecutive sorted values.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("eigenspectrum needs a square matrix")
    scale = max(1.0, float(np.abs(m).max(initial=0.0)))
    if np.abs(m - m.conj().T).max(initial=0.0) > hermitian_tol * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    re, im = m.real, m.imag
    s = np.block([[re, -im], [im, re]])
    vals = np.sort(_jacobi_eigenvalues(s))
    pairs = vals.reshape(-1, 2)
    gap = np.abs(pairs[:, 0] - pairs[:, 1]).max(initial=0.0)
    assert gap <= 1e-9 * max(1.0, float(np.linalg.norm(s))), (
        f"doubled-spectrum pairing failed (gap {gap:.3e})"
    )
    return [float(v) for v in pairs[:, 0]]


def _off_norm(a: np.ndarray) -> float:
    """Frobenius norm of the off-diagonal part, summed directly."""
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def _jacobi_eigenvalues(s: np.ndarray, max_sweeps: int = 60) -> np.ndarray:
    """Cyclic Jacobi for a real symmetric matrix; returns unsorted eigenvalues."""
    a = np.array(s, dtype=float)
    d = a.shape[0]
    if d == 1:
        return a[0].copy()
    tol = 1e-13 * max(1.0, float(np.linalg.norm(a)))
    skip = tol / (2 * d)  # entries this small cannot push the off-norm past tol
    for _ in range(max_sweeps):
        if _off_norm(a) <= tol:
            return np.diag(a).copy()
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                phi = 0.5 * np.arctan2(2.0 * apq, a[q, q] - a[p, p])
                c, sn = np.cos(phi), np.sin(phi)
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - sn * col_q
                a[:, q] = sn * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - sn * row_q
                a[q, :] = sn * row_p + c * row_q
    if _off_norm(a) > tol:
        raise RuntimeError(f"Jacobi failed to converge (off-norm {_off_norm(a):.3e})")
    return np.diag(a).copy()


def dense_state(
    template: AnsatzTemplate, angles, max_qubits: int = DENSE_QUBIT_CAP
) -> np.ndarray:
    """Ansatz state U(angles)|0...0> as a flat unit vector."""
    n = template.n_qubits
    if n > max_qubits:
        raise ValueError(f"dense states capped at {max_qubits} qubits")
    angles = np.asarray(angles, dtype=float)
    if angles.shape != (template.parameter_count,):
        raise ValueError(
            f"angle count mismatch: template wants {template.parameter_count}, "
            f"got {angles.shape}"
        )
    psi = _dense.zero_state(n)
    for slot in template.schedule:
        if slot[0] == "CNOT":
            psi = _dense.apply_2q(psi, _dense.CNOT, slot[1], slot[2])
        else:
            axis, q, p = slot
            psi = _dense.apply_1q(psi, _dense.ROTATIONS[axis](angles[p]), q)
    return psi.reshape(-1)


def _check_normalized(v: np.ndarray, tol: float = 1e-8) -> None:
    nrm = float(np.linalg.norm(v))
    if abs(nrm - 1.0) > tol:
        raise ValueError(f"state not normalized (norm {nrm})")


def dense_expectation(v: np.ndarray, h: PauliSumHamiltonian) -> float:
    """<v|H|v> for a unit statevector; the tiny imaginary residue is asserted away."""
    dim = 1 << h.n_qubits
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.shape != (dim,):
        raise ValueError(f"dimension mismatch: expected {dim}, got {v.shape}")
    _check_normalized(v)
    contrib = np.empty(h.num_terms, dtype=float)
    for j, (coeff, pauli) in enumerate(h.terms):
        val = np.vdot(v, apply_pauli_dense(pauli, v))
        assert abs(val.imag) <= 1e-10, f"non-real Pauli expectation {val}"
        contrib[j] = coeff * val.real
    return float(np.sum(contrib))


def dense_overlap_sq(u: np.ndarray, v: np.ndarray) -> float:
    """|<u|v>|^2 for unit statevectors."""
    u = np.asarray(u, dtype=complex).reshape(-1)
    v = np.asarray(v, dtype=complex).reshape(-1)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    _check_normalized(u)
    _check_normalized(v)
    return float(abs(np.vdot(u, v)) ** 2)


def hamiltonian_spectrum(h: PauliSumHamiltonian) -> list[float]:
    """Ascending exact eigenvalues of the Pauli-sum Hamiltonian."""
    return eigenspectrum(dense_hamiltonian(h))
