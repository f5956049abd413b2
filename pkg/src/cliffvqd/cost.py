"""VQE energy, deflation penalties and the default beta policy.

The level-n deflation cost of a candidate state |phi> is

    L_n(phi) = <phi|H|phi> + sum_i beta_i * |<phi_i|phi>|^2

over the previously found states phi_0..phi_{n-1}.  With an empty context
it reduces to the plain energy.  Term sums use numpy's pairwise summation
so results are independent of how work is split across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .ansatz import CliffordParams
from .paulis import PauliSumHamiltonian
from .tableau import StabilizerTableau, overlap_sq, pauli_expectation


@dataclass(frozen=True)
class DeflationContext:
    """Previously found stabilizer states with their penalty weights (Hartree)."""

    entries: tuple[tuple[StabilizerTableau, float], ...] = ()

    def __post_init__(self):
        n = None
        for state, beta in self.entries:
            if beta <= 0:
                raise ValueError(f"penalty weight must be positive, got {beta}")
            if n is None:
                n = state.n_qubits
            elif state.n_qubits != n:
                raise ValueError("context states must share the qubit count")

    @property
    def level(self) -> int:
        """The excited-state index this context targets (0 = ground)."""
        return len(self.entries)

    def extended(self, state: StabilizerTableau, beta: float) -> "DeflationContext":
        return DeflationContext(self.entries + ((state, beta),))


@dataclass(frozen=True)
class LevelResult:
    """One rung of the deflation ladder (all energies in Hartree)."""

    level: int
    params: CliffordParams
    energy: float
    penalty: float
    cost: float
    state: StabilizerTableau
    exact_energy: Optional[float] = None
    abs_error: Optional[float] = None


def energy(state: StabilizerTableau, h: PauliSumHamiltonian) -> float:
    """<phi|H|phi> = sum_j c_j <phi|P_j|phi>, exact up to float summation."""
    if state.n_qubits != h.n_qubits:
        raise ValueError(
            f"qubit count mismatch: state {state.n_qubits} vs H {h.n_qubits}"
        )
    contrib = np.empty(h.num_terms, dtype=float)
    for j, (coeff, pauli) in enumerate(h.terms):
        contrib[j] = coeff * pauli_expectation(state, pauli)
    return float(np.sum(contrib))


def deflation_penalty(state: StabilizerTableau, ctx: DeflationContext) -> float:
    """sum_i beta_i * |<phi_i|phi>|^2; zero for an empty context."""
    if not ctx.entries:
        return 0.0
    contrib = np.empty(len(ctx.entries), dtype=float)
    for i, (prev, beta) in enumerate(ctx.entries):
        contrib[i] = beta * overlap_sq(prev, state)
    return float(np.sum(contrib))


def clifford_vqd_cost(
    state: StabilizerTableau, h: PauliSumHamiltonian, ctx: DeflationContext
) -> float:
    """Deflated cost: energy plus weighted squared overlaps with prior states."""
    return energy(state, h) + deflation_penalty(state, ctx)


def default_beta(h: PauliSumHamiltonian) -> float:
    """Twice the coefficient 1-norm: an upper bound on the spectral spread.

    Each Pauli term has spectral norm 1, so |E| <= sum_j |c_j| for every
    eigenvalue; twice that bounds E_max - E_min, which makes the penalty
    large enough to push any previously found state above every level of
    interest without being astronomically large.
    """
    if h.num_terms == 0:
        raise ValueError("default_beta needs a non-empty Hamiltonian")
    return 2.0 * float(np.sum(np.abs([c for c, _ in h.terms])))
