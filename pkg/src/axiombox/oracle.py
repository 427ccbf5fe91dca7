"""Brute-force dense simulator: ground truth for the tableau machinery.

States are plain complex vectors of 2^N amplitudes, observables are dense
2^N x 2^N matrices.  Everything is built by Kronecker products and projector
arithmetic in double precision; tolerances are far below the dyadic
probabilities being checked, so a disagreement with the exact tableau path
is always a real bug, never numerical noise.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .gf2 import symplectic_product
from .pauli import PauliOperator, SignedObservable, from_proposition
from .stabilizer import OutcomeDistribution

DENSE_CAP = 10  # 2^10 amplitudes; verification scale, not performance

DenseState = np.ndarray
DenseOperator = np.ndarray

_SINGLE = {
    (0, 0): np.eye(2, dtype=complex),
    (1, 0): np.array([[0, 1], [1, 0]], dtype=complex),
    (0, 1): np.array([[1, 0], [0, -1]], dtype=complex),
    (1, 1): np.array([[0, -1j], [1j, 0]], dtype=complex),  # i*X*Z
}


def _check_cap(n_qubits: int) -> None:
    if n_qubits > DENSE_CAP:
        raise ValueError(f"{n_qubits} qubits exceeds the dense cap of {DENSE_CAP}")


def pauli_term_matrix(p: PauliOperator) -> DenseOperator:
    """Dense matrix of ``i^phase * prod_j sx^{x_j} sz^{z_j}``."""
    _check_cap(p.n_qubits)
    xz = np.array([[0, -1], [1, 0]], dtype=complex)  # sx*sz
    bare = {
        (0, 0): _SINGLE[0, 0],
        (1, 0): _SINGLE[1, 0],
        (0, 1): _SINGLE[0, 1],
        (1, 1): xz,
    }
    m = np.ones((1, 1), dtype=complex)
    for xb, zb in zip(p.x, p.z):  # qubit 1 is the leftmost factor
        m = np.kron(m, bare[xb, zb])
    return (1j ** p.phase) * m


def pauli_matrix(obs: SignedObservable) -> DenseOperator:
    """Dense matrix of a signed observable (Kronecker product of the
    canonical per-qubit factors, times the sign)."""
    _check_cap(obs.n_qubits)
    m = np.ones((1, 1), dtype=complex)
    for xb, zb in zip(obs.base.x, obs.base.z):
        m = np.kron(m, _SINGLE[xb, zb])
    return float(obs.sign) * m


def state_from_axioms(axioms) -> DenseState:
    """Normalized joint eigenstate of the signed axiom observables.

    ``axioms`` is anything with ``generator_pairs()`` (an AxiomSet) or a
    plain list of (vector, sign) pairs.  Applies the projector
    ``prod_p (1 + sign_p * Omega_p)/2`` to computational basis vectors in
    order until one survives.
    """
    pairs = axioms.generator_pairs() if hasattr(axioms, "generator_pairs") else list(axioms)
    n = len(pairs[0][0]) // 2
    _check_cap(n)
    dim = 2 ** n
    projector = np.eye(dim, dtype=complex)
    for vector, sign in pairs:
        omega = pauli_matrix(from_proposition(vector))
        projector = projector @ (np.eye(dim, dtype=complex) + float(sign) * omega) / 2.0
    for i in range(dim):
        column = projector[:, i]
        norm = np.linalg.norm(column)
        if norm > 1e-9:
            return column / norm
    raise ValueError("projector annihilated every basis vector; axioms invalid")


def distribution(
    state: DenseState, obs_list: Sequence[SignedObservable]
) -> OutcomeDistribution:
    """Probability of each sign-vector via projector arithmetic.

    P(s) = || prod_i (1 + s_i * Theta_i)/2 |psi> ||^2.
    """
    for i in range(len(obs_list)):
        for k in range(i + 1, len(obs_list)):
            if symplectic_product(obs_list[i].vector, obs_list[k].vector):
                raise ValueError("not co-measurable")
    matrices = [pauli_matrix(o) for o in obs_list]
    outcomes = {}

    def walk(vec: np.ndarray, index: int, signs: tuple):
        if index == len(matrices):
            prob = float(np.real(np.vdot(vec, vec)))
            if prob > 1e-15:
                outcomes[signs] = outcomes.get(signs, 0.0) + prob
            return
        m = matrices[index]
        walk((vec + m @ vec) / 2.0, index + 1, signs + (1,))
        walk((vec - m @ vec) / 2.0, index + 1, signs + (-1,))

    walk(np.asarray(state, dtype=complex), 0, ())
    return OutcomeDistribution(outcomes, len(obs_list))
