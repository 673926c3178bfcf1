"""Cyclic Jacobi eigen-solver for real symmetric matrices."""

import logging

import numpy as np

from .exceptions import ConvergenceError, PreconditionError, ShapeMismatchError

logger = logging.getLogger(__name__)

SYMMETRY_TOLERANCE = 1e-12


def _round_robin(size: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Disjoint index pairs per round; every pair meets once per sweep."""
    players = list(range(size)) + ([-1] if size % 2 else [])
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(p, q) for p, q in pairs if p >= 0 and q >= 0]
        rounds.append(
            (np.array([p for p, _ in pairs], dtype=int), np.array([q for _, q in pairs], dtype=int))
        )
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def off_norm(matrix: np.ndarray) -> float:
    off = matrix - np.diag(np.diag(matrix))
    return float(np.linalg.norm(off))


def jacobi_eigh(
    matrix: np.ndarray, tol: float = 1e-12, max_sweeps: int = 50
) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvector columns of a real symmetric matrix

    Each sweep runs a round-robin tournament of 2x2 symmetric Schur rotations, so the
    rotations of one round touch disjoint index pairs and are applied together.

    Args:
        matrix: Real symmetric square matrix
        tol: Stop once the off-diagonal norm is below tol * max(1, ||A||_F)
        max_sweeps: Sweep limit before ConvergenceError
    """
    a = np.array(matrix, dtype=float, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeMismatchError(f"Jacobi needs a square matrix, got shape {a.shape}")
    if not np.allclose(a, a.T, atol=SYMMETRY_TOLERANCE, rtol=0):
        raise PreconditionError("Jacobi needs a symmetric matrix")
    size = a.shape[0]
    vectors = np.eye(size)
    if size <= 1:
        return np.diag(a).copy(), vectors

    threshold = tol * max(1.0, float(np.linalg.norm(a)))
    rounds = _round_robin(size)
    for sweep in range(max_sweeps + 1):
        off = off_norm(a)
        if off <= threshold:
            logger.debug(f"Jacobi converged after {sweep} sweep(s), off-norm {off:.3e}")
            order = np.argsort(np.diag(a), kind="stable")
            return np.diag(a)[order], vectors[:, order]
        if sweep == max_sweeps:
            break
        for p, q in rounds:
            a_pq = a[p, q]
            active = np.abs(a_pq) > 0.0
            tau = np.where(active, (a[q, q] - a[p, p]) / (2.0 * np.where(active, a_pq, 1.0)), 0.0)
            t = np.where(
                active,
                np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau)),
                0.0,
            )
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c

            col_p, col_q = a[:, p].copy(), a[:, q].copy()
            a[:, p] = c * col_p - s * col_q
            a[:, q] = s * col_p + c * col_q
            row_p, row_q = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * row_p - s[:, None] * row_q
            a[q, :] = s[:, None] * row_p + c[:, None] * row_q
            vec_p, vec_q = vectors[:, p].copy(), vectors[:, q].copy()
            vectors[:, p] = c * vec_p - s * vec_q
            vectors[:, q] = s * vec_p + c * vec_q
    raise ConvergenceError(
        f"Jacobi did not converge in {max_sweeps} sweeps (off-norm {off_norm(a):.3e})"
    )
