"""Excitation Hamiltonians on fixed-excitation sectors and their top eigenpairs."""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Optional

import numpy as np

from .decorators import budget_guard
from .eigen import jacobi_eigh
from .exceptions import PreconditionError, ShapeMismatchError
from .hypergraph import Hypergraph
from .state import SparseState, edge_label
from .types import SpectrumReport

logger = logging.getLogger(__name__)

DEGENERACY_TOLERANCE = 1e-8

# Single-site actions on an excitation set.
RAISE = "raise"
LOWER = "lower"
PROJECT = "project"

Subset = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class SubspaceOperator:
    """Real symmetric operator on the k-excitation sector of n qubits

    Basis vectors are the k-subsets of vertices in lexicographic order.
    """

    n: int
    k: int
    basis: tuple[Subset, ...]
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def index(self) -> dict[Subset, int]:
        return {subset: i for i, subset in enumerate(self.basis)}

    def sector_vector(self, state: SparseState) -> np.ndarray:
        """Amplitudes of the state on the sector basis."""
        if state.n != self.n or state.local_dim != 2:
            raise ShapeMismatchError(
                f"State with n={state.n}, local_dim={state.local_dim} on a {self.n}-qubit sector"
            )
        return np.array([state.amplitude(edge_label(self.n, s)) for s in self.basis])

    def is_symmetric(self, tolerance: float = 1e-12) -> bool:
        return bool(np.allclose(self.matrix, self.matrix.T, atol=tolerance, rtol=0))


def sector_basis(n: int, k: int) -> tuple[Subset, ...]:
    if not 0 <= k <= n:
        raise PreconditionError(f"Excitation number {k} outside [0, {n}]")
    return tuple(combinations(range(n), k))


def apply_actions(subset: Subset, actions: Sequence[tuple[str, int]]) -> Optional[Subset]:
    """Apply single-site actions in the order given; None if annihilated

    Args:
        subset: Excited vertices
        actions: (action, vertex) pairs in application order
    """
    current = set(subset)
    for action, v in actions:
        if action == LOWER:
            if v not in current:
                return None
            current.discard(v)
        elif action == RAISE:
            if v in current:
                return None
            current.add(v)
        elif action == PROJECT:
            if v not in current:
                return None
        else:
            raise PreconditionError(f"Unknown action {action!r}")
    return tuple(sorted(current))


def _sector_size(n: int, k: int) -> int:
    return math.comb(n, k) if 0 <= k <= n else 0


@budget_guard("max_sector_dim", lambda N, k: _sector_size(N, k))
def build_dicke_jj(N: int, k: int) -> SubspaceOperator:
    """J+ J- on the weight-k sector; its top eigenvalue is k(N+1-k)."""
    basis = sector_basis(N, k)
    op = SubspaceOperator(N, k, basis, np.zeros((len(basis), len(basis))))
    for col, subset in enumerate(basis):
        op.matrix[col, col] += k
        for v in subset:
            for u in range(N):
                target = apply_actions(subset, [(LOWER, v), (RAISE, u)])
                if target is not None and u != v:
                    op.matrix[op.index[target], col] += 1.0
    return op


@budget_guard("max_sector_dim", lambda G, k: _sector_size(G.n, k))
def build_hg(G: Hypergraph, k: int) -> SubspaceOperator:
    """J+^G J-^G: lower a whole edge, then raise a whole edge

    Args:
        G: Uniform hypergraph
        k: Sector excitation number, at least the edge size
    """
    if G.uniformity is None:
        raise PreconditionError("Edge hopping needs a uniform hypergraph")
    if k < G.uniformity:
        raise PreconditionError(f"Sector k={k} is below the edge size {G.uniformity}")
    basis = sector_basis(G.n, k)
    op = SubspaceOperator(G.n, k, basis, np.zeros((len(basis), len(basis))))
    for col, subset in enumerate(basis):
        present = set(subset)
        for lowered in G.edges:
            if not present.issuperset(lowered):
                continue
            rest = present.difference(lowered)
            for raised in G.edges:
                if rest.isdisjoint(raised):
                    target = tuple(sorted(rest.union(raised)))
                    op.matrix[op.index[target], col] += 1.0
    return op


def _directed_paths(G: Hypergraph) -> list[tuple[int, int, int]]:
    """(v, v', v'') with v ~ v' ~ v''; v'' may equal v."""
    paths = []
    for middle in range(G.n):
        around = G.neighbors(middle)
        for start in around:
            for end in around:
                paths.append((start, middle, end))
    return paths


def _check_graph(G: Hypergraph) -> None:
    if G.uniformity != 2:
        raise PreconditionError("Three-body hopping is defined for graphs")


def _build_pair_sector(G: Hypergraph, actions_for_path) -> SubspaceOperator:
    basis = sector_basis(G.n, 2)
    op = SubspaceOperator(G.n, 2, basis, np.zeros((len(basis), len(basis))))
    paths = _directed_paths(G)
    for col, subset in enumerate(basis):
        for path in paths:
            target = apply_actions(subset, actions_for_path(*path))
            if target is not None:
                op.matrix[op.index[target], col] += 1.0
    return op


@budget_guard("max_sector_dim", lambda G: _sector_size(G.n, 2))
def build_3body(G: Hypergraph) -> SubspaceOperator:
    """Sum over paths v-v'-v'' of sigma+(v) sigma+(v') sigma-(v') sigma-(v'') on two excitations."""
    _check_graph(G)
    return _build_pair_sector(
        G, lambda v, mid, end: [(LOWER, end), (LOWER, mid), (RAISE, mid), (RAISE, v)]
    )


@budget_guard("max_sector_dim", lambda G: _sector_size(G.n, 2))
def build_3body_conditional(G: Hypergraph) -> SubspaceOperator:
    """Hop v'' -> v conditioned on v' being excited."""
    _check_graph(G)
    return _build_pair_sector(G, lambda v, mid, end: [(PROJECT, mid), (LOWER, end), (RAISE, v)])


def claimed_dicke_top(N: int, k: int) -> int:
    return k * (N + 1 - k)


def claimed_hg_top(G: Hypergraph) -> int:
    """Squared edge count, as stated for the edge-hopping Hamiltonian."""
    return G.edge_count**2


def claimed_3body_top(G: Hypergraph) -> Optional[int]:
    """C(d, 2)|V| for a d-regular graph; None when degrees differ."""
    degrees = set(G.degrees())
    if len(degrees) != 1:
        return None
    return math.comb(degrees.pop(), 2) * G.n


def top_eigenpair(
    op: SubspaceOperator,
    target: SparseState,
    claimed_top: Optional[float] = None,
) -> SpectrumReport:
    """Top eigenvalue, its degeneracy and the target's weight in the top eigenspace

    Args:
        op: Sector operator
        target: State compared against the top eigenspace
        claimed_top: Value to check the top eigenvalue against; mismatches are logged
    """
    values, vectors = jacobi_eigh(op.matrix)
    top = float(values[-1])
    in_top = values >= top - DEGENERACY_TOLERANCE
    projection = vectors[:, in_top].T @ op.sector_vector(target)
    overlap = float(min(1.0, np.vdot(projection, projection).real))

    claim_matches = None
    if claimed_top is not None:
        claim_matches = abs(top - claimed_top) <= DEGENERACY_TOLERANCE * max(1.0, abs(top))
        if not claim_matches:
            logger.warning(f"Top eigenvalue {top:.6g} differs from claimed value {claimed_top}")
    return SpectrumReport(
        top_eigenvalue=top,
        degeneracy=int(in_top.sum()),
        overlap=overlap,
        claimed_top=None if claimed_top is None else float(claimed_top),
        claim_matches=claim_matches,
    )


def rayleigh_residual(op: SubspaceOperator, target: SparseState) -> tuple[float, float]:
    """Rayleigh quotient mu of the target and the residual norm ||H x - mu x||."""
    x = op.sector_vector(target)
    norm = np.linalg.norm(x)
    if norm == 0.0:
        raise PreconditionError("Target has no weight in this sector")
    x = x / norm
    hx = op.matrix @ x
    mu = float(np.vdot(x, hx).real)
    return mu, float(np.linalg.norm(hx - mu * x))
