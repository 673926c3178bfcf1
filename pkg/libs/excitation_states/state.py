"""Sparse pure states, excitation-states, reductions and fidelities."""

import logging
import math
from collections import defaultdict
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from functools import reduce
from typing import TYPE_CHECKING, Optional

import numpy as np

from .decorators import budget_guard
from .exceptions import PreconditionError, ShapeMismatchError

if TYPE_CHECKING:
    from .hypergraph import Hypergraph

logger = logging.getLogger(__name__)

PRUNE_THRESHOLD = 1e-15
NORM_TOLERANCE = 1e-12
DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class SparseState:
    """Amplitudes of a pure state over n subsystems of dimension local_dim

    Basis labels are digit-packed integers; vertex 0 is the most significant digit.
    """

    n: int
    amplitudes: dict[int, complex]
    local_dim: int = 2

    def __post_init__(self):
        if self.n < 0 or self.local_dim < 2:
            raise ShapeMismatchError(f"Invalid shape n={self.n}, local_dim={self.local_dim}")
        dimension = self.dimension
        for label in self.amplitudes:
            if not 0 <= label < dimension:
                raise ShapeMismatchError(f"Basis label {label} out of range for {dimension}")

    @classmethod
    def from_amplitudes(
        cls,
        n: int,
        amplitudes: Mapping[int, complex],
        local_dim: int = 2,
        normalize: bool = True,
    ) -> "SparseState":
        """Build a state, pruning tiny amplitudes and optionally normalizing."""
        kept = {
            int(label): complex(amp)
            for label, amp in amplitudes.items()
            if abs(amp) >= PRUNE_THRESHOLD
        }
        if normalize:
            norm = math.sqrt(sum(abs(amp) ** 2 for amp in kept.values()))
            if norm == 0.0:
                raise PreconditionError("Cannot normalize the zero vector")
            kept = {label: amp / norm for label, amp in kept.items()}
        return cls(n, kept, local_dim)

    @classmethod
    def basis(cls, n: int, label: int, local_dim: int = 2) -> "SparseState":
        return cls(n, {label: 1.0 + 0.0j}, local_dim)

    @classmethod
    def from_dense(cls, vector: np.ndarray, n: int, local_dim: int = 2) -> "SparseState":
        vector = np.asarray(vector, dtype=complex).reshape(-1)
        if vector.size != local_dim**n:
            raise ShapeMismatchError(f"Vector of size {vector.size} is not {local_dim}^{n}")
        support = np.flatnonzero(np.abs(vector) >= PRUNE_THRESHOLD)
        return cls.from_amplitudes(n, {int(i): vector[i] for i in support}, local_dim)

    @property
    def dimension(self) -> int:
        return self.local_dim**self.n

    def to_dense(self) -> np.ndarray:
        vector = np.zeros(self.dimension, dtype=complex)
        for label, amp in self.amplitudes.items():
            vector[label] = amp
        return vector

    def norm(self) -> float:
        return math.sqrt(sum(abs(amp) ** 2 for amp in self.amplitudes.values()))

    def amplitude(self, label: int) -> complex:
        return self.amplitudes.get(label, 0.0j)

    def digits(self, label: int) -> tuple[int, ...]:
        out = [0] * self.n
        for position in range(self.n - 1, -1, -1):
            label, out[position] = divmod(label, self.local_dim)
        return tuple(out)

    def label_from_digits(self, digits: Sequence[int]) -> int:
        label = 0
        for digit in digits:
            label = label * self.local_dim + int(digit)
        return label

    def label_to_string(self, label: int) -> str:
        return "".join(DIGITS[d] for d in self.digits(label))

    def label_from_string(self, text: str) -> int:
        if len(text) != self.n:
            raise ShapeMismatchError(f"Label {text!r} does not have {self.n} digits")
        digits = [DIGITS.index(ch) for ch in text.lower()]
        if any(d >= self.local_dim for d in digits):
            raise ShapeMismatchError(f"Label {text!r} has digits beyond local_dim")
        return self.label_from_digits(digits)

    def permute_label(self, label: int, image: Sequence[int]) -> int:
        """Move the digit of subsystem i to position image[i]."""
        digits = self.digits(label)
        moved = [0] * self.n
        for i, digit in enumerate(digits):
            moved[image[i]] = digit
        return self.label_from_digits(moved)

    def permuted(self, image: Sequence[int]) -> "SparseState":
        if len(image) != self.n:
            raise ShapeMismatchError(f"Permutation on {len(image)} points for {self.n} subsystems")
        return SparseState(
            self.n,
            {self.permute_label(label, image): amp for label, amp in self.amplitudes.items()},
            self.local_dim,
        )

    def inner(self, other: "SparseState") -> complex:
        """<self|other>."""
        _check_same_shape(self, other)
        small, large = (self, other) if len(self.amplitudes) <= len(other.amplitudes) else (other, self)
        total = sum(amp.conjugate() * large.amplitude(label) for label, amp in small.amplitudes.items())
        return total if small is self else total.conjugate()


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Reduced state of the listed subsystems, first subsystem most significant"""

    matrix: np.ndarray
    subsystems: tuple[int, ...] = ()
    local_dim: int = 2

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def check(self, tolerance: float = NORM_TOLERANCE) -> None:
        """Raise unless the matrix is a Hermitian, unit-trace, PSD operator."""
        if self.matrix.ndim != 2 or self.matrix.shape[0] != self.matrix.shape[1]:
            raise ShapeMismatchError(f"Density matrix must be square, got {self.matrix.shape}")
        if not np.allclose(self.matrix, self.matrix.conj().T, atol=tolerance, rtol=0):
            raise PreconditionError("Density matrix is not Hermitian")
        if abs(np.trace(self.matrix) - 1.0) > tolerance:
            raise PreconditionError(f"Density matrix trace {np.trace(self.matrix).real} != 1")
        if np.linalg.eigvalsh(self.matrix).min() < -1e-10:
            raise PreconditionError("Density matrix has a negative eigenvalue")


def _check_same_shape(a: SparseState, b: SparseState) -> None:
    if a.n != b.n or a.local_dim != b.local_dim:
        raise ShapeMismatchError(
            f"States differ in shape: ({a.n}, {a.local_dim}) vs ({b.n}, {b.local_dim})"
        )


def edge_label(n: int, edge: Sequence[int]) -> int:
    """Bitstring label with ones exactly on the edge."""
    return sum(1 << (n - 1 - v) for v in edge)


def excitation_state(G: "Hypergraph") -> SparseState:
    """Uniform superposition of the edge indicator bitstrings of G

    Args:
        G: Hypergraph with at least one edge
    """
    if not G.edges:
        raise PreconditionError("Excitation-state of a hypergraph without edges is undefined")
    amp = 1.0 / math.sqrt(G.edge_count)
    return SparseState(G.n, {edge_label(G.n, edge): complex(amp) for edge in G.edges})


def _subset_size(state: SparseState, subset: Sequence[int]) -> int:
    return len(subset)


@budget_guard("max_reduced_qubits", _subset_size)
def reduced_density(state: SparseState, subset: Sequence[int]) -> DensityMatrix:
    """Partial trace over the complement of subset

    Args:
        state: Pure state
        subset: Kept subsystems, in the order used for the reduced basis
    """
    subset = tuple(int(v) for v in subset)
    if not subset or len(set(subset)) != len(subset):
        raise PreconditionError(f"Subset {list(subset)} must be nonempty and distinct")
    if any(not 0 <= v < state.n for v in subset):
        raise ShapeMismatchError(f"Subset {list(subset)} out of range for n={state.n}")
    kept = set(subset)
    rest = [v for v in range(state.n) if v not in kept]
    dim = state.local_dim ** len(subset)

    groups: dict[tuple[int, ...], list[tuple[int, complex]]] = defaultdict(list)
    for label, amp in state.amplitudes.items():
        digits = state.digits(label)
        row = 0
        for v in subset:
            row = row * state.local_dim + digits[v]
        groups[tuple(digits[v] for v in rest)].append((row, amp))

    rho = np.zeros((dim, dim), dtype=complex)
    for members in groups.values():
        for a, x in members:
            for b, y in members:
                rho[a, b] += x * y.conjugate()
    return DensityMatrix(rho, subset, state.local_dim)


def reduced_2q_closed_form(G: "Hypergraph", v: int, w: int) -> DensityMatrix:
    """Two-vertex reduction of the excitation-state from incidence counts

    Basis order |00>, |01>, |10>, |11> with v the first qubit.
    """
    stats = G.pair_stats(v, w)
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = stats.lam
    rho[1, 1] = stats.degree_w - stats.section
    rho[2, 2] = stats.degree_v - stats.section
    rho[1, 2] = rho[2, 1] = stats.joint_neighborhood
    rho[3, 3] = stats.section
    return DensityMatrix(rho / stats.edge_count, (v, w))


def fidelity(a: SparseState, b: SparseState) -> float:
    """|<a|b>|^2 of two normalized states."""
    return float(min(1.0, abs(a.inner(b)) ** 2))


@budget_guard("max_dense_qubits", lambda state, partition: state.n)
def separability_check(state: SparseState, partition: Sequence[Sequence[int]]) -> bool:
    """True iff the state is the tensor product of its restrictions to the blocks

    Args:
        state: Pure state
        partition: Disjoint blocks covering every subsystem
    """
    blocks = [tuple(int(v) for v in block) for block in partition]
    flat = [v for block in blocks for v in block]
    if sorted(flat) != list(range(state.n)) or any(not block for block in blocks):
        raise PreconditionError(f"{blocks} is not a partition of {state.n} subsystems")
    factors = []
    for block in blocks:
        rho = reduced_density(state, block).matrix
        _, vectors = np.linalg.eigh(rho)
        factors.append(vectors[:, -1].reshape((state.local_dim,) * len(block)))
    product = reduce(np.multiply.outer, factors)
    product = np.transpose(product, np.argsort(flat)).reshape(-1)
    candidate = SparseState.from_dense(product, state.n, state.local_dim)
    return fidelity(state, candidate) >= 1.0 - 1e-10


def ghz_state(n: int) -> SparseState:
    amp = complex(1.0 / math.sqrt(2.0))
    return SparseState(n, {0: amp, (1 << n) - 1: amp})


def random_state(n: int, support: int, seed: Optional[int] = None) -> SparseState:
    """Normalized random complex state on a random support of the given size."""
    rng = np.random.default_rng(seed)
    labels = rng.choice(2**n, size=min(support, 2**n), replace=False)
    values = rng.normal(size=len(labels)) + 1j * rng.normal(size=len(labels))
    return SparseState.from_amplitudes(n, dict(zip(labels.tolist(), values)))
