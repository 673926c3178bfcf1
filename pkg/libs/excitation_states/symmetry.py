"""Permutation groups acting on basis labels: Dicke-like states, stabilizers, realizability."""

import logging
import math
import re
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property, reduce
from itertools import combinations, permutations
from typing import Optional

import numpy as np

from .decorators import budget_guard
from .exceptions import BudgetExceededError, HypergraphValidationError, PreconditionError
from .settings import env_var, get_budgets
from .state import SparseState

logger = logging.getLogger(__name__)

INVARIANCE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Permutation:
    """Bijection of {0..n-1}; image[i] is where point i goes"""

    image: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.image) != list(range(len(self.image))):
            raise HypergraphValidationError(f"{list(self.image)} is not a permutation")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        """Permutation from disjoint cycles, e.g. from_cycles(4, (0, 1), (2, 3))."""
        image = list(range(n))
        for cycle in cycles:
            for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
                image[a] = b
        return cls(tuple(image))

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, point: int) -> int:
        return self.image[point]

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other."""
        return Permutation(tuple(self.image[i] for i in other.image))

    def inverse(self) -> "Permutation":
        inverse = [0] * self.n
        for i, j in enumerate(self.image):
            inverse[j] = i
        return Permutation(tuple(inverse))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.image))


def closure(generators: Iterable[Permutation], n: Optional[int] = None) -> list[Permutation]:
    """All products of the generators, enumerated breadth first

    Args:
        generators: Permutations on a common point set
        n: Point count, needed when generators is empty
    """
    generators = list(generators)
    if n is None:
        if not generators:
            raise PreconditionError("Point count is required for an empty generator set")
        n = generators[0].n
    if any(g.n != n for g in generators):
        raise PreconditionError("Generators act on different point counts")
    limit = get_budgets().max_group_order
    identity = Permutation.identity(n)
    seen = {identity}
    elements = [identity]
    frontier = deque([identity])
    while frontier:
        current = frontier.popleft()
        for generator in generators:
            product = generator.compose(current)
            if product not in seen:
                seen.add(product)
                elements.append(product)
                frontier.append(product)
                if len(elements) > limit:
                    raise BudgetExceededError(
                        f"Group order exceeds budget {limit} (raise with {env_var('max_group_order')})"
                    )
    logger.debug(f"Closure of {len(generators)} generators has order {len(elements)}")
    return elements


@dataclass(frozen=True)
class PermutationGroup:
    """Group generated by permutations of n points"""

    n: int
    generators: tuple[Permutation, ...] = ()
    known_elements: Optional[tuple[Permutation, ...]] = field(
        default=None, compare=False, repr=False
    )

    @classmethod
    def from_elements(cls, n: int, elements: Iterable[Permutation]) -> "PermutationGroup":
        elements = tuple(elements)
        generators = tuple(g for g in elements if not g.is_identity())
        return cls(n, generators, elements)

    @cached_property
    def elements(self) -> tuple[Permutation, ...]:
        if self.known_elements is not None:
            return self.known_elements
        return tuple(closure(self.generators, self.n))

    @cached_property
    def element_set(self) -> frozenset[Permutation]:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, sigma: Permutation) -> bool:
        return sigma in self.element_set

    def same_as(self, other: "PermutationGroup") -> bool:
        return self.n == other.n and self.element_set == other.element_set

    def is_subgroup_of(self, other: "PermutationGroup") -> bool:
        return self.n == other.n and self.element_set <= other.element_set


def trivial_group(n: int) -> PermutationGroup:
    return PermutationGroup(n, ())


def symmetric_group(n: int, points: Optional[Sequence[int]] = None) -> PermutationGroup:
    """Full symmetric group on the given points (all n points by default)."""
    points = list(range(n)) if points is None else list(points)
    if len(points) < 2:
        return trivial_group(n)
    swap = Permutation.from_cycles(n, points[:2])
    cycle = Permutation.from_cycles(n, points)
    return PermutationGroup(n, (swap, cycle))


def cyclic_group(n: int, points: Optional[Sequence[int]] = None) -> PermutationGroup:
    points = list(range(n)) if points is None else list(points)
    if len(points) < 2:
        return trivial_group(n)
    return PermutationGroup(n, (Permutation.from_cycles(n, points),))


def dihedral_group(n: int) -> PermutationGroup:
    """Symmetries of the n-gon on points 0..n-1 (order 2n for n >= 3)."""
    if n < 3:
        return symmetric_group(n)
    rotation = Permutation.from_cycles(n, list(range(n)))
    reflection = Permutation(tuple((-i) % n for i in range(n)))
    return PermutationGroup(n, (rotation, reflection))


def alternating_group(n: int, points: Optional[Sequence[int]] = None) -> PermutationGroup:
    points = list(range(n)) if points is None else list(points)
    if len(points) < 3:
        return trivial_group(n)
    generators = tuple(
        Permutation.from_cycles(n, (points[0], points[1], points[i])) for i in range(2, len(points))
    )
    return PermutationGroup(n, generators)


def block_product_group(n: int, blocks: Sequence[Sequence[int]]) -> PermutationGroup:
    """Direct product of symmetric groups, one on each block."""
    generators: list[Permutation] = []
    for block in blocks:
        generators.extend(symmetric_group(n, block).generators)
    return PermutationGroup(n, tuple(generators))


_PRESETS = {
    "symmetric": symmetric_group,
    "cyclic": cyclic_group,
    "dihedral": dihedral_group,
    "alternating": alternating_group,
    "trivial": trivial_group,
}


def parse_group_spec(text: str, n: int) -> PermutationGroup:
    """Named preset or block product such as 'S2xS2@[0,2|1,3]'

    Args:
        text: 'symmetric', 'cyclic', 'dihedral', 'alternating', 'trivial' or a block product
        n: Number of points
    """
    text = text.strip()
    if text in _PRESETS:
        return _PRESETS[text](n)
    match = re.fullmatch(r"((?:S\d+x)*S\d+)@\[([0-9,|\s]+)\]", text)
    if not match:
        raise PreconditionError(f"Unknown group spec {text!r}")
    sizes = [int(s) for s in re.findall(r"S(\d+)", match.group(1))]
    blocks = [[int(v) for v in block.split(",") if v.strip()] for block in match.group(2).split("|")]
    if [len(block) for block in blocks] != sizes:
        raise PreconditionError(f"Block sizes {[len(b) for b in blocks]} do not match {text!r}")
    points = [v for block in blocks for v in block]
    if len(set(points)) != len(points) or any(not 0 <= v < n for v in points):
        raise PreconditionError(f"Blocks of {text!r} are not disjoint points of {n}")
    return block_product_group(n, blocks)


def _label_orbit(state: SparseState, seed: int, group: PermutationGroup) -> list[int]:
    seen = {seed}
    frontier = deque([seed])
    while frontier:
        label = frontier.popleft()
        for generator in group.generators:
            image = state.permute_label(label, generator.image)
            if image not in seen:
                seen.add(image)
                frontier.append(image)
    return sorted(seen, reverse=True)


def _uniform(n: int, labels: Sequence[int], local_dim: int = 2) -> SparseState:
    amp = complex(1.0 / math.sqrt(len(labels)))
    return SparseState(n, {label: amp for label in labels}, local_dim)


def dicke_like_state(
    group: PermutationGroup, N: int, k: int, seed: Optional[Sequence[int]] = None
) -> SparseState:
    """Uniform superposition over the group orbit of a weight-k bitstring

    Args:
        group: Permutation group on N points
        N: Number of qubits
        k: Number of excitations
        seed: Weight-k bit pattern to start from; 1^k 0^(N-k) by default
    """
    if group.n != N:
        raise PreconditionError(f"Group acts on {group.n} points, expected {N}")
    if not 0 <= k <= N:
        raise PreconditionError(f"Excitation number {k} outside [0, {N}]")
    bits = list(seed) if seed is not None else [1] * k + [0] * (N - k)
    if len(bits) != N or sum(bits) != k or any(b not in (0, 1) for b in bits):
        raise PreconditionError(f"Seed {bits} is not a weight-{k} bit pattern on {N} qubits")
    blank = SparseState(N, {})
    start = blank.label_from_digits(bits)
    return _uniform(N, _label_orbit(blank, start, group))


def dicke_state(N: int, k: int) -> SparseState:
    """Symmetric Dicke state D_N^k."""
    labels = [sum(1 << (N - 1 - v) for v in chosen) for chosen in combinations(range(N), k)]
    return _uniform(N, sorted(labels, reverse=True))


def w_state(N: int) -> SparseState:
    return dicke_state(N, 1)


def is_invariant(state: SparseState, sigma: Permutation) -> bool:
    """True iff permuting subsystems by sigma leaves the amplitudes unchanged."""
    if sigma.n != state.n:
        raise PreconditionError(f"Permutation on {sigma.n} points for {state.n} subsystems")
    for label, amp in state.amplitudes.items():
        image = state.permute_label(label, sigma.image)
        if abs(state.amplitude(image) - amp) > INVARIANCE_TOLERANCE:
            return False
    return True


@budget_guard("max_stabilizer_qubits", lambda state: state.n)
def stabilizer_group(state: SparseState) -> PermutationGroup:
    """All subsystem permutations leaving the state invariant."""
    elements = [
        Permutation(image)
        for image in permutations(range(state.n))
        if is_invariant(state, Permutation(image))
    ]
    return PermutationGroup.from_elements(state.n, elements)


def _bit_table(N: int) -> np.ndarray:
    labels = np.arange(2**N)
    return (labels[:, None] >> (N - 1 - np.arange(N))[None, :]) & 1


def _permuted_labels(bits: np.ndarray, image: Sequence[int]) -> np.ndarray:
    N = bits.shape[1]
    weights = 1 << (N - 1 - np.asarray(image))
    return bits @ weights


def _orbit_ids(group: PermutationGroup, N: int) -> tuple[np.ndarray, np.ndarray]:
    bits = _bit_table(N)
    parent = list(range(2**N))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for generator in group.generators:
        images = _permuted_labels(bits, generator.image)
        for label, image in enumerate(images.tolist()):
            a, b = find(label), find(image)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return np.array([find(x) for x in range(2**N)]), bits


def realizable_closure(group: PermutationGroup, N: int) -> PermutationGroup:
    """Permutations fixing every group orbit of N-bit strings setwise

    Args:
        group: Permutation group on N points
        N: Number of qubits
    """
    if group.n != N:
        raise PreconditionError(f"Group acts on {group.n} points, expected {N}")
    budgets = get_budgets()
    if N > budgets.max_orbit_qubits:
        raise BudgetExceededError(
            f"Orbit table for N={N} exceeds {budgets.max_orbit_qubits} qubits "
            f"(raise with {env_var('max_orbit_qubits')})"
        )
    if N > budgets.max_stabilizer_qubits:
        raise BudgetExceededError(
            f"Permutation search for N={N} exceeds {budgets.max_stabilizer_qubits} "
            f"(raise with {env_var('max_stabilizer_qubits')})"
        )
    orbit_id, bits = _orbit_ids(group, N)
    elements = [
        Permutation(image)
        for image in permutations(range(N))
        if np.array_equal(orbit_id[_permuted_labels(bits, image)], orbit_id)
    ]
    return PermutationGroup.from_elements(N, elements)


def is_realizable(group: PermutationGroup, N: int) -> bool:
    """True iff some N-qubit state has exactly this stabilizer."""
    return realizable_closure(group, N).order == group.order


def orbit_basis(group: PermutationGroup, N: int, k: int) -> list[SparseState]:
    """Uniform superpositions over the group orbits of weight-k bitstrings."""
    if group.n != N:
        raise PreconditionError(f"Group acts on {group.n} points, expected {N}")
    blank = SparseState(N, {})
    remaining = {sum(1 << (N - 1 - v) for v in chosen) for chosen in combinations(range(N), k)}
    classes = []
    while remaining:
        orbit = _label_orbit(blank, max(remaining), group)
        remaining.difference_update(orbit)
        classes.append(_uniform(N, orbit))
    return classes


def proposition1_state(group: PermutationGroup, N: int) -> SparseState:
    """Sum over sigma in the group of |sigma(0) sigma(1) ... sigma(N-1)>, local dimension N."""
    if group.n != N:
        raise PreconditionError(f"Group acts on {group.n} points, expected {N}")
    blank = SparseState(N, {}, local_dim=max(N, 2))
    labels = sorted({blank.label_from_digits(sigma.image) for sigma in group.elements})
    return _uniform(N, labels, blank.local_dim)


def stellar_construct(
    stars: Sequence[Sequence[complex]], group: PermutationGroup
) -> SparseState:
    """Normalized sum over the group of the permuted tensor product of single-subsystem states

    Args:
        stars: One normalized vector per subsystem, all of the same dimension
        group: Permutation group on len(stars) points
    """
    vectors = [np.asarray(star, dtype=complex) for star in stars]
    N = len(vectors)
    if group.n != N:
        raise PreconditionError(f"Group acts on {group.n} points, expected {N}")
    local_dim = vectors[0].size
    if any(v.size != local_dim for v in vectors):
        raise PreconditionError("Stars must share one local dimension")
    if any(abs(np.linalg.norm(v) - 1.0) > 1e-9 for v in vectors):
        raise PreconditionError("Stars must be normalized")
    limit = get_budgets().max_dense_qubits
    if local_dim**N > 2**limit:
        raise BudgetExceededError(
            f"Dense dimension {local_dim}^{N} exceeds 2^{limit} (raise with {env_var('max_dense_qubits')})"
        )
    total = np.zeros(local_dim**N, dtype=complex)
    for sigma in group.elements:
        total += reduce(np.kron, [vectors[sigma(i)] for i in range(N)])
    if np.linalg.norm(total) < 1e-12:
        raise PreconditionError("All permuted terms cancel; the construction is the zero vector")
    return SparseState.from_dense(total, N, local_dim)
