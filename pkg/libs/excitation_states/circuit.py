"""Disentangling and preparation circuits for graph excitation-states."""

import logging
import math
from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass, field, replace
from typing import Any, Optional

import numpy as np

from .exceptions import PreconditionError, ShapeMismatchError
from .hypergraph import Hypergraph
from .state import SparseState, excitation_state, fidelity
from .types import CostEstimate, CostRegime, GateKind

logger = logging.getLogger(__name__)

# (sink, source) bit patterns on the targets, first target most significant.
# A rotation with params (a, b) sends sqrt(a)|sink> + sqrt(b)|source> to sqrt(a+b)|sink>.
_PATTERNS: dict[str, tuple[tuple[int, ...], tuple[int, ...]]] = {
    GateKind.U1: ((0, 1, 1), (1, 0, 1)),
    GateKind.U2: ((0, 1, 1), (1, 0, 1)),
    GateKind.U3: ((0, 1), (1, 1)),
    GateKind.U4: ((1, 0), (0, 1)),
}

CNOT_COSTS = {GateKind.U1: 10, GateKind.U2: 6, GateKind.U3: 1, GateKind.U4: 3, GateKind.X: 0}


@dataclass(frozen=True)
class Gate:
    """Givens rotation between two basis patterns of its targets, or a bit flip"""

    kind: str
    targets: tuple[int, ...]
    params: tuple[float, ...] = ()
    adjoint: bool = False

    def __post_init__(self):
        if self.kind not in GateKind.ALL:
            raise PreconditionError(f"Unknown gate kind {self.kind!r}")
        width = 1 if self.kind == GateKind.X else len(_PATTERNS[self.kind][0])
        if len(self.targets) != width or len(set(self.targets)) != width:
            raise ShapeMismatchError(f"{self.kind} needs {width} distinct targets, got {self.targets}")
        if self.kind == GateKind.X:
            if self.params:
                raise PreconditionError("X takes no parameters")
            return
        if len(self.params) != 2 or min(self.params) < 0 or sum(self.params) <= 0:
            raise PreconditionError(
                f"{self.kind} needs two nonnegative params with positive sum, got {self.params}"
            )

    @property
    def cnot_cost(self) -> int:
        return CNOT_COSTS[self.kind]

    def rotation(self) -> np.ndarray:
        """2x2 block acting on the (sink, source) amplitude pair."""
        a, b = self.params
        c, s = math.sqrt(a / (a + b)), math.sqrt(b / (a + b))
        block = np.array([[c, s], [-s, c]])
        return block.T if self.adjoint else block

    def matrix(self) -> np.ndarray:
        width = len(self.targets)
        if self.kind == GateKind.X:
            return np.array([[0.0, 1.0], [1.0, 0.0]])
        sink, source = (_pattern_index(p) for p in _PATTERNS[self.kind])
        full = np.eye(2**width)
        block = self.rotation()
        full[np.ix_([sink, source], [sink, source])] = block
        return full

    def dagger(self) -> "Gate":
        if self.kind == GateKind.X:
            return self
        return replace(self, adjoint=not self.adjoint)

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "kind": self.kind,
            "targets": list(self.targets),
            "params": list(self.params),
        }
        if self.adjoint:
            data["adjoint"] = True
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Gate":
        return cls(
            kind=data["kind"],
            targets=tuple(int(t) for t in data["targets"]),
            params=tuple(float(p) for p in data.get("params", ())),
            adjoint=bool(data.get("adjoint", False)),
        )


def _pattern_index(bits: Sequence[int]) -> int:
    index = 0
    for bit in bits:
        index = index * 2 + bit
    return index


@dataclass(frozen=True)
class Circuit:
    """Ordered gates on n qubits"""

    n: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        for gate in self.gates:
            if any(not 0 <= t < self.n for t in gate.targets):
                raise ShapeMismatchError(f"Gate targets {gate.targets} out of range for n={self.n}")

    @property
    def total_cnot_cost(self) -> int:
        return sum(gate.cnot_cost for gate in self.gates)

    def inverse(self) -> "Circuit":
        return Circuit(self.n, tuple(gate.dagger() for gate in reversed(self.gates)))

    def counts(self) -> dict[str, int]:
        tally = {kind: 0 for kind in GateKind.ALL}
        for gate in self.gates:
            tally[gate.kind] += 1
        return tally

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "gates": [gate.to_dict() for gate in self.gates],
            "cnot_cost": self.total_cnot_cost,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Circuit":
        circuit = cls(int(data["n"]), tuple(Gate.from_dict(g) for g in data["gates"]))
        declared = data.get("cnot_cost")
        if declared is not None and int(declared) != circuit.total_cnot_cost:
            logger.warning(
                f"Declared cnot_cost {declared} differs from gate sum {circuit.total_cnot_cost}"
            )
        return circuit


def invert(c: Circuit) -> Circuit:
    return c.inverse()


def cnot_cost(c: Circuit) -> int:
    return c.total_cnot_cost


def apply_gate(state: SparseState, gate: Gate) -> SparseState:
    if state.local_dim != 2:
        raise ShapeMismatchError("Circuits act on qubits only")
    if any(not 0 <= t < state.n for t in gate.targets):
        raise ShapeMismatchError(f"Gate targets {gate.targets} out of range for n={state.n}")
    shifts = [state.n - 1 - t for t in gate.targets]
    if gate.kind == GateKind.X:
        flip = 1 << shifts[0]
        return SparseState(state.n, {label ^ flip: amp for label, amp in state.amplitudes.items()})

    mask = sum(1 << shift for shift in shifts)
    sink, source = (
        sum(bit << shift for bit, shift in zip(pattern, shifts)) for pattern in _PATTERNS[gate.kind]
    )
    block = gate.rotation()
    out: dict[int, complex] = defaultdict(complex)
    for label, amp in state.amplitudes.items():
        local = label & mask
        if local == sink:
            column = 0
        elif local == source:
            column = 1
        else:
            out[label] += amp
            continue
        base = label & ~mask
        out[base | sink] += block[0, column] * amp
        out[base | source] += block[1, column] * amp
    return SparseState.from_amplitudes(state.n, out, normalize=False)


def apply_circuit(state: SparseState, c: Circuit) -> SparseState:
    """Apply the gates of c in order

    Args:
        state: Qubit state on c.n subsystems
        c: Circuit to run
    """
    if state.n != c.n:
        raise ShapeMismatchError(f"Circuit on {c.n} qubits applied to a {state.n}-qubit state")
    for gate in c.gates:
        state = apply_gate(state, gate)
    return state


def _check_graph(G: Hypergraph) -> None:
    if not G.edges:
        raise PreconditionError("Circuit synthesis needs at least one edge")
    if G.uniformity is None:
        raise PreconditionError("Circuit synthesis needs a uniform hypergraph")
    if G.uniformity > 2:
        raise PreconditionError(
            f"Circuit synthesis covers graphs and W-type states, not {G.uniformity}-uniform edges"
        )
    if G.uniformity == 2 and not G.predicates().connected:
        raise PreconditionError("Circuit synthesis needs a connected graph")


def _check_order(G: Hypergraph, order: Optional[Sequence[int]]) -> list[int]:
    if order is None:
        return list(range(G.n))
    order = [int(v) for v in order]
    if sorted(order) != list(range(G.n)):
        raise PreconditionError(f"Order {order} is not a permutation of the {G.n} vertices")
    return order


def _deletion_gates(G: Hypergraph, order: list[int]) -> tuple[list[Gate], dict[int, int]]:
    """Gates removing each vertex's edges in turn and the excitation weight left on it."""
    if G.uniformity == 1:
        return [], {v: G.degree(v) for v in order}
    adjacency = {v: set(G.neighbors(v)) for v in range(G.n)}
    gates: list[Gate] = []
    weights: dict[int, int] = {}
    for v in order[:-1]:
        nbrs = sorted(adjacency[v])
        d = len(nbrs)
        weights[v] = d
        if d == 0:
            continue
        last = nbrs[-1]
        for i in range(1, d - 1):
            gates.append(Gate(GateKind.U1, (nbrs[i - 1], last, v), (float(i), 1.0)))
        if d >= 2:
            gates.append(Gate(GateKind.U2, (nbrs[d - 2], last, v), (float(d - 1), 1.0)))
        gates.append(Gate(GateKind.U3, (last, v), (0.0, float(d))))
        for u in nbrs:
            adjacency[u].discard(v)
        adjacency[v].clear()
    weights[order[-1]] = 0
    return gates, weights


def _merge_chain(order: list[int], weights: dict[int, int]) -> tuple[int, list[Gate]]:
    carriers = [v for v in order if weights[v] > 0]
    anchor = carriers[0]
    accumulated = weights[anchor]
    gates = []
    for u in carriers[1:]:
        gates.append(Gate(GateKind.U4, (anchor, u), (float(accumulated), float(weights[u]))))
        accumulated += weights[u]
    return anchor, gates


def synthesize_disentangler(G: Hypergraph, order: Optional[Sequence[int]] = None) -> Circuit:
    """Circuit mapping the excitation-state of G to a single-excitation basis state

    Each vertex in deletion order folds its remaining edges into one excitation on
    itself; a final U4 chain collects those excitations on the first carrier in order.

    Args:
        G: Connected graph, or a 1-uniform hypergraph
        order: Deletion order, ascending vertex index by default
    """
    _check_graph(G)
    order = _check_order(G, order)
    gates, weights = _deletion_gates(G, order)
    _, chain = _merge_chain(order, weights)
    circuit = Circuit(G.n, tuple(gates + chain))
    logger.debug(f"Disentangler for n={G.n}: {circuit.counts()}, {circuit.total_cnot_cost} CNOTs")
    return circuit


def disentangled_anchor(G: Hypergraph, order: Optional[Sequence[int]] = None) -> int:
    """Qubit holding the excitation left by the disentangler."""
    _check_graph(G)
    order = _check_order(G, order)
    _, weights = _deletion_gates(G, order)
    anchor, _ = _merge_chain(order, weights)
    return anchor


def preparation_circuit(G: Hypergraph, order: Optional[Sequence[int]] = None) -> Circuit:
    """X on the anchor qubit followed by the inverse disentangler."""
    disentangler = synthesize_disentangler(G, order)
    anchor = disentangled_anchor(G, order)
    inverse = disentangler.inverse()
    return Circuit(G.n, (Gate(GateKind.X, (anchor,)),) + inverse.gates)


def verify_round_trip(G: Hypergraph, order: Optional[Sequence[int]] = None) -> float:
    """Fidelity of the prepared state with the excitation-state of G."""
    vacuum = SparseState.basis(G.n, 0)
    prepared = apply_circuit(vacuum, preparation_circuit(G, order))
    return fidelity(prepared, excitation_state(G))


def _theta(x: int) -> int:
    return 1 if x > 0 else 0


def vertex_deletion_cost(d: int) -> int:
    """CNOTs to delete a vertex of current degree d."""
    if d == 0:
        return 0
    return 1 + 6 * _theta(d - 1) + 10 * _theta(d - 2) * (d - 2)


def deletion_cost_estimate(G: Hypergraph, order: Optional[Sequence[int]] = None) -> int:
    """Per-vertex deletion costs over the first |V|-1 deletions plus 3(|V|-1) for the U4 chain."""
    _check_graph(G)
    order = _check_order(G, order)
    merge_allowance = 3 * (G.n - 1)
    if G.uniformity == 1:
        return merge_allowance
    adjacency = {v: set(G.neighbors(v)) for v in range(G.n)}
    total = 0
    for v in order[:-1]:
        total += vertex_deletion_cost(len(adjacency[v]))
        for u in adjacency[v]:
            adjacency[u].discard(v)
        adjacency[v].clear()
    return total + merge_allowance


def regime_estimate(G: Hypergraph) -> CostEstimate:
    """Coarse CNOT estimate by edge density

    sparse (|E| close to |V|): 4(|V|-1); medium: 7(|V|-1); dense (|E| well above
    3|V|/2): 10|E| + 2|V| - 2.
    """
    vertices, edges = G.n, G.edge_count
    if vertices == 0:
        raise PreconditionError("Cost estimate needs at least one vertex")
    ratio = edges / vertices
    if ratio < 1.25:
        return CostEstimate(CostRegime.SPARSE, 4 * (vertices - 1))
    if ratio < 2.0:
        return CostEstimate(CostRegime.MEDIUM, 7 * (vertices - 1))
    return CostEstimate(CostRegime.DENSE, 10 * edges + 2 * vertices - 2)
