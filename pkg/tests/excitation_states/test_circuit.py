import math

import numpy as np
import pytest

from libs.excitation_states.circuit import (
    Circuit,
    Gate,
    apply_circuit,
    apply_gate,
    cnot_cost,
    deletion_cost_estimate,
    disentangled_anchor,
    invert,
    preparation_circuit,
    regime_estimate,
    synthesize_disentangler,
    verify_round_trip,
    vertex_deletion_cost,
)
from libs.excitation_states.exceptions import PreconditionError, ShapeMismatchError
from libs.excitation_states.families import (
    complete_kuniform,
    cycle,
    hypercube_graph,
    platonic,
)
from libs.excitation_states.hypergraph import validate
from libs.excitation_states.io import fixture_graph, fixture_graph_names
from libs.excitation_states.state import (
    SparseState,
    edge_label,
    excitation_state,
    fidelity,
    random_state,
)
from libs.excitation_states.types import CostRegime, GateKind

GRAPHS = [
    cycle(5),
    cycle(6),
    complete_kuniform(4, 2),
    complete_kuniform(5, 1),
    platonic("cube"),
    platonic("octahedron"),
    fixture_graph("c7"),
    validate(5, [(0, 1), (0, 2), (0, 3), (0, 4)]),
]


@pytest.mark.parametrize(
    "kind, targets, params",
    [
        ("U5", (0, 1), (1.0, 1.0)),
        (GateKind.X, (0,), (1.0, 1.0)),
        (GateKind.U1, (0, 1), (1.0, 1.0)),
        (GateKind.U3, (0, 0), (1.0, 1.0)),
        (GateKind.U4, (0, 1), (-1.0, 2.0)),
        (GateKind.U4, (0, 1), (0.0, 0.0)),
        (GateKind.U2, (0, 1, 2), (1.0,)),
    ],
)
def test_gate_rejects(kind, targets, params):
    with pytest.raises((PreconditionError, ShapeMismatchError)):
        Gate(kind, targets, params)


@pytest.mark.parametrize("a, b", [(1.0, 1.0), (2.0, 1.0), (0.0, 3.0), (5.0, 0.5)])
def test_rotation_merges_amplitudes(a, b):
    block = Gate(GateKind.U4, (0, 1), (a, b)).rotation()
    assert np.allclose(block @ [math.sqrt(a), math.sqrt(b)], [math.sqrt(a + b), 0.0])


def test_gate_matrix_is_orthogonal():
    gate = Gate(GateKind.U1, (0, 1, 2), (2.0, 1.0))
    m = gate.matrix()
    assert m.shape == (8, 8)
    assert np.allclose(m @ gate.dagger().matrix(), np.eye(8))
    assert gate.dagger().dagger() == gate
    assert Gate(GateKind.X, (3,)).dagger() == Gate(GateKind.X, (3,))


def test_gate_matrix_matches_apply_gate():
    gate = Gate(GateKind.U2, (2, 0, 1), (1.0, 3.0))
    state = random_state(3, 8, seed=4)
    m = gate.matrix()
    dense = np.zeros(8, dtype=complex)
    for label, amp in state.amplitudes.items():
        bits = [(label >> (2 - t)) & 1 for t in gate.targets]
        local = bits[0] * 4 + bits[1] * 2 + bits[2]
        for out_local in range(8):
            out_bits = [(out_local >> (2 - i)) & 1 for i in range(3)]
            out = label
            for t, bit in zip(gate.targets, out_bits):
                out = (out & ~(1 << (2 - t))) | (bit << (2 - t))
            dense[out] += m[out_local, local] * amp
    assert np.allclose(apply_gate(state, gate).to_dense(), dense)


def test_u3_moves_excitation():
    state = SparseState.basis(2, 0b11)
    out = apply_gate(state, Gate(GateKind.U3, (0, 1), (0.0, 2.0)))
    assert out.amplitudes == pytest.approx({0b01: 1.0})


def test_x_gate():
    out = apply_gate(SparseState.basis(3, 0), Gate(GateKind.X, (1,)))
    assert out.amplitudes == {0b010: 1.0}


def test_circuit_rejects_targets():
    with pytest.raises(ShapeMismatchError):
        Circuit(2, (Gate(GateKind.X, (2,)),))
    with pytest.raises(ShapeMismatchError):
        apply_circuit(SparseState.basis(3, 0), Circuit(2, ()))


def test_c5_cost():
    G = cycle(5)
    circuit = synthesize_disentangler(G)
    assert circuit.counts() == {"U1": 0, "U2": 1, "U3": 4, "U4": 3, "X": 0}
    assert cnot_cost(circuit) == 19
    assert deletion_cost_estimate(G) == 22


@pytest.mark.parametrize("G", GRAPHS)
def test_disentangler_reaches_single_excitation(G):
    circuit = synthesize_disentangler(G)
    anchor = disentangled_anchor(G)
    out = apply_circuit(excitation_state(G), circuit)
    assert fidelity(out, SparseState.basis(G.n, edge_label(G.n, [anchor]))) == pytest.approx(1.0)


@pytest.mark.parametrize("G", GRAPHS)
def test_round_trip(G):
    assert verify_round_trip(G) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_round_trip_random_order(seed):
    G = platonic("cube")
    order = np.random.default_rng(seed).permutation(G.n).tolist()
    assert verify_round_trip(G, order) == pytest.approx(1.0, abs=1e-10)


def _small_graph_fixtures():
    names = []
    for name in fixture_graph_names():
        G = fixture_graph(name)
        if G.uniformity == 2 and G.n <= 12:
            names.append(name)
    return names


@pytest.mark.parametrize("name", _small_graph_fixtures())
def test_round_trip_fixture_orders(name):
    G = fixture_graph(name)
    rng = np.random.default_rng(len(name))
    orders = [None, list(range(G.n))[::-1]]
    orders += [rng.permutation(G.n).tolist() for _ in range(2)]
    for order in orders:
        assert verify_round_trip(G, order) == pytest.approx(1.0, abs=1e-10)


def test_small_graph_fixtures():
    assert set(_small_graph_fixtures()) == {
        "c4",
        "c5",
        "c6",
        "c7",
        "c8",
        "cube",
        "icosahedron",
        "octahedron",
        "tetrahedron",
    }


def test_preparation_starts_with_x():
    G = cycle(6)
    circuit = preparation_circuit(G, [3, 1, 0, 2, 5, 4])
    assert circuit.gates[0] == Gate(GateKind.X, (disentangled_anchor(G, [3, 1, 0, 2, 5, 4]),))
    assert circuit.total_cnot_cost == synthesize_disentangler(G, [3, 1, 0, 2, 5, 4]).total_cnot_cost


def test_inverse_undoes_circuit():
    circuit = synthesize_disentangler(platonic("octahedron"))
    state = random_state(6, 20, seed=8)
    back = apply_circuit(apply_circuit(state, circuit), invert(circuit))
    assert fidelity(back, state) == pytest.approx(1.0)
    assert invert(invert(circuit)) == circuit


def test_circuit_dict(caplog):
    circuit = synthesize_disentangler(cycle(6))
    data = circuit.to_dict()
    assert data["cnot_cost"] == circuit.total_cnot_cost
    assert Circuit.from_dict(data) == circuit
    data["cnot_cost"] += 1
    Circuit.from_dict(data)
    assert "differs" in caplog.text


def test_adjoint_flag_in_dict():
    gate = Gate(GateKind.U4, (0, 1), (1.0, 2.0)).dagger()
    assert gate.to_dict()["adjoint"] is True
    assert "adjoint" not in gate.dagger().to_dict()


@pytest.mark.parametrize(
    "G, order",
    [
        (validate(4, [(0, 1), (2, 3)]), None),
        (complete_kuniform(4, 3), None),
        (validate(3, [(0,), (1, 2)]), None),
        (cycle(4), [0, 1, 2]),
        (cycle(4), [0, 1, 1, 2]),
    ],
)
def test_synthesis_rejects(G, order):
    with pytest.raises(PreconditionError):
        synthesize_disentangler(G, order)


@pytest.mark.parametrize("d, cost", [(0, 0), (1, 1), (2, 7), (3, 17), (4, 27)])
def test_vertex_deletion_cost(d, cost):
    assert vertex_deletion_cost(d) == cost


@pytest.mark.parametrize("G", [cycle(5), cycle(8), platonic("cube"), hypercube_graph(4)])
def test_estimate_bounds_exact(G):
    assert synthesize_disentangler(G).total_cnot_cost <= deletion_cost_estimate(G)


def test_w_state_cost():
    G = complete_kuniform(5, 1)
    assert synthesize_disentangler(G).counts()["U4"] == 4
    assert deletion_cost_estimate(G) == 12


@pytest.mark.parametrize(
    "G, regime, estimate",
    [
        (cycle(6), CostRegime.SPARSE, 20),
        (platonic("cube"), CostRegime.MEDIUM, 49),
        (complete_kuniform(6, 2), CostRegime.DENSE, 160),
    ],
)
def test_regime_estimate(G, regime, estimate):
    result = regime_estimate(G)
    assert (result.regime, result.estimate) == (regime, estimate)
