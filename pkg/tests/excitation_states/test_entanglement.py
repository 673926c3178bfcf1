import math

import numpy as np
import pytest

from libs.excitation_states.entanglement import (
    c_v_rest,
    concurrence_excitation,
    concurrence_regular,
    concurrence_wootters,
    cycle_closed_form,
    dicke_closed_form,
    dicke_gamma_limit,
    entanglement_ratio,
    family_closed_form,
    flat_network_estimate,
    gamma_v_path_count,
    hex_torus_closed_form,
    hypercube_closed_form,
    local_network_bound,
    local_network_gamma,
    monogamy_gap,
    node_entanglement,
    orthoplex_closed_form,
    phase_thresholds,
    ppt_entangled,
)
from libs.excitation_states.exceptions import PreconditionError, ShapeMismatchError
from libs.excitation_states.families import (
    complete_kuniform,
    cycle,
    hexagonal_torus,
    hypercube_graph,
    orthoplex_hypergraph,
    platonic,
    telescope,
    triangular_torus,
)
from libs.excitation_states.io import fixture_graph
from libs.excitation_states.state import excitation_state, reduced_density
from libs.excitation_states.symmetry import w_state
from libs.excitation_states.types import ConcurrenceMethod, FamilySpec, FamilyTag


def test_wootters_bell_and_product():
    bell = np.zeros((4, 4))
    bell[np.ix_([0, 3], [0, 3])] = 0.5
    assert concurrence_wootters(bell) == pytest.approx(1.0)
    product = np.zeros((4, 4))
    product[0, 0] = 1.0
    assert concurrence_wootters(product) == pytest.approx(0.0)


def test_wootters_rejects():
    with pytest.raises(ShapeMismatchError):
        concurrence_wootters(np.eye(2) / 2)
    with pytest.raises(PreconditionError):
        concurrence_wootters(np.diag([1.5, -0.5, 0.0, 0.0]))


@pytest.mark.parametrize(
    "G",
    [
        cycle(5),
        cycle(6),
        complete_kuniform(5, 2),
        complete_kuniform(6, 3),
        platonic("octahedron"),
        platonic("cube", "faces"),
        fixture_graph("k222"),
        orthoplex_hypergraph(4, 3),
    ],
)
def test_closed_form_matches_wootters(G):
    state = excitation_state(G)
    for v in range(G.n):
        for w in range(v + 1, G.n):
            expected = concurrence_wootters(reduced_density(state, [v, w]))
            assert concurrence_excitation(G, v, w) == pytest.approx(expected, abs=1e-7)


def test_non_uniform_goes_through_wootters():
    assert concurrence_excitation(telescope(), 0, 3) == pytest.approx(2 / 3)
    assert concurrence_excitation(telescope(), 1, 2) == pytest.approx(0.0)


def test_ppt_entangled():
    assert ppt_entangled(cycle(6), 0, 2) is True
    assert ppt_entangled(cycle(6), 0, 1) is False
    assert ppt_entangled(cycle(6), 0, 3) is False


@pytest.mark.parametrize("G", [cycle(7), platonic("octahedron"), hypercube_graph(3), platonic("icosahedron")])
def test_concurrence_regular(G):
    for w in range(1, G.n):
        assert concurrence_regular(G, 0, w) == pytest.approx(concurrence_excitation(G, 0, w))


def test_concurrence_regular_rejects():
    with pytest.raises(PreconditionError):
        concurrence_regular(telescope(), 0, 1)


def test_c_v_rest():
    assert c_v_rest(cycle(6), 0) == pytest.approx(math.sqrt(32) / 6)
    assert c_v_rest(w_state(3), 0) == pytest.approx(2 * math.sqrt(2) / 3)
    scope = telescope()
    for v in range(scope.n):
        assert c_v_rest(scope, v) == pytest.approx(c_v_rest(excitation_state(scope), v))


def test_entanglement_ratio_w_state():
    G = complete_kuniform(5, 1)
    assert entanglement_ratio(G, 0) == pytest.approx(1.0)
    assert monogamy_gap(G, 0) == pytest.approx(0.0)


def test_entanglement_ratio_unentangled_vertex():
    with pytest.raises(PreconditionError):
        entanglement_ratio(complete_kuniform(3, 3), 0)


@pytest.mark.parametrize("G", [cycle(6), platonic("cube"), fixture_graph("k222"), telescope()])
def test_monogamy(G):
    for v in range(G.n):
        assert monogamy_gap(G, v) >= -1e-12


def test_node_entanglement():
    node = node_entanglement(cycle(6), 0)
    assert node.vertex == 0
    assert node.gamma == pytest.approx(0.25)
    assert [report.pair for report in node.pairwise] == [(0, w) for w in range(1, 6)]
    assert {report.method for report in node.pairwise} == {ConcurrenceMethod.CLOSED_FORM}


@pytest.mark.parametrize("N, k", [(4, 2), (6, 2), (7, 3), (8, 1), (9, 4)])
def test_dicke_closed_form(N, k):
    form = dicke_closed_form(N, k)
    G = complete_kuniform(N, k)
    assert form.gamma == pytest.approx(node_entanglement(G, 0).gamma)
    (concurrence,) = form.concurrence_by_distance.values()
    assert concurrence == pytest.approx(concurrence_excitation(G, 0, 1))


@pytest.mark.parametrize(
    "N, gamma", [(10, 0.203777), (12, 0.197017), (20, 0.185407)]
)
def test_dicke_gamma_values(N, gamma):
    assert dicke_closed_form(N, 2).gamma == pytest.approx(gamma, abs=1e-5)


def test_dicke_limit():
    assert dicke_gamma_limit(2) == pytest.approx(3 - 2 * math.sqrt(2))
    assert dicke_gamma_limit(1) == pytest.approx(1.0)
    assert dicke_closed_form(4000, 2).gamma == pytest.approx(dicke_gamma_limit(2), abs=1e-3)
    assert math.inf in dicke_closed_form(5, 1).concurrence_by_distance


@pytest.mark.parametrize("N", [3, 4, 5, 6, 9])
def test_cycle_closed_form(N):
    form = cycle_closed_form(N)
    G = cycle(N)
    assert form.gamma == pytest.approx(node_entanglement(G, 0).gamma)
    if N > 4:
        assert form.concurrence_by_distance[2] == pytest.approx(concurrence_excitation(G, 0, 2))


@pytest.mark.parametrize("m, gamma", [(3, 0.5), (4, 0.341977), (5, 0.28125)])
def test_orthoplex_closed_form(m, gamma):
    form = orthoplex_closed_form(m)
    G = orthoplex_hypergraph(m, 2)
    assert form.gamma == pytest.approx(gamma, abs=1e-6)
    assert form.gamma == pytest.approx(node_entanglement(G, 0).gamma)
    assert form.concurrence_by_distance[1] == pytest.approx(concurrence_excitation(G, 0, 2))
    assert form.concurrence_by_distance[2] == pytest.approx(concurrence_excitation(G, 0, 1))


@pytest.mark.parametrize(
    "m, gamma", [(2, 1.0), (3, 0.444444), (4, 0.214286), (5, 0.106667), (6, 0.0537634)]
)
def test_hypercube_closed_form(m, gamma):
    form = hypercube_closed_form(m)
    assert form.size == 2**m
    assert form.gamma == pytest.approx(gamma, abs=1e-6)
    if m <= 4:
        G = hypercube_graph(m)
        assert form.gamma == pytest.approx(node_entanglement(G, 0).gamma)
        assert form.concurrence_by_distance[2] == pytest.approx(concurrence_excitation(G, 0, 3))


def test_hex_torus_closed_form():
    form = hex_torus_closed_form(24)
    assert form.concurrence_by_distance[2] == pytest.approx(1 / 18)
    G = hexagonal_torus(4, 6)
    assert form.gamma == pytest.approx(node_entanglement(G, 0).gamma)
    with pytest.raises(PreconditionError):
        hex_torus_closed_form(18)


def test_family_closed_form():
    assert family_closed_form(FamilySpec(FamilyTag.DICKE, N=6, k=2)) == dicke_closed_form(6, 2)
    assert family_closed_form(FamilySpec(FamilyTag.HEX_TORUS, rows=4, cols=6)).size == 24
    with pytest.raises(PreconditionError):
        family_closed_form(FamilySpec(FamilyTag.TELESCOPE))
    with pytest.raises(PreconditionError):
        family_closed_form(FamilySpec(FamilyTag.ORTHOPLEX, m=4, k=3))


@pytest.mark.parametrize("G", [cycle(6), hexagonal_torus(4, 6), triangular_torus(5, 5)])
def test_local_network_gamma(G):
    assert local_network_gamma(G, 0) == pytest.approx(node_entanglement(G, 0).gamma)


def test_triangular_torus_bounds():
    G = triangular_torus(5, 5)
    assert gamma_v_path_count(G, 0) == 30
    gamma = node_entanglement(G, 0).gamma
    assert gamma == pytest.approx(30 / 414)
    assert gamma <= local_network_bound(25, 6) + 1e-12
    estimate = flat_network_estimate(25, 6)
    assert gamma <= estimate <= 3 * gamma


def test_path_count_needs_regular_graph():
    with pytest.raises(PreconditionError):
        gamma_v_path_count(telescope(), 0)


@pytest.mark.parametrize("N", [8, 50, 1000])
def test_phase_thresholds(N):
    thresholds = phase_thresholds(N)
    d1, d2 = thresholds.ratios
    assert d1 == pytest.approx(2 ** (-1 / 3))
    assert d2 == pytest.approx(0.948, abs=1e-3)
    assert thresholds.d1 < thresholds.d2 < N


def test_phase_thresholds_small():
    with pytest.raises(PreconditionError):
        phase_thresholds(7)


@pytest.mark.parametrize("N, k", [(6, 1), (7, 2), (8, 3), (9, 4), (10, 3)])
def test_dicke_excitation_flip_symmetry(N, k):
    G, flipped = complete_kuniform(N, k), complete_kuniform(N, N - k)
    assert concurrence_excitation(G, 0, 1) == pytest.approx(concurrence_excitation(flipped, 0, 1))
    assert dicke_closed_form(N, k).gamma == pytest.approx(dicke_closed_form(N, N - k).gamma)
    assert node_entanglement(G, 0).gamma == pytest.approx(node_entanglement(flipped, 0).gamma)


@pytest.mark.parametrize(
    "G",
    [
        cycle(7),
        complete_kuniform(7, 3),
        platonic("cube"),
        platonic("icosahedron"),
        platonic("dodecahedron"),
        orthoplex_hypergraph(4, 3),
        triangular_torus(5, 5),
    ],
)
def test_gamma_equal_on_vertex_transitive(G):
    gammas = [node_entanglement(G, v).gamma for v in range(G.n)]
    assert gammas == pytest.approx([gammas[0]] * G.n)


@pytest.mark.parametrize(
    "G", [cycle(8), platonic("dodecahedron"), hexagonal_torus(4, 6), hypercube_graph(4)]
)
def test_far_pairs_are_unentangled(G):
    far = [(v, w) for v in range(G.n) for w in range(v + 1, G.n) if G.distance(v, w) > 2]
    assert far
    for v, w in far:
        assert G.pair_stats(v, w).joint_neighborhood == 0
        assert concurrence_excitation(G, v, w) == pytest.approx(0.0, abs=1e-15)


def test_dicke_limit_three_excitations():
    limit = dicke_gamma_limit(3)
    assert limit == pytest.approx(5 - 2 * math.sqrt(6))
    gaps = [abs(dicke_closed_form(N, 3).gamma - limit) for N in (20, 200, 2000)]
    assert gaps == sorted(gaps, reverse=True)
    assert gaps[-1] < 5e-4
