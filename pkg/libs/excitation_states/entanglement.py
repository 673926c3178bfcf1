"""Concurrence, generalized concurrence, entanglement ratio and family closed forms."""

import logging
import math
from typing import Union

import numpy as np

from .exceptions import ConvergenceError, PreconditionError, ShapeMismatchError
from .hypergraph import Hypergraph
from .state import DensityMatrix, SparseState, excitation_state, reduced_density
from .types import (
    ConcurrenceMethod,
    ConcurrenceReport,
    FamilyClosedForm,
    FamilySpec,
    FamilyTag,
    NodeEntanglement,
    PhaseThresholds,
    VertexPairStats,
)

logger = logging.getLogger(__name__)

_SIGMA_YY = np.array(
    [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]],
    dtype=complex,
)
# Eigenvalues of rho*rho_tilde below this are numerical zeros.
_EIGEN_FLOOR = 1e-13

SECOND_THRESHOLD_EQUATION = "d*(n - sqrt(d*N/2))**2 = (N - d)*n**2 with n = d**2/N"


def concurrence_wootters(rho: Union[DensityMatrix, np.ndarray]) -> float:
    """Two-qubit concurrence from the spin-flipped product rho * rho_tilde

    Args:
        rho: 4x4 density matrix
    """
    matrix = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if matrix.shape != (4, 4):
        raise ShapeMismatchError(f"Concurrence needs a 4x4 matrix, got {matrix.shape}")
    if np.linalg.eigvalsh((matrix + matrix.conj().T) / 2).min() < -1e-10:
        raise PreconditionError("Concurrence input is not positive semidefinite")
    rho_tilde = _SIGMA_YY @ matrix.conj() @ _SIGMA_YY
    eigenvalues = np.linalg.eigvals(matrix @ rho_tilde)
    real = np.where(np.abs(eigenvalues.imag) < 1e-9, eigenvalues.real, 0.0)
    real = np.where(real < _EIGEN_FLOOR, 0.0, real)
    lambdas = np.sort(np.sqrt(real))[::-1]
    return float(max(0.0, lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]))


def pair_concurrence(stats: VertexPairStats) -> float:
    """max{0, (2/|E|)(n_vw - sqrt(s_vw * lambda))}."""
    value = stats.joint_neighborhood - math.sqrt(stats.section * stats.lam)
    return max(0.0, 2.0 * value / stats.edge_count)


def concurrence_excitation(G: Hypergraph, v: int, w: int) -> float:
    """Concurrence of vertices v, w in the excitation-state of G

    Uniform hypergraphs use the incidence-count formula; mixed edge sizes can couple
    more basis states, so those go through the reduced density matrix.
    """
    if G.uniformity is None:
        logger.debug(f"Non-uniform hypergraph, pair ({v}, {w}) via Wootters")
        G._check_pair(v, w)
        return concurrence_wootters(reduced_density(excitation_state(G), [v, w]))
    return pair_concurrence(G.pair_stats(v, w))


def ppt_entangled(G: Hypergraph, v: int, w: int) -> bool:
    """Partial-transpose criterion n_vw^2 > lambda * s_vw."""
    stats = G.pair_stats(v, w)
    return stats.joint_neighborhood**2 > stats.lam * stats.section


def concurrence_regular(G: Hypergraph, v: int, w: int) -> float:
    """Distance-resolved concurrence of a connected distance-1 regular graph."""
    predicates = G.predicates()
    if not (predicates.connected and predicates.distance1_regular):
        raise PreconditionError("Regular form needs a connected distance-1 regular hypergraph")
    distance = G.distance(v, w)
    edges = G.edge_count
    n_vw = G.joint_neighborhood(v, w)
    if distance == 1:
        d = G.degree(v)
        s = G.constant_section()
        return max(0.0, 2.0 * (n_vw - math.sqrt(s * (edges - 2 * d + s))) / edges)
    if distance == 2:
        return 2.0 * n_vw / edges
    return 0.0


def c_v_rest(target: Union[Hypergraph, SparseState], v: int) -> float:
    """Generalized concurrence 2*sqrt(det rho_v) of vertex v against the rest

    A uniform hypergraph uses sqrt(4 d_v (|E| - d_v)) / |E|; any other input is reduced
    to rho_v first.
    """
    if isinstance(target, Hypergraph):
        if target.uniformity is not None:
            d = target.degree(v)
            edges = target.edge_count
            return math.sqrt(4.0 * d * (edges - d)) / edges
        target = excitation_state(target)
    if target.local_dim != 2:
        raise ShapeMismatchError("Generalized concurrence is defined here for qubits")
    rho = reduced_density(target, [v]).matrix
    det = float(np.real(np.linalg.det(rho)))
    return 2.0 * math.sqrt(max(det, 0.0))


def pair_tangles(G: Hypergraph, v: int) -> list[float]:
    return [concurrence_excitation(G, v, w) ** 2 for w in range(G.n) if w != v]


def entanglement_ratio(G: Hypergraph, v: int) -> float:
    """Share of the vertex tangle carried by pairwise tangles."""
    tangle = c_v_rest(G, v) ** 2
    if tangle == 0.0:
        raise PreconditionError(f"Vertex {v} is not entangled with the rest")
    return sum(pair_tangles(G, v)) / tangle


def monogamy_gap(G: Hypergraph, v: int) -> float:
    return c_v_rest(G, v) ** 2 - sum(pair_tangles(G, v))


def node_entanglement(G: Hypergraph, v: int) -> NodeEntanglement:
    pairwise = [
        ConcurrenceReport(
            pair=(v, w),
            concurrence=concurrence_excitation(G, v, w),
            method=ConcurrenceMethod.CLOSED_FORM,
            distance=G.distance(v, w),
        )
        for w in range(G.n)
        if w != v
    ]
    rest = c_v_rest(G, v)
    tangles = sum(report.concurrence**2 for report in pairwise)
    gamma = tangles / rest**2 if rest > 0 else 0.0
    return NodeEntanglement(vertex=v, c_v_rest=rest, gamma=gamma, pairwise=pairwise)


def _binom(n: int, r: int) -> int:
    return math.comb(n, r) if 0 <= r <= n else 0


def dicke_closed_form(N: int, k: int) -> FamilyClosedForm:
    if not 1 <= k <= N - 1:
        raise PreconditionError(f"Dicke closed form needs 1 <= k <= N-1, got N={N}, k={k}")
    bracket = _binom(N - 2, k - 1) - math.sqrt(_binom(N - 2, k) * _binom(N - 2, k - 2))
    concurrence = max(0.0, 2.0 * bracket / _binom(N, k))
    gamma = (N - 1) * max(0.0, bracket) ** 2 / (_binom(N - 1, k) * _binom(N - 1, k - 1))
    # Singleton edges never share a vertex, so W-class pairs sit at infinite distance.
    distance = math.inf if k == 1 else 1
    return FamilyClosedForm(
        family=FamilyTag.DICKE,
        size=N,
        concurrence_by_distance={distance: concurrence},
        gamma=gamma,
        limit=dicke_gamma_limit(k),
    )


def dicke_gamma_limit(k: int) -> float:
    """Large-N entanglement ratio of D_N^k."""
    return 2 * k - 1 - 2 * math.sqrt(k * (k - 1))


def cycle_closed_form(N: int) -> FamilyClosedForm:
    if N == 3:
        return dicke_closed_form(3, 2)
    if N < 3:
        raise PreconditionError(f"Cycle needs N >= 3, got {N}")
    # On C4 both distance-two paths end at the same vertex.
    second, gamma = (1.0, 1.0) if N == 4 else (2.0 / N, 1.0 / (N - 2))
    return FamilyClosedForm(
        family=FamilyTag.CYCLE,
        size=N,
        concurrence_by_distance={1: 0.0, 2: second},
        gamma=gamma,
        limit=0.0,
    )


def orthoplex_closed_form(m: int) -> FamilyClosedForm:
    """Skeleton of the m-orthoplex: 2m vertices, all pairs but antipodes."""
    if m < 2:
        raise PreconditionError(f"Orthoplex needs m >= 2, got {m}")
    excess = max(0.0, 2 * m - 4 - math.sqrt(2 * m * m - 6 * m + 5))
    return FamilyClosedForm(
        family=FamilyTag.ORTHOPLEX,
        size=2 * m,
        concurrence_by_distance={1: excess / (m * (m - 1)), 2: 2.0 / m},
        gamma=(excess**2 + 2 * (m - 1)) / (2 * (m - 1) ** 2),
        limit=3 - 2 * math.sqrt(2),
    )


def hypercube_closed_form(m: int) -> FamilyClosedForm:
    if m < 2:
        raise PreconditionError(f"Hypercube needs m >= 2, got {m}")
    return FamilyClosedForm(
        family=FamilyTag.HYPERCUBE,
        size=2**m,
        concurrence_by_distance={1: 0.0, 2: 2.0 ** (3 - m) / m},
        gamma=4.0 * (m - 1) / ((2**m - 2) * m),
        limit=0.0,
    )


def hex_torus_closed_form(N: int) -> FamilyClosedForm:
    """3-regular honeycomb cut with N vertices and no 4-cycles."""
    if N < 24:
        raise PreconditionError(f"Hexagonal torus closed form needs N >= 24, got {N}")
    return FamilyClosedForm(
        family=FamilyTag.HEX_TORUS,
        size=N,
        concurrence_by_distance={1: 0.0, 2: 4.0 / (3 * N)},
        gamma=4.0 / (3 * (N - 2)),
        limit=0.0,
    )


def family_closed_form(spec: FamilySpec) -> FamilyClosedForm:
    """Closed-form concurrences by distance, entanglement ratio and large-size limit

    Args:
        spec: dicke (N, k), cycle (N), orthoplex (m, k=2), hypercube (m) or
            hex_torus (N, or rows and cols)
    """
    if spec.family == FamilyTag.DICKE:
        return dicke_closed_form(_param(spec.N, "N"), _param(spec.k, "k"))
    if spec.family == FamilyTag.CYCLE:
        return cycle_closed_form(_param(spec.N, "N"))
    if spec.family == FamilyTag.ORTHOPLEX:
        if spec.k not in (None, 2):
            raise PreconditionError("Orthoplex closed form covers the skeleton (k=2) only")
        return orthoplex_closed_form(_param(spec.m, "m"))
    if spec.family == FamilyTag.HYPERCUBE:
        return hypercube_closed_form(_param(spec.m, "m"))
    if spec.family == FamilyTag.HEX_TORUS:
        size = spec.N if spec.N is not None else _param(spec.rows, "rows") * _param(spec.cols, "cols")
        return hex_torus_closed_form(size)
    raise PreconditionError(f"No closed form for family {spec.family!r}")


def _param(value, name: str):
    if value is None:
        raise PreconditionError(f"Closed form needs parameter {name}")
    return value


def gamma_v_path_count(G: Hypergraph, v: int) -> int:
    """Sum of squared joint neighbourhoods over distance-two vertices of a regular graph."""
    predicates = G.predicates()
    if G.uniformity != 2 or not predicates.regular:
        raise PreconditionError("Path count needs a regular graph")
    adjacency = G.skeleton
    direct = set(adjacency.neighbors(v))
    paths: dict[int, int] = {}
    for middle in direct:
        for far in adjacency.neighbors(middle):
            if far != v and far not in direct:
                paths[far] = paths.get(far, 0) + 1
    return sum(count * count for count in paths.values())


def local_network_gamma(G: Hypergraph, v: int) -> float:
    """Entanglement ratio from path counts when adjacent pairs are unentangled."""
    d = G.degree(v)
    return 2.0 * gamma_v_path_count(G, v) / (d * d * (G.n - 2))


def local_network_bound(N: int, d: int) -> float:
    if d < 2 or N <= 2:
        raise PreconditionError(f"Bound needs d >= 2 and N > 2, got N={N}, d={d}")
    return (2.0 / (N - 2)) * (d - 1) / d


def flat_network_estimate(N: int, d: int) -> float:
    """Approximate ratio of a flat local network (estimate, not a bound)."""
    if d < 2 or N <= 2:
        raise PreconditionError(f"Estimate needs d >= 2 and N > 2, got N={N}, d={d}")
    return (d - 1) ** 2 / (d * (N - 2))


def _threshold_gap(d: float, N: float) -> float:
    n = d * d / N
    return d * (n - math.sqrt(d * N / 2.0)) ** 2 - (N - d) * n * n


def phase_thresholds(N: int, iterations: int = 200) -> PhaseThresholds:
    """Degrees where distance-1 entanglement appears and where it dominates

    d2 is the exact root of SECOND_THRESHOLD_EQUATION on (d1, N), so d2/N is about 0.948
    for every N, not 0.973.

    Args:
        N: Vertex count of a dense regular graph
        iterations: Bisection steps for the second threshold
    """
    if N < 8:
        raise PreconditionError(f"Thresholds need N >= 8, got {N}")
    d1 = N / 2 ** (1.0 / 3.0)
    low, high = d1, float(N)
    f_low, f_high = _threshold_gap(low, N), _threshold_gap(high, N)
    if f_low * f_high > 0:
        raise ConvergenceError(f"No sign change of the threshold equation on ({low}, {high})")
    for _ in range(iterations):
        middle = 0.5 * (low + high)
        f_middle = _threshold_gap(middle, N)
        if f_middle == 0.0:
            low = high = middle
            break
        if (f_middle < 0) == (f_low < 0):
            low, f_low = middle, f_middle
        else:
            high = middle
        if high - low <= 1e-13 * N:
            break
    return PhaseThresholds(n=N, d1=d1, d2=0.5 * (low + high), equation=SECOND_THRESHOLD_EQUATION)
