"""Record types shared across modules."""

import math
from dataclasses import dataclass, field
from typing import Any, Optional


class ConcurrenceMethod:
    """Concurrence method tags"""

    WOOTTERS: str = "wootters"
    CLOSED_FORM: str = "closed_form"
    REGULAR_FORM: str = "regular_form"


class FamilyTag:
    """Hypergraph family tags"""

    DICKE: str = "dicke"
    CYCLE: str = "cycle"
    PLATONIC: str = "platonic"
    SIMPLEX: str = "simplex"
    ORTHOPLEX: str = "orthoplex"
    HYPERCUBE: str = "hypercube"
    HEX_TORUS: str = "hex_torus"
    TRI_TORUS: str = "tri_torus"
    TELESCOPE: str = "telescope"

    ALL: tuple[str, ...] = (
        DICKE,
        CYCLE,
        PLATONIC,
        SIMPLEX,
        ORTHOPLEX,
        HYPERCUBE,
        HEX_TORUS,
        TRI_TORUS,
        TELESCOPE,
    )


class CostRegime:
    """CNOT cost regimes of the preparation circuit"""

    SPARSE: str = "sparse"
    MEDIUM: str = "medium"
    DENSE: str = "dense"


@dataclass(frozen=True)
class VertexPairStats:
    """Incidence counts of a vertex pair"""

    degree_v: int
    degree_w: int
    section: int
    joint_neighborhood: int
    distance: float
    edge_count: int

    @property
    def lam(self) -> int:
        """Number of edges avoiding both vertices."""
        return self.edge_count - self.degree_v - self.degree_w + self.section

    @property
    def connected(self) -> bool:
        return not math.isinf(self.distance)


@dataclass(frozen=True)
class HypergraphPredicates:
    """Structural predicates of a hypergraph"""

    connected: bool
    k_uniform: bool
    regular: bool
    distance1_regular: bool


@dataclass(frozen=True)
class FamilySpec:
    """Family tag with its parameters"""

    family: str
    N: Optional[int] = None
    k: Optional[int] = None
    m: Optional[int] = None
    solid: Optional[str] = None
    mode: str = "edges"
    rows: Optional[int] = None
    cols: Optional[int] = None


@dataclass(frozen=True)
class ConcurrenceReport:
    """Concurrence of a vertex pair"""

    pair: tuple[int, int]
    concurrence: float
    method: str
    distance: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "pair": list(self.pair),
            "concurrence": self.concurrence,
            "method": self.method,
            "distance": None if math.isinf(self.distance) else int(self.distance),
        }


@dataclass(frozen=True)
class NodeEntanglement:
    """Entanglement of one vertex with the rest and with each other vertex"""

    vertex: int
    c_v_rest: float
    gamma: float
    pairwise: list[ConcurrenceReport] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "vertex": self.vertex,
            "c_v_rest": self.c_v_rest,
            "gamma": self.gamma,
            "pairwise": [report.to_dict() for report in self.pairwise],
        }


@dataclass(frozen=True)
class FamilyClosedForm:
    """Closed-form concurrences and entanglement ratio of a family instance"""

    family: str
    size: int
    concurrence_by_distance: dict[float, float]
    gamma: float
    limit: Optional[float] = None


@dataclass(frozen=True)
class PhaseThresholds:
    """Vertex-degree thresholds at which pairwise entanglement changes character"""

    n: int
    d1: float
    d2: float
    equation: str

    @property
    def ratios(self) -> tuple[float, float]:
        return self.d1 / self.n, self.d2 / self.n


@dataclass(frozen=True)
class SpectrumReport:
    """Top of the spectrum of a sector operator"""

    top_eigenvalue: float
    degeneracy: int
    overlap: float
    claimed_top: Optional[float] = None
    claim_matches: Optional[bool] = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "top_eigenvalue": self.top_eigenvalue,
            "degeneracy": self.degeneracy,
            "overlap": self.overlap,
            "claimed_top": self.claimed_top,
            "claim_matches": self.claim_matches,
        }


@dataclass(frozen=True)
class CostEstimate:
    """CNOT cost estimate of a preparation circuit"""

    regime: str
    estimate: int


@dataclass(frozen=True)
class NoiseFit:
    """Fit of stratum noise means to amplitude*exp(-rate*k) + floor"""

    means: dict[int, float]
    amplitude: float
    decay_rate: float
    flip_floor: float
    residual: float
    converged: bool = True

    def predict(self, k: float) -> float:
        return self.amplitude * math.exp(-self.decay_rate * k) + self.flip_floor

    def to_dict(self) -> dict[str, Any]:
        return {
            "means": {str(k): v for k, v in sorted(self.means.items())},
            "amplitude": self.amplitude,
            "decay_rate": self.decay_rate,
            "flip_floor": self.flip_floor,
            "residual": self.residual,
            "converged": self.converged,
        }


class GateKind:
    """Preparation circuit gate kinds"""

    U1: str = "U1"
    U2: str = "U2"
    U3: str = "U3"
    U4: str = "U4"
    X: str = "X"

    ALL: tuple[str, ...] = (U1, U2, U3, U4, X)
