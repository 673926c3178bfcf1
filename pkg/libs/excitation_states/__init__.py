"""
Excitation States

Multipartite quantum states built from permutation symmetries and hypergraphs:
exact pairwise entanglement, preparation circuits, sector Hamiltonians and
noise statistics of measured histograms.
"""

__version__ = "0.1.0"
__author__ = "Jihoon Kim"
__email__ = "pigberger70@gmail.com"

from .circuit import (
    Circuit,
    Gate,
    apply_circuit,
    cnot_cost,
    deletion_cost_estimate,
    invert,
    preparation_circuit,
    regime_estimate,
    synthesize_disentangler,
    verify_round_trip,
)
from .context_managers import budget_override
from .decorators import budget_guard
from .eigen import jacobi_eigh
from .entanglement import (
    c_v_rest,
    concurrence_excitation,
    concurrence_regular,
    concurrence_wootters,
    entanglement_ratio,
    family_closed_form,
    flat_network_estimate,
    gamma_v_path_count,
    local_network_bound,
    monogamy_gap,
    node_entanglement,
    phase_thresholds,
    ppt_entangled,
)
from .exceptions import (
    BudgetExceededError,
    ConvergenceError,
    ExcitationStateConfigError,
    ExcitationStateError,
    HypergraphValidationError,
    PreconditionError,
    ShapeMismatchError,
)
from .families import (
    build_family,
    complete_kuniform,
    cycle,
    hexagonal_torus,
    hypercube_graph,
    orthoplex_hypergraph,
    platonic,
    simplex_hypergraph,
    telescope,
    triangular_torus,
)
from .hamiltonian import (
    SubspaceOperator,
    build_3body,
    build_3body_conditional,
    build_dicke_jj,
    build_hg,
    rayleigh_residual,
    top_eigenpair,
)
from .hypergraph import (
    Hypergraph,
    ProductDecomposition,
    automorphism_group,
    is_complete_multipartite,
    is_edge_transitive,
    product_decompose,
    validate,
)
from .noisefit import (
    CountsHistogram,
    fit_noise_model,
    noise_strata,
    signal_probability,
    signal_set,
    stratum_means,
)
from .settings import Budgets, get_budgets, initialize_budgets
from .state import (
    DensityMatrix,
    SparseState,
    excitation_state,
    fidelity,
    reduced_2q_closed_form,
    reduced_density,
    separability_check,
)
from .symmetry import (
    Permutation,
    PermutationGroup,
    dicke_like_state,
    dicke_state,
    is_realizable,
    orbit_basis,
    proposition1_state,
    realizable_closure,
    stabilizer_group,
    stellar_construct,
)
from .types import (
    ConcurrenceReport,
    CostEstimate,
    FamilyClosedForm,
    FamilySpec,
    FamilyTag,
    NodeEntanglement,
    NoiseFit,
    PhaseThresholds,
    SpectrumReport,
)

__all__ = [
    # Budgets
    "Budgets",
    "initialize_budgets",
    "get_budgets",
    "budget_guard",
    "budget_override",
    # Hypergraphs and families
    "Hypergraph",
    "ProductDecomposition",
    "validate",
    "product_decompose",
    "is_complete_multipartite",
    "automorphism_group",
    "is_edge_transitive",
    "build_family",
    "complete_kuniform",
    "cycle",
    "platonic",
    "simplex_hypergraph",
    "orthoplex_hypergraph",
    "hypercube_graph",
    "hexagonal_torus",
    "triangular_torus",
    "telescope",
    # States and symmetry
    "SparseState",
    "DensityMatrix",
    "excitation_state",
    "reduced_density",
    "reduced_2q_closed_form",
    "fidelity",
    "separability_check",
    "Permutation",
    "PermutationGroup",
    "dicke_like_state",
    "dicke_state",
    "stabilizer_group",
    "realizable_closure",
    "is_realizable",
    "orbit_basis",
    "proposition1_state",
    "stellar_construct",
    # Entanglement
    "concurrence_wootters",
    "concurrence_excitation",
    "concurrence_regular",
    "ppt_entangled",
    "c_v_rest",
    "entanglement_ratio",
    "monogamy_gap",
    "node_entanglement",
    "family_closed_form",
    "gamma_v_path_count",
    "local_network_bound",
    "flat_network_estimate",
    "phase_thresholds",
    # Circuits
    "Gate",
    "Circuit",
    "synthesize_disentangler",
    "preparation_circuit",
    "invert",
    "apply_circuit",
    "cnot_cost",
    "deletion_cost_estimate",
    "regime_estimate",
    "verify_round_trip",
    # Hamiltonians
    "SubspaceOperator",
    "build_dicke_jj",
    "build_hg",
    "build_3body",
    "build_3body_conditional",
    "top_eigenpair",
    "rayleigh_residual",
    "jacobi_eigh",
    # Noise
    "CountsHistogram",
    "signal_set",
    "noise_strata",
    "stratum_means",
    "signal_probability",
    "fit_noise_model",
    # Types
    "FamilySpec",
    "FamilyTag",
    "ConcurrenceReport",
    "NodeEntanglement",
    "FamilyClosedForm",
    "PhaseThresholds",
    "SpectrumReport",
    "CostEstimate",
    "NoiseFit",
    # Exceptions
    "ExcitationStateError",
    "HypergraphValidationError",
    "BudgetExceededError",
    "ShapeMismatchError",
    "PreconditionError",
    "ConvergenceError",
    "ExcitationStateConfigError",
]
