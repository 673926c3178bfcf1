"""Generators for the named hypergraph families."""

import logging
from itertools import combinations

from .exceptions import HypergraphValidationError
from .hypergraph import Hypergraph, validate
from .types import FamilySpec, FamilyTag

logger = logging.getLogger(__name__)

# Octahedron vertices come in antipodal pairs (0,1), (2,3), (4,5).
# Cube vertices are 3-bit labels. Icosahedron: apex 0, upper ring 1-5, lower ring 6-10,
# apex 11. Dodecahedron: top ring 0-4, spokes 5-9, zigzag 10-14, bottom ring 15-19.
_PLATONIC_FACES: dict[str, tuple[tuple[int, ...], ...]] = {
    "tetrahedron": ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)),
    "cube": (
        (0, 1, 3, 2),
        (4, 5, 7, 6),
        (0, 1, 5, 4),
        (2, 3, 7, 6),
        (0, 2, 6, 4),
        (1, 3, 7, 5),
    ),
    "octahedron": (
        (0, 2, 4),
        (0, 2, 5),
        (0, 3, 4),
        (0, 3, 5),
        (1, 2, 4),
        (1, 2, 5),
        (1, 3, 4),
        (1, 3, 5),
    ),
    "icosahedron": (
        (0, 1, 2),
        (0, 2, 3),
        (0, 3, 4),
        (0, 4, 5),
        (0, 5, 1),
        (11, 6, 7),
        (11, 7, 8),
        (11, 8, 9),
        (11, 9, 10),
        (11, 10, 6),
        (1, 2, 7),
        (2, 3, 8),
        (3, 4, 9),
        (4, 5, 10),
        (5, 1, 6),
        (1, 6, 7),
        (2, 7, 8),
        (3, 8, 9),
        (4, 9, 10),
        (5, 10, 6),
    ),
    "dodecahedron": (
        (0, 1, 2, 3, 4),
        (15, 16, 17, 18, 19),
        (0, 1, 6, 10, 5),
        (1, 2, 7, 11, 6),
        (2, 3, 8, 12, 7),
        (3, 4, 9, 13, 8),
        (4, 0, 5, 14, 9),
        (15, 16, 11, 6, 10),
        (16, 17, 12, 7, 11),
        (17, 18, 13, 8, 12),
        (18, 19, 14, 9, 13),
        (19, 15, 10, 5, 14),
    ),
}

_PLATONIC_VERTICES = {
    "tetrahedron": 4,
    "cube": 8,
    "octahedron": 6,
    "icosahedron": 12,
    "dodecahedron": 20,
}

PLATONIC_SOLIDS = ("tetrahedron", "octahedron", "cube", "icosahedron", "dodecahedron")


def complete_kuniform(N: int, k: int) -> Hypergraph:
    """All k-subsets of N vertices; its excitation-state is the Dicke state D_N^k."""
    if not 1 <= k <= N:
        raise HypergraphValidationError(f"Need 1 <= k <= N, got N={N}, k={k}")
    return Hypergraph(N, tuple(combinations(range(N), k)))


def cycle(N: int) -> Hypergraph:
    if N < 3:
        raise HypergraphValidationError(f"Cycle needs at least 3 vertices, got {N}")
    return validate(N, [(i, (i + 1) % N) for i in range(N)])


def _face_boundary(face: tuple[int, ...]) -> list[tuple[int, int]]:
    return [(face[i], face[(i + 1) % len(face)]) for i in range(len(face))]


def platonic(solid: str, mode: str = "edges") -> Hypergraph:
    """Skeleton (mode='edges') or face hypergraph (mode='faces') of a Platonic solid

    Args:
        solid: tetrahedron, cube, octahedron, dodecahedron or icosahedron
        mode: 'edges' or 'faces'
    """
    if solid not in _PLATONIC_FACES:
        raise HypergraphValidationError(f"Unknown Platonic solid {solid!r}")
    faces = _PLATONIC_FACES[solid]
    n = _PLATONIC_VERTICES[solid]
    if mode == "faces":
        return validate(n, faces)
    if mode == "edges":
        return validate(n, {tuple(sorted(pair)) for face in faces for pair in _face_boundary(face)})
    raise HypergraphValidationError(f"Unknown Platonic mode {mode!r}; use 'edges' or 'faces'")


def platonic_faces_table(solid: str) -> tuple[tuple[int, ...], ...]:
    """Faces as cyclically ordered vertex tuples."""
    if solid not in _PLATONIC_FACES:
        raise HypergraphValidationError(f"Unknown Platonic solid {solid!r}")
    return _PLATONIC_FACES[solid]


def simplex_hypergraph(m: int, k: int) -> Hypergraph:
    if not 1 <= k <= m - 1:
        raise HypergraphValidationError(f"Simplex needs 1 <= k <= m-1, got m={m}, k={k}")
    return complete_kuniform(m, k)


def orthoplex_hypergraph(m: int, k: int) -> Hypergraph:
    """k-subsets of the 2m orthoplex vertices avoiding antipodal pairs (2i, 2i+1)."""
    if m < 2 or not 2 <= k <= m:
        raise HypergraphValidationError(f"Orthoplex needs 2 <= k <= m, got m={m}, k={k}")
    edges = [
        subset
        for subset in combinations(range(2 * m), k)
        if len({v // 2 for v in subset}) == k
    ]
    return Hypergraph(2 * m, tuple(edges))


def hypercube_graph(m: int) -> Hypergraph:
    if m < 2:
        raise HypergraphValidationError(f"Hypercube needs m >= 2, got {m}")
    n = 2**m
    return validate(n, [(v, v ^ (1 << b)) for v in range(n) for b in range(m) if v < v ^ (1 << b)])


def hexagonal_torus(rows: int, cols: int) -> Hypergraph:
    """Brick-wall honeycomb glued into a torus

    Vertex (r, c) has index r*cols + c, horizontal neighbours in its row and a vertical
    neighbour below when r + c is even. Needs even rows >= 4 and even cols >= 6.
    """
    if rows < 4 or cols < 6 or rows % 2 or cols % 2:
        raise HypergraphValidationError(
            f"Hexagonal torus needs even rows >= 4 and even cols >= 6, got {rows}x{cols}"
        )
    edges = []
    for r in range(rows):
        for c in range(cols):
            here = r * cols + c
            edges.append((here, r * cols + (c + 1) % cols))
            if (r + c) % 2 == 0:
                edges.append((here, ((r + 1) % rows) * cols + c))
    return validate(rows * cols, edges)


def triangular_torus(rows: int, cols: int) -> Hypergraph:
    """Triangular lattice glued into a torus; vertex (r, c) has index r*cols + c."""
    if rows < 3 or cols < 3:
        raise HypergraphValidationError(f"Triangular torus needs at least 3x3, got {rows}x{cols}")
    edges = []
    for r in range(rows):
        for c in range(cols):
            here = r * cols + c
            for dr, dc in ((0, 1), (1, 0), (1, -1)):
                edges.append((here, ((r + dr) % rows) * cols + (c + dc) % cols))
    return validate(rows * cols, edges)


def telescope() -> Hypergraph:
    """Four parties with edges {0,1,2,3}, {0}, {1,2}."""
    return validate(4, [(0, 1, 2, 3), (0,), (1, 2)])


def build_family(spec: FamilySpec) -> Hypergraph:
    """Instantiate a family from its tag and parameters."""
    family = spec.family
    if family == FamilyTag.DICKE:
        return complete_kuniform(_need(spec.N, "N"), _need(spec.k, "k"))
    if family == FamilyTag.CYCLE:
        return cycle(_need(spec.N, "N"))
    if family == FamilyTag.PLATONIC:
        return platonic(_need(spec.solid, "solid"), spec.mode)
    if family == FamilyTag.SIMPLEX:
        return simplex_hypergraph(_need(spec.m, "m"), _need(spec.k, "k"))
    if family == FamilyTag.ORTHOPLEX:
        return orthoplex_hypergraph(_need(spec.m, "m"), spec.k if spec.k is not None else 2)
    if family == FamilyTag.HYPERCUBE:
        return hypercube_graph(_need(spec.m, "m"))
    if family == FamilyTag.HEX_TORUS:
        return hexagonal_torus(_need(spec.rows, "rows"), _need(spec.cols, "cols"))
    if family == FamilyTag.TRI_TORUS:
        return triangular_torus(_need(spec.rows, "rows"), _need(spec.cols, "cols"))
    if family == FamilyTag.TELESCOPE:
        return telescope()
    raise HypergraphValidationError(f"Unknown family {family!r}")


def _need(value, name: str):
    if value is None:
        raise HypergraphValidationError(f"Family parameter {name} is required")
    return value
