import pytest

from libs.excitation_states.exports import (
    COMPARISON_HEADER,
    fig_comparison_rows,
    fig_figz_rows,
    fig_polytope_rows,
    table1_rows,
)
from libs.excitation_states.families import PLATONIC_SOLIDS
from libs.excitation_states.types import FamilyTag


def test_table1_rows():
    rows = {row[0]: row for row in table1_rows()}
    assert list(rows) == list(PLATONIC_SOLIDS)
    assert rows["tetrahedron"][1:] == pytest.approx((4, 1 / 3, 1 / 3))
    assert rows["octahedron"][1:] == pytest.approx((6, 2 / 3, 0.5))
    assert rows["cube"][1:] == pytest.approx((8, 1 / 3, 4 / 9))


def test_fig_figz_rows():
    assert fig_figz_rows(2, [4]) == [(4, 1.0)]
    rows = fig_figz_rows()
    assert rows[0][0] == 3
    assert rows[-1] == (20, pytest.approx(4 * 2 * 18 / 400))


def test_fig_comparison_rows():
    rows = fig_comparison_rows(8)
    assert all(len(row) == len(COMPARISON_HEADER) for row in rows)
    by_family = {}
    for row in rows:
        by_family.setdefault(row[1], []).append(row)
    (hex_row,) = by_family[FamilyTag.HEX_TORUS]
    assert hex_row[0] == 24
    assert hex_row[4] == pytest.approx(1 / 18)
    (tri_row,) = by_family[FamilyTag.TRI_TORUS]
    assert tri_row[2] == pytest.approx(30 / 414)
    dicke = {row[0]: row[2] for row in by_family[FamilyTag.DICKE]}
    assert sorted(dicke) == list(range(3, 9))


def test_fig_polytope_rows():
    rows = {(row[0], row[1], row[2]): row for row in fig_polytope_rows(8)}
    assert rows[(FamilyTag.ORTHOPLEX, 4, 2)][3:] == pytest.approx((8, 0.341977), abs=1e-6)
    assert rows[(FamilyTag.HYPERCUBE, 3, 2)][3:] == pytest.approx((8, 4 / 9))
    assert (FamilyTag.HYPERCUBE, 4, 2) not in rows
    assert all(row[3] <= 8 for row in rows.values())
