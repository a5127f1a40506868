from pathlib import Path

import pytest

from binmat import (
    FamilySpec,
    are_isomorphic,
    biwheel,
    biwheel_plus,
    construct,
    cycle_K4,
    fano,
    graphic_from_edges,
    mobius_delta,
    mobius_delta_minus_z,
    parse_matroid,
    triads,
    triangles,
)
from binmat.families import ORDERED_FAMILIES, a_matrix, biwheel_plus_edges
from binmat.matroid import popcount
from oracles import brute_circuits

GOLDEN = Path(__file__).parent / "golden"


def test_a4_rows():
    assert ["".join(map(str, row)) for row in a_matrix(4)] == ["1001", "1100", "0110", "0011"]


@pytest.mark.parametrize("n", range(4, 9))
def test_sizes_and_ranks(n):
    for family in ("biwheel_plus", "mobius_delta"):
        m = construct(family, n)
        assert m.size == 3 * n + 1 and m.rank == n + 1
    assert biwheel(n).size == 3 * n and mobius_delta_minus_z(n).size == 3 * n
    assert biwheel(n) == biwheel_plus(n).delete(["z"])
    assert mobius_delta_minus_z(n) == mobius_delta(n).delete(["z"])


@pytest.mark.parametrize("family", ["biwheel_plus", "mobius_delta"])
@pytest.mark.parametrize("n", range(4, 9))
def test_golden_matrices(family, n):
    expected = parse_matroid((GOLDEN / f"{family}_{n}.bmx").read_text())
    got = construct(family, n)
    assert got.elements == expected.elements
    assert got.rep == expected.rep


def test_labels_and_top_rows():
    m = biwheel_plus(4)
    assert m.elements[0] == "z"
    assert m.elements[1:5] == ("x2", "x3", "x4", "x5")
    assert m.elements[5:9] == ("s1", "s2", "s3", "s4")
    assert m.elements[9:] == ("t1", "t2", "t3", "t4")
    assert m.rep.to_strings()[0] == "1000011110000"
    assert mobius_delta(4).rep.to_strings()[0] == "1000011110001"


def test_spec_validation():
    for family in ORDERED_FAMILIES:
        with pytest.raises(ValueError):
            FamilySpec(family, 3)
    with pytest.raises(ValueError):
        FamilySpec("petersen", 5)
    assert construct("fano") == fano()
    assert construct(FamilySpec("fano", 99)) == fano()


def test_fano_columns():
    assert sorted(fano().columns) == list(range(1, 8))


def test_k4_circuits():
    k4 = cycle_K4()
    assert k4.rank == 3 and k4.size == 6
    sizes = sorted(popcount(c) for c in brute_circuits(k4))
    assert sizes == [3, 3, 3, 3, 4, 4, 4]


def test_tree_has_no_circuits():
    tree = graphic_from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    assert tree.circuits(5) == [] and tree.rank == 4


def test_invalid_vertex():
    with pytest.raises(ValueError):
        graphic_from_edges(3, [(0, 3)])


@pytest.mark.parametrize("n", range(4, 9))
def test_graphic_cross_check(n):
    vertices, edges, labels = biwheel_plus_edges(n)
    g = graphic_from_edges(vertices, edges, labels)
    m = biwheel_plus(n)
    # the labeled graph reproduces the block matrix exactly
    assert g == m
    shuffled = graphic_from_edges(vertices, edges[::-1], [f"g{i}" for i in range(len(edges))])
    w = are_isomorphic(shuffled, m)
    assert w is not None and w.verify(shuffled, m)


@pytest.mark.parametrize("n", range(4, 9))
def test_every_element_in_triangle_or_triad(n):
    for family in ORDERED_FAMILIES:
        for m in (construct(family, n), construct(family, n).dual()):
            covered = 0
            for t in triangles(m) + triads(m):
                covered |= t
            assert covered == m.ground, (family, n)
