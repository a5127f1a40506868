from itertools import combinations

import numpy as np
import pytest

from binmat import CatalogScope, catalog, connectivity_class, enumerate_binary_matroids
from binmat.catalog import CatalogError
from oracles import apply_linear, gl_matrices, np_rank


def orbit_counts(rank, sizes):
    """Spanning point sets of PG(rank-1, 2) up to GL(rank, 2), by brute force."""
    points = list(range(1, 1 << rank))
    pos = {p: i for i, p in enumerate(points)}
    perms = np.array([[pos[apply_linear(g, p)] for p in points] for g in gl_matrices(rank)], dtype=np.int64)
    counts = {}
    for size in sizes:
        canon = set()
        for subset in combinations(range(len(points)), size):
            cols = np.array([[points[i] >> b & 1 for i in subset] for b in range(rank)])
            if np_rank(cols) != rank:
                continue
            images = np.zeros(len(perms), dtype=np.int64)
            for i in subset:
                images |= np.int64(1) << perms[:, i]
            canon.add(int(images.min()))
        counts[size] = len(canon)
    return counts


def test_rank3_counts_match_gl_orbits():
    expected = orbit_counts(3, range(3, 8))
    got = {n: sum(1 for _ in enumerate_binary_matroids(3, n)) for n in range(3, 8)}
    assert got == expected == {3: 1, 4: 2, 5: 1, 6: 1, 7: 1}


def test_rank4_small_counts_match_gl_orbits():
    expected = orbit_counts(4, range(4, 7))
    got = {n: sum(1 for _ in enumerate_binary_matroids(4, n)) for n in range(4, 7)}
    assert got == expected


def test_rank4_counts():
    got = [sum(1 for _ in enumerate_binary_matroids(4, n)) for n in range(4, 16)]
    assert got == [1, 3, 4, 5, 6, 5, 4, 3, 2, 1, 1, 1]


def test_members_are_simple_with_right_rank():
    for m in catalog("rank<=4,size<=10"):
        cols = m.columns
        assert 0 not in cols and len(set(cols)) == len(cols)
        assert m.rank <= 4 and m.size <= 10


def test_filters():
    three = catalog("rank<=4,size<=10,simple,cosimple,3connected")
    assert len(three) == 14
    assert all(connectivity_class(m).is_3_connected for m in three)
    assert all(not m.cocircuits(2) for m in three)
    i4c = catalog("rank<=4,size<=10,i4c")
    assert all(connectivity_class(m).is_internally_4_connected for m in i4c)
    assert {m.name for m in i4c} <= {m.name for m in catalog("rank<=4,size<=10,3connected")}


def test_scope_parse():
    s = CatalogScope.parse("rank<=3, size<=7, size>=4, 3connected")
    assert (s.max_rank, s.max_size, s.min_size, s.filters) == (3, 7, 4, ("3connected",))
    assert CatalogScope.parse(str(s)) == s
    for bad in ("rank<=5", "size<=16", "rank>=2", "colorful", "size<9"):
        with pytest.raises(CatalogError):
            CatalogScope.parse(bad)
    with pytest.raises(CatalogError):
        list(enumerate_binary_matroids(3, 4, ["nope"]))
