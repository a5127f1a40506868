import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from binmat.gf2 import BitMatrix, DimensionError, inverse, rank, rref, solve_membership
from oracles import np_rank


@st.composite
def bitmatrices(draw, max_rows=8, max_cols=10):
    rows = draw(st.integers(0, max_rows))
    cols = draw(st.integers(0, max_cols))
    data = draw(st.lists(st.integers(0, (1 << cols) - 1), min_size=rows, max_size=rows))
    return BitMatrix(rows, cols, tuple(data))


def as_array(m):
    return np.array([[(row >> j) & 1 for j in range(m.cols)] for row in m.data], dtype=np.uint8).reshape(m.rows, m.cols)


def test_rank_examples():
    assert rank(BitMatrix.identity(3)) == 3
    assert rank(BitMatrix.zeros(4, 4)) == 0
    # A_4: the four rows add up to zero
    assert rank(BitMatrix.from_rows(["1001", "1100", "0110", "0011"])) == 3


def test_rref_examples():
    red, piv = rref(BitMatrix.identity(3))
    assert red == BitMatrix.identity(3) and piv == [0, 1, 2]
    red, piv = rref(BitMatrix.from_rows(["11", "11"]))
    assert red.to_strings() == ["11", "00"] and piv == [0]


def test_construction_limits():
    with pytest.raises(DimensionError):
        BitMatrix.zeros(65, 3)
    with pytest.raises(DimensionError):
        BitMatrix.zeros(3, 65)
    with pytest.raises(ValueError):
        BitMatrix(1, 2, (0b100,))


def test_solve_membership_examples():
    m = BitMatrix.from_rows(["1011", "0110", "0001"])
    assert solve_membership(m, 0) == 0
    assert solve_membership(m, m.column(2)) is not None
    padded = BitMatrix.from_rows(["10", "01", "00"])
    assert solve_membership(padded, [0, 0, 1]) is None
    with pytest.raises(DimensionError):
        solve_membership(padded, [1, 0])


@given(bitmatrices())
def test_rank_matches_numpy(m):
    assert rank(m) == np_rank(as_array(m))
    assert rank(m) <= min(m.rows, m.cols)


@given(bitmatrices(), st.randoms(use_true_random=False))
def test_rank_invariant_under_row_operations(m, rnd):
    data = list(m.data)
    for _ in range(10):
        if len(data) < 2:
            break
        i, j = rnd.sample(range(len(data)), 2)
        if rnd.random() < 0.5:
            data[i], data[j] = data[j], data[i]
        else:
            data[i] ^= data[j]
    assert rank(BitMatrix(m.rows, m.cols, tuple(data))) == rank(m)


@given(bitmatrices())
def test_rref_idempotent_and_rank_preserving(m):
    red, piv = rref(m)
    assert rref(red) == (red, piv)
    assert rank(red) == rank(m) == len(piv)
    assert piv == sorted(piv)
    # row space preserved: stacking the two adds nothing
    assert rank(BitMatrix(2 * m.rows, m.cols, m.data + red.data)) == rank(m)


@given(bitmatrices(), st.integers(0, 255))
def test_solve_membership_reevaluates(m, seed):
    v = random.Random(seed).getrandbits(m.rows) if m.rows else 0
    combo = solve_membership(m, v)
    in_span = rank(BitMatrix(m.rows, m.cols + 1, tuple(row | (((v >> i) & 1) << m.cols) for i, row in enumerate(m.data)))) == rank(m)
    assert (combo is not None) == in_span
    if combo is not None:
        acc = 0
        for j in range(m.cols):
            if combo >> j & 1:
                acc ^= m.column(j)
        assert acc == v


@settings(max_examples=50)
@given(st.integers(1, 8), st.integers(0, 10**6))
def test_inverse(n, seed):
    rnd = random.Random(seed)
    while True:
        m = BitMatrix(n, n, tuple(rnd.getrandbits(n) for _ in range(n)))
        if rank(m) == n:
            break
    assert m.matmul(inverse(m)) == BitMatrix.identity(n)


def test_transpose_and_columns():
    m = BitMatrix.from_rows(["110", "011"])
    assert m.transpose().to_strings() == ["10", "11", "01"]
    assert BitMatrix.from_columns(m.columns(), 2) == m
