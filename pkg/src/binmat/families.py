"""Constructors for the named binary matroids.

The biwheel-plus matroid D_n and the triangular Moebius matroid are built
from the block matrix

    [ I_{n+1} |  top  | top' ]
    [         |  I_n  | A_n  ]

where ``top`` is all ones, ``top'`` is zero (biwheel-plus) or e_n (Moebius),
and A_n has ones on the diagonal, the subdiagonal and in position (1, n).
Columns are labeled z, x2, ..., x_{n+1}, s1, ..., s_n, t1, ..., t_n; the
first identity column is z (the edge uv of the biwheel-plus graph).
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2 import BitMatrix
from .matroid import BinaryMatroid

ORDERED_FAMILIES = ("biwheel", "biwheel_plus", "mobius_delta", "mobius_delta_minus_z")
SMALL_FAMILIES = ("fano", "fano_dual", "cycle_K4", "ag32")
FAMILIES = ORDERED_FAMILIES + SMALL_FAMILIES

Z = "z"


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if self.family in ORDERED_FAMILIES and self.n < 4:
            raise ValueError(f"{self.family} needs n >= 4, got {self.n}")


def a_matrix(n: int) -> list[list[int]]:
    """A_n as a list of 0/1 rows."""
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 1
        if i + 1 < n:
            a[i + 1][i] = 1
    a[0][n - 1] = 1
    return a


def _block_matroid(n: int, mobius: bool, name: str) -> BinaryMatroid:
    a = a_matrix(n)
    rows = []
    top = [1] + [0] * n + [1] * n + [0] * n
    if mobius:
        top[-1] = 1
    rows.append(top)
    for i in range(n):
        ident = [0] * (n + 1)
        ident[i + 1] = 1
        unit = [0] * n
        unit[i] = 1
        rows.append(ident + unit + a[i])
    labels = [Z] + [f"x{i}" for i in range(2, n + 2)]
    labels += [f"s{j}" for j in range(1, n + 1)] + [f"t{j}" for j in range(1, n + 1)]
    return BinaryMatroid(labels, BitMatrix.from_rows(rows), name)


def biwheel_plus(n: int) -> BinaryMatroid:
    """M(G_{n+2}^+), the matroid D_n."""
    _check(n)
    return _block_matroid(n, mobius=False, name=f"biwheel_plus({n})")


def biwheel(n: int) -> BinaryMatroid:
    """M(G_{n+2}): the biwheel-plus matroid with z deleted."""
    return biwheel_plus(n).delete([Z]).renamed(f"biwheel({n})")


def mobius_delta(n: int) -> BinaryMatroid:
    """The rank-(n+1) triangular Moebius matroid."""
    _check(n)
    return _block_matroid(n, mobius=True, name=f"mobius_delta({n})")


def mobius_delta_minus_z(n: int) -> BinaryMatroid:
    return mobius_delta(n).delete([Z]).renamed(f"mobius_delta_minus_z({n})")


def _check(n: int):
    if n < 4:
        raise ValueError(f"family order must be at least 4, got {n}")


def fano() -> BinaryMatroid:
    """F7: the seven nonzero vectors of GF(2)^3, in increasing order."""
    cols = list(range(1, 8))
    return BinaryMatroid("abcdefg", BitMatrix.from_columns(cols, 3), "fano")


def fano_dual() -> BinaryMatroid:
    return fano().dual().renamed("fano_dual")


def ag32() -> BinaryMatroid:
    """AG(3,2): the vectors of GF(2)^4 with leading coordinate 1."""
    cols = [1 | (v << 1) for v in range(8)]
    return BinaryMatroid([f"p{i}" for i in range(8)], BitMatrix.from_columns(cols, 4), "ag32")


def cycle_K4() -> BinaryMatroid:
    edges = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    labels = [f"{u}{v}" for u, v in edges]
    return graphic_from_edges(4, [(u - 1, v - 1) for u, v in edges], labels, name="cycle_K4")


def graphic_from_edges(vertex_count: int, edges, labels=None, name: str = "", drop_vertex: int = 0) -> BinaryMatroid:
    """Cycle matroid from the vertex-edge incidence matrix over GF(2).

    The row of ``drop_vertex`` is omitted; further dependencies among the
    rows (for disconnected graphs) are removed by the matroid constructor.
    """
    edges = list(edges)
    if labels is None:
        labels = [f"e{i}" for i in range(len(edges))]
    rows = [v for v in range(vertex_count) if v != drop_vertex]
    row_of = {v: i for i, v in enumerate(rows)}
    cols = []
    for u, v in edges:
        for w in (u, v):
            if not 0 <= w < vertex_count:
                raise ValueError(f"edge ({u}, {v}) references vertex {w} outside 0..{vertex_count - 1}")
        col = 0
        if u != v:
            for w in (u, v):
                if w in row_of:
                    col ^= 1 << row_of[w]
        cols.append(col)
    return BinaryMatroid(labels, BitMatrix.from_columns(cols, len(rows)), name)


def biwheel_plus_edges(n: int) -> tuple[int, list[tuple[int, int]], list[str]]:
    """Edge list of the graph G_{n+2}^+ labeled to match :func:`biwheel_plus`.

    Vertices: u = 0, v = 1, cycle vertices v_j = j + 1.  The edges v-v_j are
    x_{j+1}, u-v_j are s_j, the cycle edges v_j-v_{j+1} are t_j, and uv is z.
    """
    edges = [(0, 1)]
    labels = [Z]
    for j in range(1, n + 1):
        edges.append((1, j + 1))
        labels.append(f"x{j + 1}")
    for j in range(1, n + 1):
        edges.append((0, j + 1))
        labels.append(f"s{j}")
    for j in range(1, n + 1):
        edges.append((j + 1, j % n + 2))
        labels.append(f"t{j}")
    return n + 2, edges, labels


def construct(spec: FamilySpec | str, n: int = 0) -> BinaryMatroid:
    if isinstance(spec, str):
        spec = FamilySpec(spec, n)
    builders = {
        "biwheel": biwheel,
        "biwheel_plus": biwheel_plus,
        "mobius_delta": mobius_delta,
        "mobius_delta_minus_z": mobius_delta_minus_z,
    }
    if spec.family in builders:
        return builders[spec.family](spec.n)
    return {"fano": fano, "fano_dual": fano_dual, "cycle_K4": cycle_K4, "ag32": ag32}[spec.family]()
