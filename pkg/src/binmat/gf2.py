"""Bit-packed linear algebra over GF(2).

A row is a Python int whose bit ``j`` holds the entry in column ``j``; a
column vector is an int whose bit ``i`` holds the entry in row ``i``.
Matrices are capped at 64 rows and 64 columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_DIM = 64


class DimensionError(ValueError):
    """Raised on shape mismatches or matrices beyond the supported size."""


@dataclass(frozen=True)
class BitMatrix:
    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if not (0 <= self.rows <= MAX_DIM and 0 <= self.cols <= MAX_DIM):
            raise DimensionError(
                f"{self.rows}x{self.cols} matrix exceeds the {MAX_DIM}x{MAX_DIM} cap"
            )
        if len(self.data) != self.rows:
            raise DimensionError(f"expected {self.rows} rows, got {len(self.data)}")
        limit = 1 << self.cols
        for i, row in enumerate(self.data):
            if row < 0 or row >= limit:
                raise DimensionError(f"row {i} has bits beyond column {self.cols}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int] | str], cols: int | None = None) -> BitMatrix:
        """Build from 0/1 sequences or bitstrings such as ``"1001"``."""
        packed = []
        width = cols
        for row in rows:
            bits = [int(ch) for ch in row] if isinstance(row, str) else [int(b) for b in row]
            if width is None:
                width = len(bits)
            if len(bits) != width:
                raise DimensionError(f"row of length {len(bits)} in a {width}-column matrix")
            if any(b not in (0, 1) for b in bits):
                raise ValueError("entries must be 0 or 1")
            packed.append(sum(1 << j for j, b in enumerate(bits) if b))
        return cls(len(packed), width or 0, tuple(packed))

    @classmethod
    def from_columns(cls, columns: Sequence[int], rows: int) -> BitMatrix:
        """Build from column vectors (bit ``i`` = row ``i``)."""
        data = [0] * rows
        for j, col in enumerate(columns):
            if col >> rows:
                raise DimensionError(f"column {j} has bits beyond row {rows}")
            i = 0
            while col:
                if col & 1:
                    data[i] |= 1 << j
                col >>= 1
                i += 1
        return cls(rows, len(columns), tuple(data))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.data[i] >> j) & 1

    def column(self, j: int) -> int:
        out = 0
        for i, row in enumerate(self.data):
            if (row >> j) & 1:
                out |= 1 << i
        return out

    def columns(self) -> list[int]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> BitMatrix:
        return BitMatrix(self.cols, self.rows, tuple(self.columns()))

    def select_columns(self, indices: Sequence[int]) -> BitMatrix:
        """Submatrix with the given columns, in the given order."""
        data = []
        for row in self.data:
            out = 0
            for k, j in enumerate(indices):
                if (row >> j) & 1:
                    out |= 1 << k
            data.append(out)
        return BitMatrix(self.rows, len(indices), tuple(data))

    def matmul(self, other: BitMatrix) -> BitMatrix:
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        data = []
        for row in self.data:
            acc = 0
            k = 0
            while row:
                if row & 1:
                    acc ^= other.data[k]
                row >>= 1
                k += 1
            data.append(acc)
        return BitMatrix(self.rows, other.cols, tuple(data))

    def to_strings(self) -> list[str]:
        return ["".join(str((row >> j) & 1) for j in range(self.cols)) for row in self.data]

    def __str__(self) -> str:
        return "\n".join(self.to_strings())


def _lowbit_index(x: int) -> int:
    return (x & -x).bit_length() - 1


def rank_of_rows(rows: Iterable[int]) -> int:
    """Rank of a collection of packed rows.  Hot path for the rank oracle."""
    piv: dict[int, int] = {}
    for x in rows:
        while x:
            h = x.bit_length()
            p = piv.get(h)
            if p is None:
                piv[h] = x
                break
            x ^= p
    return len(piv)


def rank(m: BitMatrix) -> int:
    return rank_of_rows(m.data)


def rref(m: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Reduced row-echelon form; pivots chosen in increasing column order.

    Zero rows are kept at the bottom so the shape is unchanged.
    """
    work = list(m.data)
    pivots: list[int] = []
    top = 0
    for j in range(m.cols):
        bit = 1 << j
        found = next((i for i in range(top, m.rows) if work[i] & bit), None)
        if found is None:
            continue
        work[top], work[found] = work[found], work[top]
        pivot_row = work[top]
        for i in range(m.rows):
            if i != top and work[i] & bit:
                work[i] ^= pivot_row
        pivots.append(j)
        top += 1
        if top == m.rows:
            break
    return BitMatrix(m.rows, m.cols, tuple(work)), pivots


def solve_membership(m: BitMatrix, v: int | Sequence[int]) -> int | None:
    """Express column vector ``v`` as a GF(2) sum of columns of ``m``.

    Returns a coefficient mask over the columns (bit ``j`` set means column
    ``j`` is used), or ``None`` if ``v`` is outside the column space.
    """
    if not isinstance(v, int):
        bits = list(v)
        if len(bits) != m.rows:
            raise DimensionError(f"vector of length {len(bits)} for a matrix with {m.rows} rows")
        v = sum(1 << i for i, b in enumerate(bits) if b)
    elif v < 0 or v >> m.rows:
        raise DimensionError(f"vector has bits beyond row {m.rows}")
    # columns reduced against each other, each tagged with its combination
    basis: list[tuple[int, int]] = []
    for j, col in enumerate(m.columns()):
        combo = 1 << j
        for b, c in basis:
            if col & (b & -b):
                col ^= b
                combo ^= c
        if col:
            low = col & -col
            basis = [(b ^ col, c ^ combo) if b & low else (b, c) for b, c in basis]
            basis.append((col, combo))
    combo = 0
    for b, c in basis:
        if v & (b & -b):
            v ^= b
            combo ^= c
    return combo if v == 0 else None


def inverse(m: BitMatrix) -> BitMatrix:
    """Inverse of a square invertible matrix over GF(2)."""
    n = m.rows
    if m.cols != n:
        raise DimensionError("only square matrices are invertible")
    aug = BitMatrix(n, 2 * n, tuple(row | (1 << (n + i)) for i, row in enumerate(m.data)))
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular over GF(2)")
    mask = (1 << n) - 1
    return BitMatrix(n, n, tuple((row >> n) & mask for row in red.data))
