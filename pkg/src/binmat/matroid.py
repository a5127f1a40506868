"""Binary matroids given by a GF(2) representation with labeled columns."""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Union

from .gf2 import BitMatrix, rank_of_rows, rref

# An element subset is an int mask aligned with ``BinaryMatroid.elements``.
ElementSet = int
SetLike = Union[int, Iterable[str]]


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def compress(x: int, keep: list[int]) -> int:
    """Pack the bits of ``x`` at positions ``keep`` into consecutive bits."""
    out = 0
    for k, j in enumerate(keep):
        if (x >> j) & 1:
            out |= 1 << k
    return out


class BinaryMatroid:
    """Immutable binary matroid.

    ``rep`` is always stored with full row rank, so it has exactly ``rank``
    rows.  A representation with redundant rows is replaced by the nonzero
    rows of its reduced row-echelon form.
    """

    def __init__(self, elements: Iterable[str], rep: BitMatrix, name: str = ""):
        elements = tuple(str(e) for e in elements)
        if len(elements) != rep.cols:
            raise ValueError(f"{len(elements)} labels for {rep.cols} columns")
        if len(set(elements)) != len(elements):
            raise ValueError("element labels must be unique")
        r = rank_of_rows(rep.data)
        if r != rep.rows:
            red, _ = rref(rep)
            rep = BitMatrix(r, rep.cols, red.data[:r])
        self.elements = elements
        self.rep = rep
        self.name = name
        self.rank = r
        self._index = {e: i for i, e in enumerate(elements)}

    # -- basic accessors -------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def ground(self) -> ElementSet:
        return (1 << len(self.elements)) - 1

    @cached_property
    def columns(self) -> tuple[int, ...]:
        return tuple(self.rep.columns())

    @cached_property
    def _canonical_rows(self) -> tuple[int, ...]:
        return rref(self.rep)[0].data

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown element {label!r}") from None

    def mask(self, s: SetLike) -> ElementSet:
        """Convert labels (or an existing mask) into a validated mask."""
        if isinstance(s, int):
            if s < 0 or s >> len(self.elements):
                raise ValueError(f"mask {s:#x} references unknown elements")
            return s
        if isinstance(s, str):
            s = [s]
        out = 0
        for label in s:
            out |= 1 << self.index(label)
        return out

    def labels(self, s: ElementSet) -> list[str]:
        return [self.elements[i] for i in bits(s)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryMatroid):
            return NotImplemented
        return self.elements == other.elements and self._canonical_rows == other._canonical_rows

    def __hash__(self) -> int:
        return hash((self.elements, self._canonical_rows))

    def __repr__(self) -> str:
        name = f" {self.name}" if self.name else ""
        return f"<BinaryMatroid{name}: {len(self.elements)} elements, rank {self.rank}>"

    def renamed(self, name: str) -> BinaryMatroid:
        return BinaryMatroid(self.elements, self.rep, name)

    def relabeled(self, mapping: dict[str, str]) -> BinaryMatroid:
        return BinaryMatroid([mapping.get(e, e) for e in self.elements], self.rep, self.name)

    # -- rank oracle -----------------------------------------------------

    def rank_of(self, s: SetLike) -> int:
        s = self.mask(s)
        return rank_of_rows([row & s for row in self.rep.data])

    def _rank(self, s: int) -> int:
        # unchecked fast path for internal searches
        return rank_of_rows([row & s for row in self.rep.data])

    def connectivity(self, x: SetLike) -> int:
        """The connectivity function r(X) + r(E - X) - r(M)."""
        x = self.mask(x)
        return self._rank(x) + self._rank(self.ground ^ x) - self.rank

    def is_independent(self, s: SetLike) -> bool:
        s = self.mask(s)
        return self._rank(s) == popcount(s)

    def closure(self, s: SetLike) -> ElementSet:
        s = self.mask(s)
        r = self._rank(s)
        out = s
        for e in range(len(self.elements)):
            bit = 1 << e
            if not s & bit and self._rank(s | bit) == r:
                out |= bit
        return out

    def coclosure(self, s: SetLike) -> ElementSet:
        return self.dual().closure(self.mask(s))

    # -- derived matroids ------------------------------------------------

    def dual(self) -> BinaryMatroid:
        cached = self.__dict__.get("_dual")
        if cached is not None:
            return cached
        n, r = len(self.elements), self.rank
        red, pivots = rref(self.rep)
        pivot_set = set(pivots)
        nonbasis = [j for j in range(n) if j not in pivot_set]
        cols = [0] * n
        for i, b in enumerate(pivots):
            cols[b] = compress(red.data[i], nonbasis)
        for k, j in enumerate(nonbasis):
            cols[j] = 1 << k
        dual = BinaryMatroid(self.elements, BitMatrix.from_columns(cols, n - r), self.name and f"{self.name}*")
        dual.__dict__["_dual"] = self
        self.__dict__["_dual"] = dual
        return dual

    def minor(self, delete: SetLike = 0, contract: SetLike = 0) -> BinaryMatroid:
        """The minor M \\ delete / contract, keeping the remaining labels."""
        delete, contract = self.mask(delete), self.mask(contract)
        if delete & contract:
            raise ValueError("delete and contract sets overlap: " + ", ".join(self.labels(delete & contract)))
        rows = list(self.rep.data)
        for c in bits(contract):
            bit = 1 << c
            for i, row in enumerate(rows):
                if row & bit:
                    p = rows.pop(i)
                    rows = [x ^ p if x & bit else x for x in rows]
                    break
        keep = bits(self.ground & ~(delete | contract))
        rep = BitMatrix(len(rows), len(keep), tuple(compress(x, keep) for x in rows))
        return BinaryMatroid([self.elements[i] for i in keep], rep)

    def delete(self, s: SetLike) -> BinaryMatroid:
        return self.minor(delete=s)

    def contract(self, s: SetLike) -> BinaryMatroid:
        return self.minor(contract=s)

    def restrict(self, s: SetLike) -> BinaryMatroid:
        return self.minor(delete=self.ground & ~self.mask(s))

    # -- circuits ----------------------------------------------------------

    def circuits(self, max_size: int) -> list[ElementSet]:
        """All circuits with at most ``max_size`` elements, by increasing size."""
        n = len(self.elements)
        out: list[int] = []
        level = {0}
        for k in range(1, max_size + 1):
            nxt = set()
            for ind in sorted(level):
                for e in range(ind.bit_length(), n):
                    s = ind | (1 << e)
                    if self._rank(s) == k:
                        nxt.add(s)
                    elif all(s ^ (1 << x) in level for x in bits(s)):
                        out.append(s)
            if not nxt:
                break
            level = nxt
        return out

    def cocircuits(self, max_size: int) -> list[ElementSet]:
        return self.dual().circuits(max_size)

    def is_circuit(self, s: SetLike) -> bool:
        s = self.mask(s)
        k = popcount(s)
        if self._rank(s) != k - 1:
            return False
        return all(self._rank(s ^ (1 << x)) == k - 1 for x in bits(s))

    def is_cocircuit(self, s: SetLike) -> bool:
        return self.dual().is_circuit(self.mask(s))
