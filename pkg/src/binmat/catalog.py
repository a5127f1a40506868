"""Simple binary matroids of small rank, one per isomorphism class.

A simple rank-r binary matroid is a spanning set of points of PG(r-1, 2),
and two such sets give isomorphic matroids exactly when a linear map of
GF(2)^r carries one onto the other.  Orbits are found with a union-find over
the point subsets, using the elementary transvections as generators of
GL(r, 2).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Iterator

from .gf2 import BitMatrix, rank_of_rows
from .matroid import BinaryMatroid
from .structure import connectivity_class, is_3_connected

MAX_RANK = 4
MAX_SIZE = 15


class CatalogError(ValueError):
    pass


def transvections(rank: int) -> list[list[int]]:
    """Point permutations of PG(rank-1, 2) for the maps x_i += x_j (i != j).

    ``perm[p]`` is the image of point ``p`` (a nonzero int below 2**rank);
    index 0 is unused.
    """
    gens = []
    for i in range(rank):
        for j in range(rank):
            if i == j:
                continue
            perm = [0] * (1 << rank)
            for p in range(1, 1 << rank):
                perm[p] = p ^ (1 << i) if (p >> j) & 1 else p
            gens.append(perm)
    return gens


def _find(parent: dict[int, int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@lru_cache(maxsize=None)
def orbit_representatives(rank: int, size: int) -> tuple[int, ...]:
    """Least point-set mask of each orbit of spanning ``size``-subsets.

    Bit ``p - 1`` of a mask stands for point ``p``.
    """
    if not (1 <= rank <= MAX_RANK) or not (0 <= size <= MAX_SIZE):
        raise CatalogError(f"rank {rank}, size {size} is outside rank <= {MAX_RANK}, size <= {MAX_SIZE}")
    points = list(range(1, 1 << rank))
    if size > len(points):
        return ()
    masks = []
    for chosen in combinations(points, size):
        if rank_of_rows(chosen) == rank:
            masks.append(sum(1 << (p - 1) for p in chosen))
    parent = {m: m for m in masks}
    for perm in transvections(rank):
        for m in masks:
            image = 0
            x = m
            while x:
                low = x & -x
                image |= 1 << (perm[low.bit_length()] - 1)
                x ^= low
            a, b = _find(parent, m), _find(parent, image)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return tuple(sorted({_find(parent, m) for m in masks}))


def matroid_from_points(mask: int, rank: int, name: str = "") -> BinaryMatroid:
    points = [p for p in range(1, 1 << rank) if (mask >> (p - 1)) & 1]
    labels = [f"e{i + 1}" for i in range(len(points))]
    return BinaryMatroid(labels, BitMatrix.from_columns(points, rank), name)


FILTERS: dict[str, Callable[[BinaryMatroid], bool]] = {
    "simple": lambda m: True,
    "cosimple": lambda m: not m.cocircuits(2),
    "3connected": is_3_connected,
    "i4c": lambda m: connectivity_class(m).is_internally_4_connected,
}


def _resolve(filters: Iterable[str | Callable]) -> list[Callable[[BinaryMatroid], bool]]:
    out = []
    for f in filters:
        if callable(f):
            out.append(f)
        elif f in FILTERS:
            out.append(FILTERS[f])
        else:
            raise CatalogError(f"unknown filter {f!r}; known: {', '.join(FILTERS)}")
    return out


def enumerate_binary_matroids(rank: int, size: int, filters: Iterable[str | Callable] = ()) -> Iterator[BinaryMatroid]:
    """One simple binary matroid per isomorphism class, filtered."""
    preds = _resolve(filters)
    for k, mask in enumerate(orbit_representatives(rank, size)):
        m = matroid_from_points(mask, rank, f"r{rank}n{size}#{k}")
        if all(p(m) for p in preds):
            yield m


@dataclass(frozen=True)
class CatalogScope:
    max_rank: int = MAX_RANK
    max_size: int = 10
    filters: tuple[str, ...] = ("3connected",)
    min_size: int = 1

    @classmethod
    def parse(cls, text: str) -> CatalogScope:
        """Parse filters such as ``rank<=4,size<=10,3connected``."""
        max_rank, max_size, min_size, filters = MAX_RANK, 10, 1, []
        for part in filter(None, (p.strip() for p in text.split(","))):
            m = re.fullmatch(r"(rank|size)\s*(<=|>=)\s*(\d+)", part)
            if m:
                key, op, value = m.group(1), m.group(2), int(m.group(3))
                if key == "rank" and op == "<=":
                    max_rank = value
                elif key == "size" and op == "<=":
                    max_size = value
                elif key == "size":
                    min_size = value
                else:
                    raise CatalogError(f"unsupported bound {part!r}")
            elif part in FILTERS:
                filters.append(part)
            else:
                raise CatalogError(f"cannot parse catalog filter {part!r}")
        if max_rank > MAX_RANK or max_size > MAX_SIZE:
            raise CatalogError(f"catalog is limited to rank <= {MAX_RANK}, size <= {MAX_SIZE}")
        return cls(max_rank, max_size, tuple(filters), min_size)

    def __str__(self) -> str:
        parts = [f"rank<={self.max_rank}", f"size<={self.max_size}"]
        if self.min_size > 1:
            parts.append(f"size>={self.min_size}")
        return ",".join(parts + list(self.filters))


def catalog(scope: CatalogScope | str = CatalogScope()) -> list[BinaryMatroid]:
    """Catalog representatives ordered by (size, rank, orbit index)."""
    if isinstance(scope, str):
        scope = CatalogScope.parse(scope)
    out = []
    for size in range(scope.min_size, scope.max_size + 1):
        for rank in range(1, scope.max_rank + 1):
            out.extend(enumerate_binary_matroids(rank, size, scope.filters))
    return out
