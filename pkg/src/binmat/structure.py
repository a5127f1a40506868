"""Triangles, triads, fans, quads, low-order separations and connectivity classes."""

from __future__ import annotations

import sys
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import permutations

from .matroid import BinaryMatroid, ElementSet, bits, popcount


class ConnectivityClass(str, Enum):
    NOT_3_CONNECTED = "not-3-connected"
    THREE_CONNECTED = "3-connected-only"
    FOUR_FOUR = "(4,4)-connected-only"
    INTERNALLY_4 = "internally-4-connected"
    FOUR = "4-connected"

    def __str__(self) -> str:
        return self.value

    @property
    def is_3_connected(self) -> bool:
        return self is not ConnectivityClass.NOT_3_CONNECTED

    @property
    def is_44_connected(self) -> bool:
        return self in (ConnectivityClass.FOUR_FOUR, ConnectivityClass.INTERNALLY_4, ConnectivityClass.FOUR)

    @property
    def is_internally_4_connected(self) -> bool:
        return self in (ConnectivityClass.INTERNALLY_4, ConnectivityClass.FOUR)


@dataclass(frozen=True)
class Separation:
    side_x: ElementSet
    side_y: ElementSet
    lambda_value: int

    def verify(self, m: BinaryMatroid) -> bool:
        return (
            self.side_x | self.side_y == m.ground
            and not self.side_x & self.side_y
            and m.connectivity(self.side_x) == self.lambda_value
        )

    def sizes(self) -> tuple[int, int]:
        return popcount(self.side_x), popcount(self.side_y)


@dataclass(frozen=True)
class FanOrdering:
    elements: tuple[str, ...]
    kind: str  # "4-fan", "5-fan", "5-cofan" or "generic"
    first_is_triangle: bool

    def __len__(self) -> int:
        return len(self.elements)

    def triples(self) -> list[tuple[str, str, str]]:
        e = self.elements
        return [tuple(e[i:i + 3]) for i in range(len(e) - 2)]

    def verify(self, m: BinaryMatroid) -> bool:
        """Recheck the alternating triangle/triad pattern against ``m``."""
        if len(self.elements) < 3 or len(set(self.elements)) != len(self.elements):
            return False
        want_triangle = self.first_is_triangle
        for triple in self.triples():
            s = m.mask(triple)
            ok = m.is_circuit(s) if want_triangle else m.is_cocircuit(s)
            if not ok:
                return False
            want_triangle = not want_triangle
        return self.kind == _fan_kind(len(self.elements), self.first_is_triangle)


@dataclass(frozen=True)
class Quad:
    elements: ElementSet


def triangles(m: BinaryMatroid) -> list[ElementSet]:
    return [c for c in m.circuits(3) if popcount(c) == 3]


def triads(m: BinaryMatroid) -> list[ElementSet]:
    return triangles(m.dual())


def quads(m: BinaryMatroid) -> list[Quad]:
    fours = {c for c in m.circuits(4) if popcount(c) == 4}
    cofours = {c for c in m.cocircuits(4) if popcount(c) == 4}
    return [Quad(q) for q in sorted(fours & cofours)]


def _fan_kind(length: int, first_is_triangle: bool) -> str:
    if length == 4 and first_is_triangle:
        return "4-fan"
    if length == 5:
        return "5-fan" if first_is_triangle else "5-cofan"
    return "generic"


def fans(m: BinaryMatroid, length: int) -> list[FanOrdering]:
    """All fan orderings with exactly ``length`` elements.

    Orderings with the same sequence of triangle/triad triples are treated
    as one fan; for odd lengths an ordering and its reverse are also merged.
    Each class is reported by its lexicographically least ordering (by
    element position).
    """
    if length < 3:
        raise ValueError("fans have at least three elements")
    tri = set(triangles(m))
    tad = set(triads(m))
    n = len(m.elements)
    best: dict[tuple, tuple[int, ...]] = {}

    def extend(seq: list[int], last_triangle: bool, first_triangle: bool):
        if len(seq) == length:
            key_seq = tuple(
                (1 << seq[i]) | (1 << seq[i + 1]) | (1 << seq[i + 2]) for i in range(length - 2)
            )
            if length % 2:
                key_seq = min(key_seq, key_seq[::-1])
                cand = min(tuple(seq), tuple(reversed(seq)))
            else:
                cand = tuple(seq)
            key = (first_triangle, key_seq)
            if key not in best or cand < best[key]:
                best[key] = cand
            return
        pool = tad if last_triangle else tri
        a, b = seq[-2], seq[-1]
        for d in range(n):
            if d in seq:
                continue
            if (1 << a) | (1 << b) | (1 << d) in pool:
                seq.append(d)
                extend(seq, not last_triangle, first_triangle)
                seq.pop()

    for triple_set, is_tri in [(t, True) for t in sorted(tri)] + [(t, False) for t in sorted(tad)]:
        for order in permutations(bits(triple_set)):
            extend(list(order), is_tri, is_tri)

    out = [
        FanOrdering(tuple(m.elements[i] for i in seq), _fan_kind(length, first), first)
        for (first, _), seq in best.items()
    ]
    out.sort(key=lambda f: (f.kind, [m.index(e) for e in f.elements]))
    return out


# -- separations -----------------------------------------------------------------

@dataclass(frozen=True)
class SeparationProfile:
    """Least connectivity value by smaller-side size, capped at ``cap``.

    ``best[s]`` is the least lambda over bipartitions whose smaller side has
    exactly ``s`` elements, or ``cap`` if every such lambda is >= cap;
    ``witness[s]`` is a side attaining it (0 when capped).
    """

    size: int
    best: tuple[int, ...]
    witness: tuple[int, ...]
    cap: int

    def find(self, max_lambda: int, min_side: int) -> tuple[int, int] | None:
        """A (side, lambda) with lambda <= max_lambda and both sides >= min_side."""
        for s in range(max(min_side, 0), len(self.best)):
            if self.best[s] <= max_lambda:
                return self.witness[s], self.best[s]
        return None


def _insert(basis: list[int], x: int) -> list[int] | None:
    # basis is fully reduced on its lowest-bit pivots
    for b in basis:
        if x & (b & -b):
            x ^= b
    if not x:
        return None
    low = x & -x
    return [b ^ x if b & low else b for b in basis] + [x]


def separation_profile(m: BinaryMatroid, cap: int = 3) -> SeparationProfile:
    """Exact profile of all bipartitions with lambda < cap.

    Depth-first assignment of elements to the two sides; a branch is cut
    once r(X') + r(Y') - r(M) >= cap for the partial sides, which bounds
    lambda of every completion from below.
    """
    n = len(m.elements)
    half = n // 2
    best = [cap] * (half + 1)
    witness = [0] * (half + 1)
    if n == 0:
        return SeparationProfile(0, tuple(best), tuple(witness), cap)
    cols = m.columns
    r = m.rank
    limit = r + cap

    def dfs(e: int, side: int, bx: list[int], by: list[int]):
        if e == n:
            lam = len(bx) + len(by) - r
            k = popcount(side)
            s = min(k, n - k)
            if lam < best[s]:
                best[s] = lam
                witness[s] = side
            return
        c = cols[e]
        nbx = _insert(bx, c) if c else None
        if nbx is None:
            dfs(e + 1, side | (1 << e), bx, by)
        elif len(nbx) + len(by) < limit:
            dfs(e + 1, side | (1 << e), nbx, by)
        nby = _insert(by, c) if c else None
        if nby is None:
            dfs(e + 1, side, bx, by)
        elif len(bx) + len(nby) < limit:
            dfs(e + 1, side, bx, nby)

    first = [cols[0]] if cols[0] else []
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * n + 100))
    try:
        if len(first) - r < cap:
            dfs(1, 0, [], first)
    finally:
        sys.setrecursionlimit(old)
    return SeparationProfile(n, tuple(best), tuple(witness), cap)


@lru_cache(maxsize=4096)
def profile(m: BinaryMatroid) -> SeparationProfile:
    """Cached :func:`separation_profile` with the default cap of 3."""
    return separation_profile(m)


def is_3_connected(m: BinaryMatroid) -> bool:
    p = profile(m)
    return p.find(0, 1) is None and p.find(1, 2) is None


def _separation(m: BinaryMatroid, side: int) -> Separation:
    return Separation(side, m.ground ^ side, m.connectivity(side))


def _grow_violator(m: BinaryMatroid, k: int) -> Separation | None:
    """Greedy search from small 3-separating seeds."""
    n = len(m.elements)
    seeds = triangles(m) + triads(m) + [q.elements for q in quads(m)]
    seeds += [c for c in m.circuits(4) if popcount(c) == 4] + [c for c in m.cocircuits(4) if popcount(c) == 4]
    seen = set()
    for seed in seeds:
        if seed in seen or m.connectivity(seed) > 2:
            continue
        seen.add(seed)
        x = seed
        while True:
            if popcount(x) > k and n - popcount(x) > k:
                return _separation(m, x)
            for e in range(n):
                bit = 1 << e
                if not x & bit and n - popcount(x) - 1 > k and m.connectivity(x | bit) <= 2:
                    x |= bit
                    break
            else:
                break
    return None


def find_violator(m: BinaryMatroid, k: int) -> Separation | None:
    """A 3-separation (X, Y) with |X|, |Y| > k, or None.

    Seeds built from triangles, triads and 4-element circuits/cocircuits are
    grown greedily first; absence is always decided by the exhaustive scan.
    """
    found = _grow_violator(m, k)
    if found is not None:
        return found
    hit = profile(m).find(2, k + 1)
    if hit is None:
        return None
    return _separation(m, hit[0])


def connectivity_class(m: BinaryMatroid) -> ConnectivityClass:
    p = profile(m)
    if p.find(0, 1) is not None or p.find(1, 2) is not None:
        return ConnectivityClass.NOT_3_CONNECTED
    if p.find(2, 5) is not None:
        return ConnectivityClass.THREE_CONNECTED
    if p.find(2, 4) is not None:
        return ConnectivityClass.FOUR_FOUR
    if p.find(2, 3) is not None:
        return ConnectivityClass.INTERNALLY_4
    return ConnectivityClass.FOUR


def is_internally_4_connected(m: BinaryMatroid) -> bool:
    return connectivity_class(m).is_internally_4_connected


def is_44_connected(m: BinaryMatroid) -> bool:
    return connectivity_class(m).is_44_connected
