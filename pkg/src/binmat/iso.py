"""Isomorphism testing for binary matroids, with replayable witnesses.

A binary matroid is determined by the coordinate vectors of its elements
relative to any basis.  The search fixes an ordered basis of the first
matroid and backtracks over images of the basis elements in the second,
checking after every step that the elements spanned so far carry the same
multiset of (invariant, coordinate) pairs on both sides.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Sequence

from .gf2 import BitMatrix, inverse, rank_of_rows
from .matroid import BinaryMatroid


@dataclass(frozen=True)
class IsoWitness:
    """``column_map`` sends labels of M1 to labels of M2.

    ``basis_change`` is the invertible T with T * rep(M1) = rep(M2) once the
    columns of rep(M1) are put in the order of their images.
    """

    column_map: dict[str, str]
    basis_change: BitMatrix

    def verify(self, m1: BinaryMatroid, m2: BinaryMatroid) -> bool:
        if sorted(self.column_map) != sorted(m1.elements):
            return False
        if sorted(self.column_map.values()) != sorted(m2.elements):
            return False
        if m1.rank != m2.rank or self.basis_change.rows != m1.rank or self.basis_change.cols != m1.rank:
            return False
        if rank_of_rows(self.basis_change.data) != m1.rank:
            return False
        x = _permuted_rep(m1, m2, self.column_map)
        return self.basis_change.matmul(x) == m2.rep

    def inverse(self) -> IsoWitness:
        return IsoWitness({v: k for k, v in self.column_map.items()}, inverse(self.basis_change))


def _permuted_rep(m1: BinaryMatroid, m2: BinaryMatroid, column_map: dict[str, str]) -> BitMatrix:
    preimage = {v: k for k, v in column_map.items()}
    return m1.rep.select_columns([m1.index(preimage[label]) for label in m2.elements])


def _build_witness(m1: BinaryMatroid, m2: BinaryMatroid, column_map: dict[str, str]) -> IsoWitness:
    r = m1.rank
    if r == 0:
        return IsoWitness(column_map, BitMatrix.zeros(0, 0))
    x = _permuted_rep(m1, m2, column_map)
    chosen: list[int] = []
    acc: list[int] = []
    cols = x.columns()
    for j, c in enumerate(cols):
        if rank_of_rows(acc + [c]) > len(acc):
            acc.append(c)
            chosen.append(j)
            if len(chosen) == r:
                break
    t = m2.rep.select_columns(chosen).matmul(inverse(x.select_columns(chosen)))
    return IsoWitness(column_map, t)


# -- invariants ------------------------------------------------------------------

def _small_circuit_counts(cols: Sequence[int]) -> tuple[list[int], list[int], list[int], list[int]]:
    """Per-element counts of loops, parallel mates, triangles and 4-circuits."""
    n = len(cols)
    loops = [1 if c == 0 else 0 for c in cols]
    by_col: dict[int, list[int]] = defaultdict(list)
    for i, c in enumerate(cols):
        by_col[c].append(i)
    parallel = [len(by_col[c]) - 1 if c else 0 for c in cols]
    tri = [0] * n
    four = [0] * n
    pair_sums: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for i, j in combinations(range(n), 2):
        ci, cj = cols[i], cols[j]
        if ci == 0 or cj == 0 or ci == cj:
            continue
        s = ci ^ cj
        for g in by_col.get(s, ()):
            if g > j:
                tri[i] += 1
                tri[j] += 1
                tri[g] += 1
        pair_sums[s].append((i, j))
    for pairs in pair_sums.values():
        for (a, b), (c, d) in combinations(pairs, 2):
            if len({cols[a], cols[b], cols[c], cols[d]}) == 4:
                for e in (a, b, c, d):
                    four[e] += 1
    # each 4-circuit is seen once per each of its three pairings
    return loops, parallel, tri, [f // 3 for f in four]


def element_invariants(m: BinaryMatroid, colors: Sequence[Hashable] | None = None) -> list[tuple]:
    """Isomorphism-invariant label for each element.

    Combines the element's color, small-circuit and small-cocircuit counts,
    then refines once with the sorted labels of its triangle and triad mates.
    """
    n = len(m.elements)
    colors = tuple(colors) if colors is not None else (0,) * n
    cache = m.__dict__.setdefault("_invariants", {})
    if colors not in cache:
        cache[colors] = _element_invariants(m, colors)
    return cache[colors]


def _element_invariants(m: BinaryMatroid, colors: tuple) -> list[tuple]:
    n = len(m.elements)
    cols = m.columns
    dcols = m.dual().columns
    lp, par, tri, four = _small_circuit_counts(cols)
    clp, cpar, ctri, cfour = _small_circuit_counts(dcols)
    base = [
        (colors[i], lp[i], par[i], tri[i], four[i], clp[i], cpar[i], ctri[i], cfour[i]) for i in range(n)
    ]
    ranked = {s: k for k, s in enumerate(sorted(set(base)))}
    base_id = [ranked[s] for s in base]
    mates: list[list[int]] = [[] for _ in range(n)]
    comates: list[list[int]] = [[] for _ in range(n)]
    for vecs, out in ((cols, mates), (dcols, comates)):
        idx: dict[int, list[int]] = defaultdict(list)
        for i, c in enumerate(vecs):
            idx[c].append(i)
        for i, j in combinations(range(n), 2):
            ci, cj = vecs[i], vecs[j]
            if ci == 0 or cj == 0 or ci == cj:
                continue
            for g in idx.get(ci ^ cj, ()):
                if g > j:
                    a, b, c = base_id[i], base_id[j], base_id[g]
                    out[i].append(tuple(sorted((b, c))))
                    out[j].append(tuple(sorted((a, c))))
                    out[g].append(tuple(sorted((a, b))))
    return [(base[i], tuple(sorted(mates[i])), tuple(sorted(comates[i]))) for i in range(n)]


def invariant_key(m: BinaryMatroid, colors: Sequence[Hashable] | None = None) -> tuple:
    """A hashable isomorphism invariant of the whole (colored) matroid."""
    inv = element_invariants(m, colors)
    return (len(m.elements), m.rank, tuple(sorted(inv)))


# -- search ----------------------------------------------------------------------

def _coordinates(cols: Sequence[int], basis_cols: Sequence[int]) -> list[int | None]:
    """Coordinates of each column relative to ``basis_cols`` (None if outside the span)."""
    reduced: list[tuple[int, int]] = []
    for k, b in enumerate(basis_cols):
        combo = 1 << k
        for v, c in reduced:
            if b & (v & -v):
                b ^= v
                combo ^= c
        low = b & -b
        reduced = [(v ^ b, c ^ combo) if v & low else (v, c) for v, c in reduced]
        reduced.append((b, combo))
    out: list[int | None] = []
    for x in cols:
        combo = 0
        for v, c in reduced:
            if x & (v & -v):
                x ^= v
                combo ^= c
        out.append(combo if x == 0 else None)
    return out


def _choose_basis(cols: Sequence[int], inv: Sequence[tuple], freq: Counter) -> list[int]:
    n = len(cols)
    chosen: list[int] = []
    while True:
        in_span = _coordinates(cols, [cols[b] for b in chosen])
        best = None
        for e in range(n):
            if in_span[e] is not None:
                continue
            trial = _coordinates(cols, [cols[b] for b in chosen] + [cols[e]])
            spanned = sum(t is not None for t in trial)
            key = (-spanned, freq[inv[e]], e)
            if best is None or key < best[0]:
                best = (key, e)
        if best is None:
            return chosen
        chosen.append(best[1])


def find_isomorphism(
    m1: BinaryMatroid,
    m2: BinaryMatroid,
    colors1: Sequence[Hashable] | None = None,
    colors2: Sequence[Hashable] | None = None,
) -> dict[str, str] | None:
    """A color-preserving isomorphism as a label map, or None."""
    n = len(m1.elements)
    if n != len(m2.elements) or m1.rank != m2.rank:
        return None
    if m1 == m2 and list(colors1 or [0] * n) == list(colors2 or [0] * n):
        return {e: e for e in m1.elements}
    inv1 = element_invariants(m1, colors1)
    inv2 = element_invariants(m2, colors2)
    if Counter(inv1) != Counter(inv2):
        return None
    cols1, cols2 = m1.columns, m2.columns
    freq = Counter(inv1)
    basis1 = _choose_basis(cols1, inv1, freq)
    r = len(basis1)
    coords1 = _coordinates(cols1, [cols1[b] for b in basis1])
    # elements of M1 spanned by the first k basis elements, tagged with invariants
    targets = []
    for k in range(r + 1):
        lim = 1 << k
        targets.append(Counter((inv1[e], coords1[e]) for e in range(n) if coords1[e] < lim))
    candidates = [[f for f in range(n) if inv2[f] == inv1[b]] for b in basis1]
    image: list[int] = []

    def extend(k: int) -> list[int | None] | None:
        if k == r:
            return _coordinates(cols2, [cols2[f] for f in image])
        for f in candidates[k]:
            if f in image:
                continue
            trial = _coordinates(cols2, [cols2[g] for g in image] + [cols2[f]])
            if trial[f] is None or trial[f] != 1 << k:
                continue  # f already spanned by the partial image
            got = Counter((inv2[e], trial[e]) for e in range(n) if trial[e] is not None)
            if got != targets[k + 1]:
                continue
            image.append(f)
            done = extend(k + 1)
            if done is not None:
                return done
            image.pop()
        return None

    coords2 = extend(0)
    if coords2 is None:
        return None
    groups: dict[tuple, list[int]] = defaultdict(list)
    for f in range(n):
        groups[(inv2[f], coords2[f])].append(f)
    mapping = {}
    for e in range(n):
        f = groups[(inv1[e], coords1[e])].pop(0)
        mapping[m1.elements[e]] = m2.elements[f]
    return mapping


def are_isomorphic(
    m1: BinaryMatroid,
    m2: BinaryMatroid,
    colors1: Sequence[Hashable] | None = None,
    colors2: Sequence[Hashable] | None = None,
) -> IsoWitness | None:
    mapping = find_isomorphism(m1, m2, colors1, colors2)
    if mapping is None:
        return None
    return _build_witness(m1, m2, mapping)
