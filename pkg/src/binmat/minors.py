"""Minor testing with replayable certificates."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations, product

from .iso import find_isomorphism, invariant_key
from .matroid import BinaryMatroid, ElementSet, popcount

DEFAULT_NODE_BUDGET = 10**7
DEFAULT_TIME_BUDGET = 300.0


class ResourceLimitExceeded(RuntimeError):
    """A search ran out of nodes or wall-clock time before deciding."""

    def __init__(self, what: str, limit):
        super().__init__(f"{what} budget of {limit} exhausted")
        self.what = what
        self.limit = limit


@dataclass
class Budget:
    """Shared node and wall-clock allowance for a family of searches."""

    nodes: int | None = DEFAULT_NODE_BUDGET
    seconds: float | None = DEFAULT_TIME_BUDGET
    used: int = 0
    started: float = field(default_factory=time.monotonic)

    def spend(self, k: int = 1):
        self.used += k
        if self.nodes is not None and self.used > self.nodes:
            raise ResourceLimitExceeded("node", self.nodes)
        if self.seconds is not None and time.monotonic() - self.started > self.seconds:
            raise ResourceLimitExceeded("time", self.seconds)


@dataclass(frozen=True)
class MinorCertificate:
    delete_set: ElementSet
    contract_set: ElementSet
    iso_map: dict[str, str]

    def minor_of(self, m: BinaryMatroid) -> BinaryMatroid:
        return m.minor(self.delete_set, self.contract_set)

    def verify(self, m: BinaryMatroid, n: BinaryMatroid) -> bool:
        """Replay the deletions and contractions and compare with ``n`` exactly."""
        if self.delete_set & self.contract_set:
            return False
        if len(m) - popcount(self.delete_set) - popcount(self.contract_set) != len(n):
            return False
        sub = self.minor_of(m)
        if sorted(self.iso_map) != sorted(sub.elements) or sorted(self.iso_map.values()) != sorted(n.elements):
            return False
        return same_labeled_matroid(sub.relabeled(self.iso_map), n)

    def describe(self, m: BinaryMatroid) -> dict:
        return {
            "delete": m.labels(self.delete_set),
            "contract": m.labels(self.contract_set),
            "map": dict(self.iso_map),
        }


def same_labeled_matroid(a: BinaryMatroid, b: BinaryMatroid) -> bool:
    """Equality of labeled matroids, ignoring the order of the columns."""
    if sorted(a.elements) != sorted(b.elements) or a.rank != b.rank:
        return False
    reordered = BinaryMatroid(b.elements, a.rep.select_columns([a.index(e) for e in b.elements]))
    return reordered == b


@dataclass
class _Node:
    matroid: BinaryMatroid
    delete: ElementSet  # masks over the original matroid
    contract: ElementSet


def has_minor(
    m: BinaryMatroid,
    n: BinaryMatroid,
    fix=0,
    node_budget: int | None = DEFAULT_NODE_BUDGET,
    time_budget: float | None = DEFAULT_TIME_BUDGET,
    budget: Budget | None = None,
) -> MinorCertificate | None:
    """Certificate that ``m`` has an ``n``-minor keeping every element of ``fix``.

    Removes one element per level, deletions before contractions and in
    label order; minors at a level are kept only up to isomorphism (with the
    ``fix`` elements colored), which preserves which N-minors remain
    reachable.  Deleting a coloop or contracting a loop is skipped: the
    other operation gives the same minor.  When N is simple (cosimple),
    loops and parallel elements (coloops and series elements) are removed
    before anything else is branched on.
    """
    fix = m.mask(fix)
    if budget is None:
        budget = Budget(node_budget, time_budget)
    n_contract = m.rank - n.rank
    n_delete = (len(m) - m.rank) - (len(n) - n.rank)
    if n_contract < 0 or n_delete < 0:
        return None
    target = invariant_key(n)
    index = {e: i for i, e in enumerate(m.elements)}

    def colors(x: BinaryMatroid) -> list[int]:
        return [(fix >> index[e]) & 1 for e in x.elements]

    n_cols, n_dual_cols = n.columns, n.dual().columns
    simple = 0 not in n_cols and len(set(n_cols)) == len(n_cols)
    cosimple = 0 not in n_dual_cols and len(set(n_dual_cols)) == len(n_dual_cols)

    level = [_Node(m, 0, 0)]
    for _ in range(n_contract + n_delete):
        seen: dict[tuple, list[_Node]] = {}
        nxt: list[_Node] = []
        for node in level:
            cur = node.matroid
            dels_left = (len(cur) - cur.rank) - (len(n) - n.rank)
            cons_left = cur.rank - n.rank
            forced = _forced_move(cur, [(fix >> index[e]) & 1 for e in cur.elements], simple, cosimple)
            if forced == "dead":
                continue
            for i, label in enumerate(cur.elements):
                orig = 1 << index[label]
                if orig & fix:
                    continue
                loop = cur.columns[i] == 0
                coloop = cur._rank(cur.ground ^ (1 << i)) < cur.rank
                options = []
                if dels_left > 0 and not coloop:
                    options.append((1 << i, 0, orig, 0))
                if cons_left > 0 and not loop:
                    options.append((0, 1 << i, 0, orig))
                if forced is not None:
                    options = [o for o in options if (o[0] | o[1]) == 1 << forced[0] and bool(o[1]) == forced[1]]
                for d, c, od, oc in options:
                    budget.spend()
                    child = cur.minor(d, c)
                    cc = colors(child)
                    key = invariant_key(child, cc)
                    bucket = seen.setdefault(key, [])
                    if any(find_isomorphism(child, other.matroid, cc, colors(other.matroid)) for other in bucket):
                        continue
                    new = _Node(child, node.delete | od, node.contract | oc)
                    bucket.append(new)
                    nxt.append(new)
        level = nxt
        if not level:
            return None
    for node in level:
        if node.matroid.elements == n.elements and node.matroid == n:
            return MinorCertificate(node.delete, node.contract, {e: e for e in n.elements})
        if invariant_key(node.matroid) != target:
            continue
        budget.spend()
        mapping = find_isomorphism(node.matroid, n)
        if mapping is not None:
            return MinorCertificate(node.delete, node.contract, mapping)
    return None


def _parallel_move(cols: list[int], fixed: list[int]):
    """(index, "dead" or None) for a loop or parallel element that must go."""
    for i, c in enumerate(cols):
        if c == 0:
            return "dead" if fixed[i] else i
    first: dict[int, int] = {}
    for i, c in enumerate(cols):
        if c not in first:
            first[c] = i
            continue
        j = first[c]
        if not fixed[i]:
            return i
        if not fixed[j]:
            return j
        return "dead"
    return None


def _forced_move(cur: BinaryMatroid, fixed: list[int], simple: bool, cosimple: bool):
    """A removal every N-minor (keeping the fixed elements) can be assumed to use.

    If N is simple, a loop must be deleted, and of two parallel elements one
    can always be deleted (swapping them is an automorphism).  Dually for
    coloops and series pairs when N is cosimple.  Returns (index,
    is_contraction), "dead" when no N-minor can keep the fixed elements, or
    None when nothing is forced.
    """
    if simple:
        hit = _parallel_move(cur.columns, fixed)
        if hit == "dead":
            return hit
        if hit is not None:
            return hit, False
    if cosimple:
        hit = _parallel_move(cur.dual().columns, fixed)
        if hit == "dead":
            return hit
        if hit is not None:
            return hit, True
    return None


def removal_masks(m: BinaryMatroid, k: int):
    """All (delete, contract) pairs removing exactly ``k`` elements."""
    for chosen in combinations(range(len(m)), k):
        for ops in product((0, 1), repeat=k):
            d = c = 0
            for e, op in zip(chosen, ops):
                if op:
                    c |= 1 << e
                else:
                    d |= 1 << e
            yield d, c

