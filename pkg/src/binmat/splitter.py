"""The splitter step for internally 4-connected binary matroids.

Given internally 4-connected M and N where N is a proper minor of M and no
element of a triangle can be deleted (nor an element of a triad contracted)
while keeping an N-minor, :func:`splitter_step` looks for an internally
4-connected minor M' of M with an N-minor and 1 <= |E(M)| - |E(M')| <= 2,
and returns a certificate that can be replayed without trusting the search.

Search order: find an element e with M\\e or M/e (4,4)-connected with an
N-minor, try the removals suggested by the fans and quads of that minor,
then fall back to every single and every double removal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator

from .families import ORDERED_FAMILIES, construct
from .iso import IsoWitness, are_isomorphic
from .matroid import BinaryMatroid, ElementSet, bits
from .minors import (
    DEFAULT_NODE_BUDGET,
    DEFAULT_TIME_BUDGET,
    Budget,
    MinorCertificate,
    has_minor,
)
from .structure import ConnectivityClass, connectivity_class, fans, quads, triads, triangles

DELETE = "delete"
CONTRACT = "contract"
MIN_N_SIZE = 7


class HypothesisError(ValueError):
    """The pair (M, N) does not satisfy the splitter hypotheses."""

    def __init__(self, report: HypothesisReport):
        super().__init__("hypotheses fail: " + "; ".join(report.failures()))
        self.report = report


class NoCertificateFound(RuntimeError):
    """Every removal of one or two elements was tried and none works.

    For a pair that passes the hypotheses this would contradict the
    theorem, so the full transcript is attached.
    """

    def __init__(self, transcript: list[str]):
        super().__init__(f"no splitter certificate after {len(transcript)} removals")
        self.transcript = transcript


# -- hypotheses ------------------------------------------------------------------

@dataclass
class HypothesisReport:
    proper_minor: bool
    minor_certificate: MinorCertificate | None
    n_size_ok: bool
    m_i4c: bool
    n_i4c: bool
    # (triangle or triad, element, violated) with violated meaning that
    # removing the element still leaves an N-minor
    triangle_condition: list[tuple[ElementSet, str, bool]] = field(default_factory=list)
    triad_condition: list[tuple[ElementSet, str, bool]] = field(default_factory=list)

    def ok(self, strict: bool = True) -> bool:
        return not self.failures(strict)

    def failures(self, strict: bool = True) -> list[str]:
        out = []
        if not self.proper_minor:
            out.append("N is not a proper minor of M")
        if strict and not self.n_size_ok:
            out.append(f"|E(N)| < {MIN_N_SIZE}")
        if not self.m_i4c:
            out.append("M is not internally 4-connected")
        if not self.n_i4c:
            out.append("N is not internally 4-connected")
        bad = sorted({e for _, e, v in self.triangle_condition if v})
        if bad:
            out.append("deleting triangle elements keeps an N-minor: " + ",".join(bad))
        bad = sorted({e for _, e, v in self.triad_condition if v})
        if bad:
            out.append("contracting triad elements keeps an N-minor: " + ",".join(bad))
        return out


def check_hypotheses(
    m: BinaryMatroid,
    n: BinaryMatroid,
    node_budget: int | None = DEFAULT_NODE_BUDGET,
    time_budget: float | None = DEFAULT_TIME_BUDGET,
    budget: Budget | None = None,
) -> HypothesisReport:
    """Evaluate every hypothesis of the splitter theorem for (M, N)."""
    if budget is None:
        budget = Budget(node_budget, time_budget)
    cert = has_minor(m, n, budget=budget) if len(n) < len(m) else None
    report = HypothesisReport(
        proper_minor=cert is not None,
        minor_certificate=cert,
        n_size_ok=len(n) >= MIN_N_SIZE,
        m_i4c=connectivity_class(m).is_internally_4_connected,
        n_i4c=connectivity_class(n).is_internally_4_connected,
    )
    keeps: dict[tuple[int, str], bool] = {}

    def keeps_minor(i: int, op: str) -> bool:
        if (i, op) not in keeps:
            sub = m.minor(1 << i, 0) if op == DELETE else m.minor(0, 1 << i)
            keeps[i, op] = has_minor(sub, n, budget=budget) is not None
        return keeps[i, op]

    for t in triangles(m):
        for i in bits(t):
            report.triangle_condition.append((t, m.elements[i], keeps_minor(i, DELETE)))
    for t in triads(m):
        for i in bits(t):
            report.triad_condition.append((t, m.elements[i], keeps_minor(i, CONTRACT)))
    return report


# -- dichotomy -------------------------------------------------------------------

@dataclass(frozen=True)
class DichotomyResult:
    kind: str  # "candidate", "family" or "neither"
    element: str | None = None
    side: str | None = None
    minor_certificate: MinorCertificate | None = None
    family: str | None = None
    n: int | None = None
    dualized: bool = False
    witness: IsoWitness | None = None
    explanation: str = ""

    def verify(self, m: BinaryMatroid, n: BinaryMatroid | None = None) -> bool:
        """Recheck the claim from scratch."""
        if self.kind == "candidate":
            sub = _remove(m, self.element, self.side)
            if not connectivity_class(sub).is_44_connected:
                return False
            return n is not None and self.minor_certificate is not None and self.minor_certificate.verify(sub, n)
        if self.kind == "family":
            target = m.dual() if self.dualized else m
            return self.witness is not None and self.witness.verify(target, construct(self.family, self.n))
        return self.kind == "neither"


def _remove(m: BinaryMatroid, label: str, op: str) -> BinaryMatroid:
    bit = 1 << m.index(label)
    return m.minor(bit, 0) if op == DELETE else m.minor(0, bit)


def _family_size_n(family: str, size: int) -> int | None:
    extra = 1 if family in ("biwheel_plus", "mobius_delta") else 0
    if (size - extra) % 3:
        return None
    n = (size - extra) // 3
    return n if n >= 4 else None


def zhou_dichotomy_classify(m: BinaryMatroid) -> DichotomyResult:
    """Is M or M* isomorphic to a biwheel, biwheel-plus or triangular Moebius matroid?"""
    for dualized, target in ((False, m), (True, m.dual())):
        for family in ORDERED_FAMILIES:
            k = _family_size_n(family, len(target))
            if k is None or target.rank != k + 1:
                continue
            w = are_isomorphic(target, construct(family, k))
            if w is not None:
                return DichotomyResult("family", family=family, n=k, dualized=dualized, witness=w)
    return DichotomyResult("neither", explanation="no size-compatible family member is isomorphic to M or M*")


def candidate_elements(m: BinaryMatroid, n: BinaryMatroid, budget: Budget) -> Iterator[DichotomyResult]:
    """Every (e, side) with M\\e or M/e (4,4)-connected with an N-minor, in label order."""
    for label in m.elements:
        for op in (DELETE, CONTRACT):
            budget.spend()
            sub = _remove(m, label, op)
            if len(sub) < len(n) or not connectivity_class(sub).is_44_connected:
                continue
            cert = has_minor(sub, n, budget=budget)
            if cert is not None:
                yield DichotomyResult("candidate", element=label, side=op, minor_certificate=cert)


def find_candidate_element(
    m: BinaryMatroid,
    n: BinaryMatroid,
    node_budget: int | None = DEFAULT_NODE_BUDGET,
    time_budget: float | None = DEFAULT_TIME_BUDGET,
    strict: bool = True,
) -> DichotomyResult:
    budget = Budget(node_budget, time_budget)
    if strict:
        report = check_hypotheses(m, n, budget=budget)
        if not report.ok():
            raise HypothesisError(report)
    for found in candidate_elements(m, n, budget):
        return found
    result = zhou_dichotomy_classify(m)
    if result.kind == "family":
        return result
    return DichotomyResult("neither", explanation="no single removal is (4,4)-connected with an N-minor, "
                           "and M is not in any of the four families")


# -- certificates ----------------------------------------------------------------

@dataclass(frozen=True)
class SplitterCertificate:
    removals: tuple[tuple[str, str], ...]
    result: BinaryMatroid
    connectivity: ConnectivityClass
    minor_proof: MinorCertificate

    def masks(self, m: BinaryMatroid) -> tuple[ElementSet, ElementSet]:
        d = c = 0
        for label, op in self.removals:
            if op == DELETE:
                d |= 1 << m.index(label)
            else:
                c |= 1 << m.index(label)
        return d, c

    def verify(self, m: BinaryMatroid, n: BinaryMatroid) -> bool:
        """Replay the removals, recheck internal 4-connectivity and the N-minor."""
        if not 1 <= len(self.removals) <= 2:
            return False
        labels = [label for label, _ in self.removals]
        if len(set(labels)) != len(labels) or any(op not in (DELETE, CONTRACT) for _, op in self.removals):
            return False
        d, c = self.masks(m)
        replay = m.minor(d, c)
        if replay.elements != self.result.elements or replay != self.result:
            return False
        if not connectivity_class(replay).is_internally_4_connected:
            return False
        return self.minor_proof.verify(replay, n)

    def describe(self) -> list[str]:
        return [f"{op} {label}" for label, op in self.removals]


def _roadmap(m: BinaryMatroid, n: BinaryMatroid, budget: Budget) -> Iterator[tuple[tuple[str, str], ...]]:
    """Removals suggested by the structure of each candidate minor."""
    for cand in candidate_elements(m, n, budget):
        e, op = cand.element, cand.side
        other = CONTRACT if op == DELETE else DELETE
        sub = _remove(m, e, op)
        yield ((e, op),)
        # fans of M\e, or of (M/e)* read in M/e: contract (resp. delete) the end
        first_triangle = op == DELETE
        for fan in fans(sub, 4):
            if fan.first_is_triangle != first_triangle:
                continue
            d = fan.elements[-1]
            yield ((e, op), (d, other))
            yield ((d, other),)
        # quad elements: contract in M\e (delete in M/e); deleting them is useless
        for q in quads(sub):
            for x in sub.labels(q.elements):
                yield ((e, op), (x, other))
                yield ((x, other),)


def all_removals(m: BinaryMatroid) -> Iterator[tuple[tuple[str, str], ...]]:
    """Single removals, then double; deletions before contractions; label order."""
    for op in (DELETE, CONTRACT):
        for label in m.elements:
            yield ((label, op),)
    for ops in product((DELETE, CONTRACT), repeat=2):
        for a, b in combinations(m.elements, 2):
            yield ((a, ops[0]), (b, ops[1]))


def _try(m: BinaryMatroid, n: BinaryMatroid, removals, budget: Budget, transcript: list[str]):
    d = c = 0
    for label, op in removals:
        if op == DELETE:
            d |= 1 << m.index(label)
        else:
            c |= 1 << m.index(label)
    step = ", ".join(f"{op} {label}" for label, op in removals)
    budget.spend()
    sub = m.minor(d, c)
    if len(sub) < len(n):
        transcript.append(f"{step}: too small")
        return None
    cls = connectivity_class(sub)
    if not cls.is_internally_4_connected:
        transcript.append(f"{step}: class={cls}")
        return None
    cert = has_minor(sub, n, budget=budget)
    transcript.append(f"{step}: class={cls} n_minor={'yes' if cert else 'no'}")
    if cert is None:
        return None
    return SplitterCertificate(tuple(removals), sub, cls, cert)


def _canonical(removals) -> tuple:
    return tuple(sorted(removals))


def splitter_step(
    m: BinaryMatroid,
    n: BinaryMatroid,
    node_budget: int | None = DEFAULT_NODE_BUDGET,
    time_budget: float | None = DEFAULT_TIME_BUDGET,
    strict: bool = True,
    heuristics: bool = True,
) -> SplitterCertificate:
    """Certificate for an internally 4-connected M' with an N-minor, 1 <= |E(M) - E(M')| <= 2.

    With ``strict`` the theorem's hypotheses (including |E(N)| >= 7) are
    checked first and a failure raises :class:`HypothesisError`.  Without it
    the search runs on any pair, and :class:`NoCertificateFound` may be a
    legitimate answer.
    """
    budget = Budget(node_budget, time_budget)
    budget.spend()
    if strict:
        report = check_hypotheses(m, n, budget=budget)
        if not report.ok():
            raise HypothesisError(report)
    transcript: list[str] = []
    tried: set[tuple] = set()
    sources = [all_removals(m)]
    if heuristics:
        sources.insert(0, _roadmap(m, n, budget))
    for source in sources:
        for removals in source:
            key = _canonical(removals)
            if key in tried:
                continue
            tried.add(key)
            cert = _try(m, n, removals, budget, transcript)
            if cert is not None:
                return cert
    raise NoCertificateFound(transcript)


def exhaustive_removal_oracle(
    m: BinaryMatroid,
    n: BinaryMatroid,
    node_budget: int | None = DEFAULT_NODE_BUDGET,
    time_budget: float | None = DEFAULT_TIME_BUDGET,
) -> list[tuple[tuple[str, str], ...]]:
    """Every removal of one or two elements giving an internally 4-connected M' with an N-minor."""
    budget = Budget(node_budget, time_budget)
    seen: set[tuple[ElementSet, ElementSet]] = set()
    out = []
    for removals in all_removals(m):
        d = c = 0
        for label, op in removals:
            if op == DELETE:
                d |= 1 << m.index(label)
            else:
                c |= 1 << m.index(label)
        if (d, c) in seen:
            continue
        seen.add((d, c))
        budget.spend()
        sub = m.minor(d, c)
        if len(sub) < len(n) or not connectivity_class(sub).is_internally_4_connected:
            continue
        if has_minor(sub, n, budget=budget) is not None:
            out.append(removals)
    return out
