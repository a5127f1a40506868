"""Exhaustive checks of structural statements over catalogs of small matroids.

Each suite maps one statement to a per-instance check.  A report has one
line per instance, PASS/FAIL/SKIP, with a payload that can be replayed for
every failure, and counts how many checks actually fired so that an empty
test set is never mistaken for a pass.
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable, Iterable, Sequence

from .bmx import emit_matroid
from .catalog import CatalogScope, catalog
from .families import ORDERED_FAMILIES, ag32, construct
from .iso import are_isomorphic, find_isomorphism, invariant_key
from .matroid import BinaryMatroid, bits, popcount
from .minors import Budget, has_minor
from .splitter import (
    DELETE,
    NoCertificateFound,
    candidate_elements,
    check_hypotheses,
    exhaustive_removal_oracle,
    splitter_step,
)
from .structure import connectivity_class, fans, is_3_connected, quads, triads, triangles

PASS, FAIL, SKIP, NOTE = "PASS", "FAIL", "SKIP", "NOTE"


@dataclass
class CheckLine:
    status: str
    instance: str
    detail: str
    payload: dict | None = None

    def format(self, suite: str) -> str:
        text = f"{self.status} {suite} {self.instance} {self.detail}".rstrip()
        if self.payload is not None:
            text += " payload=" + json.dumps(self.payload, sort_keys=True)
        return text


@dataclass
class SuiteReport:
    suite: str
    scope: str
    instances: int = 0
    lines: list[CheckLine] = field(default_factory=list)
    triggers: Counter = field(default_factory=Counter)

    @property
    def failures(self) -> list[CheckLine]:
        return [ln for ln in self.lines if ln.status == FAIL]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def vacuous(self) -> bool:
        return sum(self.triggers.values()) == 0

    def summary(self) -> str:
        verdict = FAIL if not self.passed else ("VACUOUS" if self.vacuous else PASS)
        trig = " ".join(f"{k}={v}" for k, v in sorted(self.triggers.items())) or "none"
        return (f"{verdict} suite={self.suite} scope={self.scope} instances={self.instances} "
                f"failures={len(self.failures)} triggers: {trig}")

    def format(self) -> str:
        return "\n".join([ln.format(self.suite) for ln in self.lines] + [self.summary()])


def _payload(m: BinaryMatroid, **sets) -> dict:
    out = {"matroid": emit_matroid(m)}
    for key, value in sets.items():
        out[key] = m.labels(value) if isinstance(value, int) else value
    return out


# -- single-matroid suites -------------------------------------------------------

def _fans3sep(m: BinaryMatroid, _n) -> tuple[list[CheckLine], Counter]:
    lines, trig, worst = [], Counter(), 0
    for length in range(3, len(m) + 1):
        found = fans(m, length)
        if not found:
            break  # a fan's prefixes are fans, so nothing longer exists
        for f in found:
            trig["fans"] += 1
            s = m.mask(f.elements)
            lam = m.connectivity(s)
            worst = max(worst, lam)
            if lam > 2 or not f.verify(m):
                lines.append(CheckLine(FAIL, m.name, f"fan={','.join(f.elements)} lambda={lam}",
                                       _payload(m, fan=list(f.elements))))
    if not lines:
        status = PASS if trig["fans"] else SKIP
        lines.append(CheckLine(status, m.name, f"fans={trig['fans']} max_lambda={worst}"))
    return lines, trig


def is_4_fan_set(m: BinaryMatroid, s: int) -> bool:
    """Whether the 4 elements of ``s`` admit an ordering that is a 4-fan."""
    tri = set(triangles(m))
    tad = set(triads(m))
    for a, b, c, d in permutations(bits(s)):
        if (1 << a | 1 << b | 1 << c) in tri and (1 << b | 1 << c | 1 << d) in tad:
            return True
    return False


def _four_sides(m: BinaryMatroid, min_rest: int = 3) -> list[int]:
    """4-element sets X with lambda(X) <= 2 and |E - X| >= min_rest.

    With the default these are the 4-element sides of 3-separations.
    """
    if len(m) < 4 + min_rest:
        return []
    return [
        sum(1 << i for i in combo)
        for combo in combinations(range(len(m)), 4)
        if m.connectivity(sum(1 << i for i in combo)) <= 2
    ]


def _quad4fan(m: BinaryMatroid, _n, quad_only: bool = False) -> tuple[list[CheckLine], Counter]:
    trig = Counter()
    if not is_3_connected(m):
        return [CheckLine(SKIP, m.name, "not 3-connected")], trig
    lines = []
    # the weakened self-test looks at every 4-element 3-separating set
    for x in _four_sides(m, 0 if quad_only else 3):
        trig["sides"] += 1
        is_quad = m.is_circuit(x) and m.is_cocircuit(x)
        is_fan = False if quad_only else is_4_fan_set(m, x)
        trig["quads" if is_quad else "fans" if is_fan else "neither"] += 1
        if not (is_quad or is_fan):
            lines.append(CheckLine(FAIL, m.name, f"side={','.join(m.labels(x))} is neither a quad"
                                   + ("" if quad_only else " nor a 4-fan"), _payload(m, side=x)))
    if not lines:
        lines.append(CheckLine(PASS if trig["sides"] else SKIP, m.name,
                               f"sides={trig['sides']} quads={trig['quads']} fans={trig['fans']}"))
    trig.pop("neither", None)
    return lines, trig


def _quad_only(m, n):
    return _quad4fan(m, n, quad_only=True)


def _quadiso(m: BinaryMatroid, _n) -> tuple[list[CheckLine], Counter]:
    lines, trig = [], Counter()
    for q in quads(m):
        for x, y in combinations(bits(q.elements), 2):
            trig["pairs"] += 1
            a, b = m.minor(1 << x, 0), m.minor(1 << y, 0)
            w = are_isomorphic(a, b)
            if w is None or not w.verify(a, b):
                lines.append(CheckLine(FAIL, m.name, f"quad={','.join(m.labels(q.elements))} "
                                       f"x={m.elements[x]} y={m.elements[y]} not isomorphic",
                                       _payload(m, quad=q.elements, x=m.elements[x], y=m.elements[y])))
    if not lines:
        lines.append(CheckLine(PASS if trig["pairs"] else SKIP, m.name, f"quad_pairs={trig['pairs']}"))
    return lines, trig


def _even_intersection(m: BinaryMatroid, _n) -> tuple[list[CheckLine], Counter]:
    lines, trig = [], Counter()
    circ = m.circuits(len(m))
    cocirc = m.cocircuits(len(m))
    for c in circ:
        for d in cocirc:
            trig["pairs"] += 1
            k = popcount(c & d)
            if k % 2:
                lines.append(CheckLine(FAIL, m.name, f"|C & D|={k}", _payload(m, circuit=c, cocircuit=d)))
    if not lines:
        lines.append(CheckLine(PASS if trig["pairs"] else SKIP, m.name,
                               f"circuits={len(circ)} cocircuits={len(cocirc)} pairs={trig['pairs']}"))
    return lines, trig


def decompose_into_circuits(m: BinaryMatroid, s: int, circuits: Sequence[int] | None = None) -> list[int] | None:
    """Split ``s`` into disjoint circuits, or None if that is impossible.

    In a binary matroid removing a circuit from a disjoint union of
    circuits leaves a disjoint union of circuits, so greedy extraction
    decides the question.
    """
    if circuits is None:
        circuits = m.circuits(len(m))
    parts = []
    while s:
        c = next((c for c in circuits if c & s == c), None)
        if c is None:
            return None
        parts.append(c)
        s ^= c
    return parts


def _symmetric_difference(m: BinaryMatroid, _n) -> tuple[list[CheckLine], Counter]:
    lines, trig = [], Counter()
    circ = m.circuits(len(m))
    for c, d in combinations(circ, 2):
        trig["pairs"] += 1
        if decompose_into_circuits(m, c ^ d, circ) is None:
            lines.append(CheckLine(FAIL, m.name, "C ^ D is not a disjoint union of circuits",
                                   _payload(m, c=c, d=d)))
    if not lines:
        lines.append(CheckLine(PASS if trig["pairs"] else SKIP, m.name, f"circuit_pairs={trig['pairs']}"))
    return lines, trig


def _binary_axioms(m, n):
    a, ta = _even_intersection(m, n)
    b, tb = _symmetric_difference(m, n)
    trig = Counter({f"even.{k}": v for k, v in ta.items()})
    trig.update({f"symdiff.{k}": v for k, v in tb.items()})
    return a + b, trig


def _minorsof45fans(m: BinaryMatroid, n: BinaryMatroid) -> tuple[list[CheckLine], Counter]:
    trig = Counter()
    f4 = [f for f in fans(m, 4) if f.kind == "4-fan"]
    f5 = [f for f in fans(m, 5) if f.kind == "5-fan"]
    if not (f4 or f5):
        return [CheckLine(SKIP, m.name, "no 4-fans or 5-fans")], trig
    if len(m) <= len(n) or has_minor(m, n) is None:
        trig_line = CheckLine(SKIP, m.name, f"fans={len(f4) + len(f5)} but no {n.name}-minor")
        return [trig_line], trig

    def keeps(d=(), c=()) -> bool:
        return has_minor(m.minor(m.mask(list(d)), m.mask(list(c))), n) is not None

    lines = []
    for f in f4:
        trig["4-fans"] += 1
        s = f.elements
        if not (keeps(d=[s[0]]) or keeps(c=[s[3]])):
            lines.append(CheckLine(FAIL, m.name, f"4-fan={','.join(s)}: neither M\\s1 nor M/s4 has an N-minor",
                                   _payload(m, fan=list(s))))
    for f in f5:
        trig["5-fans"] += 1
        s = f.elements
        main = keeps(d=[s[0], s[4]]) or (keeps(d=[s[0]], c=[s[1]]) and keeps(d=[s[4]], c=[s[3]]))
        ends = keeps(d=[s[0]]) and keeps(d=[s[4]])
        if not (main and ends):
            lines.append(CheckLine(FAIL, m.name, f"5-fan={','.join(s)}: clause fails (main={main} ends={ends})",
                                   _payload(m, fan=list(s))))
    if not lines:
        lines.append(CheckLine(PASS, m.name, f"4-fans={trig['4-fans']} 5-fans={trig['5-fans']}"))
    return lines, trig


# -- pair suites -----------------------------------------------------------------

def _hypotheses(m: BinaryMatroid, n: BinaryMatroid, strict: bool = True):
    report = check_hypotheses(m, n)
    return report, report.ok(strict)


def _is_counterexample(m: BinaryMatroid, n: BinaryMatroid) -> bool:
    return not exhaustive_removal_oracle(m, n)


def _persistence(pair, _n) -> tuple[list[CheckLine], Counter]:
    m, n = pair
    name = f"{m.name}>{n.name}"
    trig = Counter()
    report, ok = _hypotheses(m, n)
    if not ok:
        return [CheckLine(SKIP, name, "hypotheses fail: " + report.failures()[0])], trig
    lines = []
    for t in triangles(m) + triads(m):
        trig["sets"] += 1
        for i in bits(t):
            for d, c in ((1 << i, 0), (0, 1 << i)):
                if has_minor(m.minor(d, c), n) is not None:
                    lines.append(CheckLine(FAIL, name, f"{m.elements[i]} in {','.join(m.labels(t))} "
                                           "can be removed keeping an N-minor",
                                           {**_payload(m, set=t), "n": emit_matroid(n)}))
    if not lines:
        lines.append(CheckLine(PASS, name, f"triangles_and_triads={trig['sets']}"))
    return lines, trig


def _splitter_lemmas(pair, _n) -> tuple[list[CheckLine], Counter]:
    """Quad deletions kill N, and no candidate minor M\\e has a 4-fan.

    These statements are about counterexamples to the splitter theorem, so
    a violation on a pair that is not a counterexample is recorded as NOTE.
    """
    m, n = pair
    name = f"{m.name}>{n.name}"
    trig = Counter()
    report, ok = _hypotheses(m, n)
    if not ok:
        return [CheckLine(SKIP, name, "hypotheses fail: " + report.failures()[0])], trig
    counterexample = _is_counterexample(m, n)
    bad = FAIL if counterexample else NOTE
    lines = []
    for cand in candidate_elements(m, n, Budget(None, None)):
        if cand.side != DELETE:
            m_, e = m.dual(), cand.element  # the dual pair covers contractions
            n_ = n.dual()
        else:
            m_, e, n_ = m, cand.element, n
        sub = m_.minor(m_.mask(e), 0)
        for q in quads(sub):
            for x in sub.labels(q.elements):
                trig["quad-deletions"] += 1
                if has_minor(sub.minor(sub.mask(x), 0), n_) is not None:
                    lines.append(CheckLine(bad, name, f"e={e} quad element {x} deletes keeping an N-minor"))
        four = [f for f in fans(sub, 4) if f.kind == "4-fan"]
        trig["candidate-minors"] += 1
        if four:
            lines.append(CheckLine(bad, name, f"e={e} leaves 4-fan {','.join(four[0].elements)}"))
    if not lines:
        lines.append(CheckLine(PASS, name, f"counterexample={counterexample} "
                               f"quad_deletions={trig['quad-deletions']}"))
    return lines, trig


def _splitter_theorem(pair, _n) -> tuple[list[CheckLine], Counter]:
    """Theorem mode on hypothesis-passing pairs, oracle comparison on the rest."""
    m, n = pair
    name = f"{m.name}>{n.name}"
    trig = Counter()
    report, ok = _hypotheses(m, n)
    oracle = exhaustive_removal_oracle(m, n)
    try:
        cert = splitter_step(m, n, strict=ok)
    except NoCertificateFound:
        cert = None
    agree = (cert is not None) == bool(oracle)
    valid = cert is None or cert.verify(m, n)
    if ok:
        trig["theorem"] += 1
        status = PASS if cert is not None and valid and agree else FAIL
        detail = "theorem-mode " + (" ".join(cert.describe()) if cert else "NO CERTIFICATE")
    elif report.proper_minor:
        trig["oracle"] += 1
        status = PASS if agree and valid else FAIL
        detail = f"relaxed found={cert is not None} oracle={len(oracle)} hypotheses=fail"
    else:
        return [CheckLine(SKIP, name, "N is not a proper minor")], trig
    payload = None if status == PASS else {"m": emit_matroid(m), "n": emit_matroid(n)}
    return [CheckLine(status, name, detail, payload)], trig


Check = Callable[..., tuple[list[CheckLine], Counter]]

SINGLE_SUITES: dict[str, Check] = {
    "fans3sep": _fans3sep,
    "quad4fan": _quad4fan,
    "quadiso": _quadiso,
    "even_intersection": _even_intersection,
    "symmetric_difference": _symmetric_difference,
    "binary_axioms": _binary_axioms,
    "minorsof45fans": _minorsof45fans,
    "selftest_quad_only": _quad_only,
}
PAIR_SUITES: dict[str, Check] = {
    "persistence": _persistence,
    "splitter_lemmas": _splitter_lemmas,
    "splitter_theorem": _splitter_theorem,
}
SUITES = tuple(SINGLE_SUITES) + tuple(PAIR_SUITES)


def dedupe(matroids: Iterable[BinaryMatroid]) -> list[BinaryMatroid]:
    """Drop matroids isomorphic to an earlier one."""
    out: list[BinaryMatroid] = []
    buckets: dict[tuple, list[BinaryMatroid]] = {}
    for m in matroids:
        b = buckets.setdefault(invariant_key(m), [])
        if any(find_isomorphism(m, o) for o in b):
            continue
        b.append(m)
        out.append(m)
    return out


def with_duals(matroids: Iterable[BinaryMatroid]) -> list[BinaryMatroid]:
    ms = list(matroids)
    return dedupe(ms + [m.dual().renamed(m.name + "*") for m in ms])


def family_minor_instances(orders: Sequence[int] = (4,)) -> list[BinaryMatroid]:
    """Single-element deletions and contractions of the four families and their duals."""
    out = []
    for k in orders:
        for family in ORDERED_FAMILIES:
            base = construct(family, k)
            for m in (base, base.dual().renamed(base.name + "*")):
                for i, e in enumerate(m.elements):
                    out.append(m.minor(1 << i, 0).renamed(f"{m.name}\\{e}"))
                    out.append(m.minor(0, 1 << i).renamed(f"{m.name}/{e}"))
    return dedupe(out)


def proper_minor_pairs(pool: Sequence[BinaryMatroid], min_n_size: int = 7) -> list[tuple[BinaryMatroid, BinaryMatroid]]:
    """Ordered pairs (M, N) from ``pool`` that pass the size and rank arithmetic for N < M."""
    return [
        (m, n)
        for m in pool
        for n in pool
        if min_n_size <= len(n) < len(m) and n.rank <= m.rank and len(n) - n.rank <= len(m) - m.rank
    ]


def _run_one(args):
    suite, inst, n = args
    check = SINGLE_SUITES.get(suite) or PAIR_SUITES[suite]
    return check(inst, n)


def verify_lemma_suite(
    suite: str,
    scope: CatalogScope | str = "rank<=4,size<=10,3connected",
    n: BinaryMatroid | None = None,
    threads: int = 1,
    duals: bool = False,
    extra: Sequence[BinaryMatroid] = (),
) -> SuiteReport:
    """Run ``suite`` over the catalog ``scope`` (plus ``extra`` instances).

    Pair suites run over ordered pairs of internally 4-connected members of
    the scope.  ``minorsof45fans`` takes N from ``n`` (default AG(3,2)) and
    first records whether N meets the lemma's premise.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; known: {', '.join(SUITES)}")
    if isinstance(scope, str):
        scope = CatalogScope.parse(scope)
    pool = catalog(scope)
    if duals:
        pool = with_duals(pool)
    pool = list(pool) + list(extra)
    report = SuiteReport(suite, str(scope) + (",duals" if duals else "") + (f",+{len(extra)}" if extra else ""))
    if suite == "minorsof45fans":
        n = n if n is not None else ag32()
        cls = connectivity_class(n)
        premise = cls.is_internally_4_connected and len(n) >= 8
        report.lines.append(CheckLine(PASS if premise else FAIL, f"N={n.name}",
                                      f"premise class={cls} size={len(n)}",
                                      None if premise else {"n": emit_matroid(n)}))
    if suite in PAIR_SUITES:
        i4c = [m for m in pool if connectivity_class(m).is_internally_4_connected]
        instances: list = proper_minor_pairs(i4c)
    else:
        instances = pool
    report.instances = len(instances)
    jobs = [(suite, inst, n) for inst in instances]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(_run_one, jobs, chunksize=1))
    else:
        results = [_run_one(j) for j in jobs]
    for lines, trig in results:
        report.lines.extend(lines)
        report.triggers.update(trig)
    return report
