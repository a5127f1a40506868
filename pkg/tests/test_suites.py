import json

import pytest

from binmat import catalog, cycle_K4, fano, parse_matroid, verify_lemma_suite
from binmat.suites import (
    FAIL,
    NOTE,
    PASS,
    SINGLE_SUITES,
    SKIP,
    decompose_into_circuits,
    family_minor_instances,
    is_4_fan_set,
    _quadiso,
)

SMALL = "rank<=4,size<=9,3connected"
LEMMAS = ["fans3sep", "quad4fan", "quadiso", "even_intersection", "symmetric_difference", "binary_axioms"]


@pytest.mark.parametrize("suite", LEMMAS)
def test_lemma_suites_pass_and_fire(suite):
    report = verify_lemma_suite(suite, SMALL)
    assert report.passed and not report.vacuous
    assert report.instances == 12
    assert report.summary().startswith("PASS")
    # instances where the statement never applies are SKIP, never silently PASS
    assert all(line.status in (PASS, SKIP) for line in report.lines)
    assert any(line.status == PASS for line in report.lines)


def test_selftest_flags_k4():
    """Dropping the 4-fan alternative must make the harness fail, first on M(K4)."""
    report = verify_lemma_suite("selftest_quad_only", SMALL)
    assert not report.passed
    first = report.failures[0]
    assert first.instance == "r3n6#0"
    m = parse_matroid(first.payload["matroid"])
    side = m.mask(first.payload["side"])
    assert m.connectivity(side) <= 2 and is_4_fan_set(m, side)
    # the formatted line carries a replayable JSON payload
    text = first.format("selftest_quad_only")
    assert json.loads(text.split(" payload=", 1)[1])["matroid"] == first.payload["matroid"]


def test_quadiso_fires_on_fano():
    lines, trig = _quadiso(fano(), None)
    assert trig["pairs"] > 0 and all(ln.status == PASS for ln in lines)


def test_decompose_into_circuits():
    k4 = cycle_K4()
    circ = k4.circuits(6)
    for a in circ:
        for b in circ:
            if a != b:
                parts = decompose_into_circuits(k4, a ^ b)
                assert parts is not None
                union = 0
                for p in parts:
                    assert k4.is_circuit(p) and not union & p
                    union |= p
                assert union == a ^ b
    assert decompose_into_circuits(k4, 1) is None


def test_minorsof45fans_default_premise():
    report = verify_lemma_suite("minorsof45fans", SMALL)
    premise = report.lines[0]
    assert premise.instance == "N=ag32" and premise.status == FAIL
    assert "(4,4)-connected-only" in premise.detail


def test_minorsof45fans_with_i4c_n():
    n = next(m for m in catalog("rank<=4,size<=9,i4c") if m.name == "r4n9#4")
    report = verify_lemma_suite("minorsof45fans", "rank<=4,size<=10,3connected", n=n, extra=family_minor_instances())
    assert report.lines[0].status == PASS
    assert report.passed and not report.vacuous
    assert report.triggers["4-fans"] > 0 and report.triggers["5-fans"] > 0


def test_pair_suites_small_scope():
    for suite in ("persistence", "splitter_lemmas", "splitter_theorem"):
        report = verify_lemma_suite(suite, "rank<=4,size<=10,i4c", duals=True)
        assert report.passed, report.format()
        assert all(ln.status in (PASS, SKIP, NOTE) for ln in report.lines)
    assert report.triggers["oracle"] > 0


def test_threads_give_same_lines():
    a = verify_lemma_suite("quad4fan", SMALL, threads=1)
    b = verify_lemma_suite("quad4fan", SMALL, threads=2)
    assert a.format() == b.format()


def test_unknown_suite():
    with pytest.raises(ValueError):
        verify_lemma_suite("nonsense")
    assert set(LEMMAS) <= set(SINGLE_SUITES)
