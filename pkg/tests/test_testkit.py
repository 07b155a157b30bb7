import json

import numpy as np
import pytest

from unitoc.catalog import ForbiddenKind as K, catalog_poset
from unitoc.errors import OracleBoundError
from unitoc.poset import build_poset, dual, is_interval_order, reduce_twins
from unitoc.recognizer import recognize_twin_free
from unitoc.testkit import (EnumerationReport, brute_force_count, catalog_checks, check_poset,
                            differential_suite, enumerate_posets, fuzz_poset, one_point_extensions,
                            oracle_is_unit_oc, random_interval_order)
from unitoc.textio import load_poset

LABELED_COUNTS = [1, 1, 3, 19, 219, 4231]


def test_counts_match_brute_force():
    for n in range(5):
        assert sum(1 for _ in enumerate_posets(n)) == brute_force_count(n)


def test_known_counts():
    assert [sum(1 for _ in enumerate_posets(n)) for n in range(6)] == LABELED_COUNTS


def test_enumeration_is_duplicate_free():
    seen = {tuple(P.down_masks) for P in enumerate_posets(4)}
    assert len(seen) == 219


def test_two_element_cases():
    got = {frozenset(P.pairs()) for P in enumerate_posets(2)}
    assert got == {frozenset(), frozenset({("a", "b")}), frozenset({("b", "a")})}


def test_enumeration_bound():
    with pytest.raises(OracleBoundError):
        next(enumerate_posets(8))


def test_oracle_examples():
    assert oracle_is_unit_oc(build_poset("abcx", [("a", "b"), ("b", "c")]))
    assert not oracle_is_unit_oc(catalog_poset(K.Z))
    assert oracle_is_unit_oc(catalog_poset(K.ThreePlusOnePlusOne))
    assert not oracle_is_unit_oc(build_poset("abcd", [("a", "b"), ("c", "d")]))


def test_oracle_dual_invariant():
    for n in range(6):
        for P in enumerate_posets(n):
            assert oracle_is_unit_oc(P) == oracle_is_unit_oc(dual(P))


def test_differential_small():
    r = differential_suite(3)
    assert r.total_labeled == 1 + 1 + 3 + 19
    assert r.agreements == r.total_labeled and r.disagreements == 0


def test_differential_five():
    r = differential_suite(5)
    assert r.disagreements == 0, r.disagreement_samples
    assert r.total_labeled == sum(LABELED_COUNTS)
    assert r.certificates > 0 and r.representations > 0 and r.star_checks > 0


def test_report_json_and_merge():
    a = EnumerationReport(3, total_labeled=5, agreements=4, disagreements=1,
                          disagreement_samples=["x"])
    b = EnumerationReport(4, total_labeled=2, agreements=2)
    for m in (a.merge(b), b.merge(a)):
        assert (m.n, m.total_labeled, m.agreements, m.disagreements) == (4, 7, 6, 1)
        assert m.disagreement_samples == ["x"]
    assert json.loads(a.to_json())["disagreement_samples"] == ["x"]


def test_samples_replay_through_text_format():
    from unitoc.textio import format_poset

    P = catalog_poset(K.Z)
    text = format_poset(P, name="sample; problem", kind="full")
    assert load_poset(text) == P


def test_catalog_checks_clean():
    assert catalog_checks() == []


def test_check_poset_flags_nothing_on_catalog():
    for kind in K:
        assert check_poset(catalog_poset(kind)).problems == []


class TestRandomIntervalOrder:
    def test_single_point(self):
        P = random_interval_order(1, 7)
        assert len(P) == 1 and not P.pairs()

    def test_deterministic(self):
        assert random_interval_order(50, 3) == random_interval_order(50, 3)
        assert random_interval_order(50, 3) != random_interval_order(50, 4)

    def test_large_is_accepted(self):
        P, _ = reduce_twins(random_interval_order(1000, 11))
        assert recognize_twin_free(P).accepted

    def test_reduce_option(self):
        P = random_interval_order(200, 5, reduce=True)
        assert P == reduce_twins(P)[0]

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            random_interval_order(0, 1)


def test_fuzz_mixes_outcomes():
    rng = np.random.default_rng(0)
    posets = [fuzz_poset(rng, int(rng.integers(5, 30))) for _ in range(150)]
    checks = [check_poset(P, oracle=False) for P in posets]
    assert all(not c.problems for c in checks)
    assert any(c.accepted for c in checks)
    assert any(not is_interval_order(P) for P in posets)
    assert any(is_interval_order(P) and not c.accepted for P, c in zip(posets, checks))


def test_one_point_extensions_of_chain():
    P = build_poset("ab", [("a", "b")])
    exts = list(one_point_extensions(P, "y"))
    # y below a, between, above b, incomparable to both, below b only, above a only
    assert len(exts) == 6
    assert all(e.less("a", "b") for e in exts)
