from fractions import Fraction as Fr

import pytest

from unitoc.builder import (build_tables, greenough_representation, has_peeking_property,
                            peekers, peeking_refinement, proper_inclusions)
from unitoc.errors import IntervalError, TwinError
from unitoc.intervals import closed, has_distinct_endpoints, realizes, representation_from_pairs
from unitoc.poset import build_poset, down_up_chain, is_interval_order
from unitoc.testkit import all_twin_free, enumerate_posets

N = build_poset("abcde", [("d", "e"), ("d", "b"), ("a", "b"), ("b", "c")])

# Worked by hand from the down sets {}, {d}, {a,d}, {a,b,d} and the up sets
# {b,c,e}, {b,c}, {c}, {} of N.
N_GREENOUGH = {"a": (1, 2), "b": (3, 3), "c": (4, 4), "d": (1, 1), "e": (2, 4)}
N_REFINED = {"a": (Fr(3, 4), Fr(9, 4)), "b": (Fr(8, 3), Fr(10, 3)), "c": (Fr(11, 3), Fr(13, 3)),
             "d": (Fr(2, 3), Fr(4, 3)), "e": (Fr(9, 5), Fr(21, 5))}


def greenough(P):
    return greenough_representation(P, down_up_chain(P))


class TestGreenough:
    def test_chain(self):
        rep = greenough(build_poset("ab", [("a", "b")]))
        assert rep["a"] == closed(1, 1) and rep["b"] == closed(2, 2)

    def test_antichain(self):
        rep = greenough(build_poset("ab", []))
        assert rep["a"] == rep["b"] == closed(1, 1)

    def test_n(self):
        rep = greenough(N)
        assert {x: (iv.left, iv.right) for x, iv in rep.items()} == N_GREENOUGH

    def test_realizes_and_every_index_used_twice(self):
        for n in range(1, 6):
            for P in enumerate_posets(n):
                if not is_interval_order(P):
                    continue
                rep = greenough(P)
                assert realizes(P, rep)
                k = down_up_chain(P).k
                assert {iv.left for _, iv in rep.items()} == set(range(1, k + 1))
                assert {iv.right for _, iv in rep.items()} == set(range(1, k + 1))


class TestRefinement:
    def test_formula(self):
        rep = peeking_refinement(representation_from_pairs({"u": (2, 2), "v": (1, 3)}, "closed"))
        assert rep["u"] == closed(Fr(5, 3), Fr(7, 3))
        assert rep["v"] == closed(Fr(4, 5), Fr(16, 5))

    def test_n(self):
        rep = peeking_refinement(greenough(N))
        assert {x: (iv.left, iv.right) for x, iv in rep.items()} == N_REFINED

    def test_twins_detected(self):
        with pytest.raises(TwinError):
            peeking_refinement(greenough(build_poset("ab", [])))

    def test_exhaustive_twin_free(self):
        for n in range(1, 6):
            for P in all_twin_free(n):
                if not is_interval_order(P):
                    continue
                g = greenough(P)
                rep = peeking_refinement(g)
                assert has_distinct_endpoints(rep) and realizes(P, rep)
                assert has_peeking_property(rep)
                # strict inclusions after widening are exactly the proper
                # inclusions with no shared endpoint before it
                before = {(u, v) for u, v in proper_inclusions(g)
                          if g[u].left != g[v].left and g[u].right != g[v].right}
                assert set(proper_inclusions(rep)) == before


class TestTables:
    def test_table_one(self):
        A, B = build_tables(peeking_refinement(greenough(N)))
        assert "".join(A.elements) == "dadeabbcec"
        assert "".join(A.sides) == "LLRLRLRLRR"
        assert A.partners == (3, 5, 1, 9, 2, 7, 6, 10, 4, 8)
        assert B.index_pair == {"d": (1, 3), "a": (2, 5), "e": (4, 9), "b": (6, 7), "c": (8, 10)}
        assert all(not s for s in B.containers.values()) and all(not s for s in B.contained.values())

    def test_single_interval(self):
        A, _ = build_tables(representation_from_pairs({"a": (0, 1)}, "closed"))
        assert A.partners == (2, 1) and A.sides == ("L", "R")

    def test_two_disjoint(self):
        A, _ = build_tables(representation_from_pairs({"a": (0, 1), "b": (2, 3)}, "closed"))
        assert A.sides == ("L", "R", "L", "R") and A.elements == ("a", "a", "b", "b")

    def test_refuses_ties(self):
        with pytest.raises(IntervalError):
            build_tables(representation_from_pairs({"a": (0, 1), "b": (1, 2)}, "closed"))

    def test_one_based_accessors_and_format(self):
        A, _ = build_tables(peeking_refinement(greenough(N)))
        assert A.element(1) == "d" and A.side(10) == "R" and A.partner(4) == 9
        lines = A.format().splitlines()
        assert lines[1].split() == ["Element", *"dadeabbcec"]
        assert lines[3].split()[2:] == ["3", "5", "1", "9", "2", "7", "6", "10", "4", "8"]


def test_definition_peekers_on_n():
    rep = peeking_refinement(greenough(N))
    assert peekers(rep, "b", "e", "left") == ["a"]
    assert peekers(rep, "b", "e", "right") == ["c"]
