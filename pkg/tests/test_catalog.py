import pytest

from unitoc.catalog import (CATALOGS, F_KINDS, T_KINDS, Certificate, ForbiddenKind as K,
                            catalog_poset, export_catalog, find_forbidden, search_order,
                            verify_certificate)
from unitoc.errors import OracleBoundError
from unitoc.poset import build_poset, dual, find_induced_copy, induced, is_isomorphic, reduce_twins
from unitoc.testkit import one_point_extensions, oracle_is_unit_oc

THREE_PLUS_ONE = build_poset("abcx", [("a", "b"), ("b", "c")])


def test_catalog_membership():
    assert F_KINDS == {K.FourPlusOne, K.ThreePlusOnePlusOne, K.Z, K.D, K.Y, K.YDual}
    assert T_KINDS == {K.FourPlusOne, K.Z, K.DStar, K.DStarDual, K.YStar, K.YStarDual,
                       K.YStarStar, K.YStarStarDual}
    assert CATALOGS["TwoTwoOnly"] == {K.TwoPlusTwo}


def test_z_closure():
    # closing a<b<c<d, x<d, a<y adds only a<c, a<d, b<d
    Z = catalog_poset(K.Z)
    assert len(Z) == 6
    assert Z.pairs() == {("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d"),
                         ("x", "d"), ("a", "y")}


def test_d_shape():
    D = catalog_poset(K.D)
    assert D.incomparable("b", "c")
    assert all(D.incomparable("x", z) for z in "abcd")


def test_starred_extensions_contain_their_base():
    assert induced(catalog_poset(K.YStar), "adbcx") == catalog_poset(K.Y)
    assert induced(catalog_poset(K.YStarStar), "adbcx") == catalog_poset(K.Y)
    assert induced(catalog_poset(K.DStar), "abcdx") == catalog_poset(K.D)
    Dstar = catalog_poset(K.DStar)
    assert Dstar.less("y", "c") and all(Dstar.incomparable("y", z) for z in "abx")


def test_dualities():
    for kind in F_KINDS - {K.Y, K.YDual}:
        assert is_isomorphic(dual(catalog_poset(kind)), catalog_poset(kind)), kind
    assert not is_isomorphic(dual(catalog_poset(K.Y)), catalog_poset(K.Y))
    for a, b in [(K.Y, K.YDual), (K.DStar, K.DStarDual), (K.YStar, K.YStarDual),
                 (K.YStarStar, K.YStarStarDual)]:
        assert dual(catalog_poset(a)) == catalog_poset(b)


def test_search_order_is_size_then_tag():
    order = search_order(list(K))
    sizes = [len(catalog_poset(k)) for k in order]
    assert sizes == sorted(sizes)
    assert order[0] is K.TwoPlusTwo


class TestFindForbidden:
    def test_four_plus_one_identity(self):
        P = catalog_poset(K.FourPlusOne)
        cert = find_forbidden(P, "F")
        assert cert.kind is K.FourPlusOne
        assert dict(cert.embedding) == {x: x for x in P.elements}

    def test_three_plus_one_is_f_free(self):
        assert find_forbidden(THREE_PLUS_ONE, "F") is None

    def test_y_star_star_minimal(self):
        P = catalog_poset(K.YStarStar)
        assert find_forbidden(P, "T").kind is K.YStarStar
        for x in P.elements:
            assert find_forbidden(induced(P, [y for y in P.elements if y != x]), "T") is None

    def test_bound(self):
        P = build_poset([f"e{i}" for i in range(10)], [])
        with pytest.raises(OracleBoundError):
            find_forbidden(P, "F")

    def test_unknown_catalog(self):
        with pytest.raises(ValueError):
            find_forbidden(THREE_PLUS_ONE, "G")


class TestVerify:
    def test_valid_z(self):
        Z = catalog_poset(K.Z)
        host = build_poset(list(Z.elements) + ["q"], Z.covers() + [("d", "q")])
        emb = find_induced_copy(host, Z)
        assert verify_certificate(host, Certificate(K.Z, emb))

    def test_permuted_pair_fails(self):
        Z = catalog_poset(K.Z)
        emb = {x: x for x in Z.elements}
        emb["a"], emb["b"] = "b", "a"
        assert not verify_certificate(Z, Certificate(K.Z, emb))

    def test_wrong_kind(self):
        Y = catalog_poset(K.Y)
        assert not verify_certificate(Y, Certificate(K.D, {x: x for x in "abcdx"}))

    def test_missing_or_foreign_elements(self):
        D = catalog_poset(K.D)
        assert not verify_certificate(D, Certificate(K.D, {"a": "a", "b": "b"}))
        assert not verify_certificate(D, Certificate(K.D, {x: "zz" for x in "abcdx"}))


def test_t_minimality_and_non_membership():
    for kind in T_KINDS:
        P = catalog_poset(kind)
        reduced, _ = reduce_twins(P)
        assert find_forbidden(reduced, "F") is not None, kind
        for x in P.elements:
            Q, _ = reduce_twins(induced(P, [y for y in P.elements if y != x]))
            assert find_forbidden(Q, "F") is None, (kind, x)
            assert find_forbidden(Q, "TwoTwoOnly") is None


def test_twinned_f_members_are_t_free():
    for kind in (K.ThreePlusOnePlusOne, K.D, K.Y, K.YDual):
        assert find_forbidden(catalog_poset(kind), "T") is None
        assert oracle_is_unit_oc(catalog_poset(kind))


def test_y_extension_oracle_pins_down_starred_posets():
    # Every one-point extension of Y by a point comparable to exactly one of
    # b, c: the minimal non-members are Y*, Y**, and (via a < y) a copy of
    # D*dual; the first two are not equal to each other.
    Y = catalog_poset(K.Y)
    minimal = []
    for Q in one_point_extensions(Y, "y"):
        if Q.comparable("y", "b") + Q.comparable("y", "c") != 1 or oracle_is_unit_oc(Q):
            continue
        if all(oracle_is_unit_oc(induced(Q, [e for e in Q.elements if e != z])) for z in Q.elements):
            minimal.append(Q)
    kinds = set()
    for Q in minimal:
        match = [k for k in T_KINDS if is_isomorphic(Q, catalog_poset(k))]
        assert len(match) == 1
        kinds.add(match[0])
    assert kinds == {K.YStar, K.YStarStar, K.DStarDual}
    assert not is_isomorphic(catalog_poset(K.YStar), catalog_poset(K.YStarStar))


def test_export_catalog():
    posets = export_catalog()
    assert set(posets) == set(K)
    assert list(posets) == search_order(list(K))
    assert export_catalog([K.Z]) == {K.Z: catalog_poset(K.Z)}


def test_certificate_dict():
    cert = Certificate(K.FourPlusOne, {x: x for x in "abcdx"})
    assert cert.to_dict() == {"kind": "FourPlusOne", "elements": {x: x for x in "abcdx"}}
    assert cert.elements == list("abcdx")
