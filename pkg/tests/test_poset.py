from __future__ import annotations

import pytest

from treeorder.poset import (
    EQ,
    GT,
    LT,
    SIML,
    SIMU,
    SWAP,
    ExtendedPoset,
    PosetError,
    between_by_codes,
    from_pairs,
)


def chain(names="abc"):
    return from_pairs(
        tuple(names),
        [(a, "lt", b) for i, a in enumerate(names) for b in names[i + 1 :]],
    )


def vee():
    # a below two incomparable elements on separate branches.
    return from_pairs("abc", [("a", "lt", "b"), ("a", "lt", "c"), ("b", "siml", "c")])


def wedge():
    return from_pairs("abc", [("b", "lt", "a"), ("c", "lt", "a"), ("b", "simu", "c")])


def crown():
    # Two bottoms under two tops, no comparabilities across the middle.
    return from_pairs(
        "abcd",
        [
            ("a", "lt", "b"),
            ("a", "lt", "c"),
            ("a", "simu", "d"),
            ("b", "siml", "c"),
            ("d", "lt", "b"),
            ("d", "lt", "c"),
        ],
    )


def test_swap_table_is_an_involution():
    for code, mate in SWAP.items():
        assert SWAP[mate] == code
    assert SWAP[LT] == GT
    assert SWAP[SIMU] == SIMU
    assert SWAP[SIML] == SIML
    assert SWAP[EQ] == EQ


def test_between_by_codes_chain_and_bridge():
    assert between_by_codes(LT, LT, LT)
    assert between_by_codes(LT, SIMU, SIML)
    assert not between_by_codes(LT, LT, SIMU)
    assert between_by_codes(GT, GT, GT)
    assert between_by_codes(SIML, SIML, LT)
    assert between_by_codes(SIML, GT, SIML)
    assert not between_by_codes(SIML, GT, LT)
    assert between_by_codes(SIMU, SIMU, GT)
    assert between_by_codes(SIMU, LT, SIMU)
    with pytest.raises(PosetError):
        between_by_codes(EQ, LT, LT)


def test_chain_queries():
    p = chain("abcd")
    assert p.rel("a", "c") == LT
    assert p.rel("c", "a") == GT
    assert p.classify("a", "b") == "lt"
    assert p.up_set("b") == ("c", "d")
    assert p.down_set("b") == ("a",)
    assert p.between_members("a", "d") == ("a", "b", "c", "d")
    bc = p.between_set("a", "d")
    assert bc.members == ("a", "b", "c", "d")
    # Everything on a chain is chain-related, so there is one class.
    assert bc.classes == (("a", "b", "c", "d"),)
    assert not p.is_trivial_extension()


def test_travel_order_reverses_with_endpoints():
    p = chain("abcd")
    fwd = p.between_set("a", "d").members
    rev = p.between_set("d", "a").members
    assert fwd == tuple(reversed(rev))


def test_vee_between_set_skips_the_bottom():
    p = vee()
    # Travel from b to c turns at the junction above a, not at a itself.
    assert p.between_members("b", "c") == ("b", "c")
    assert p.between_members("a", "b") == ("a", "b")
    assert p.is_trivial_extension()


def test_crown_is_valid_and_mixed():
    p = crown()
    assert p.rel("a", "d") == SIMU
    assert p.rel("b", "c") == SIML
    assert not p.is_trivial_extension()
    assert p.verify_between_theorem() == []
    assert p.check_lemma_propagation() == []
    assert p.verify_o_equivalence() == []


def test_missing_pair_rejected():
    with pytest.raises(PosetError, match="missing"):
        from_pairs("abc", [("a", "lt", "b"), ("b", "lt", "c")])


def test_duplicate_pair_rejected():
    with pytest.raises(PosetError, match="twice"):
        from_pairs("ab", [("a", "lt", "b"), ("b", "gt", "a")])


def test_transitivity_enforced():
    with pytest.raises(PosetError, match="transitive"):
        from_pairs(
            "abc",
            [("a", "lt", "b"), ("b", "lt", "c"), ("a", "simu", "c")],
        )


def test_both_bounds_rejected():
    # b and c sit between a common bottom and a common top.
    with pytest.raises(PosetError, match="both kinds"):
        from_pairs(
            "abcd",
            [
                ("a", "lt", "b"),
                ("a", "lt", "c"),
                ("a", "lt", "d"),
                ("b", "lt", "d"),
                ("c", "lt", "d"),
                ("b", "simu", "c"),
            ],
        )


def test_tag_must_match_realized_bound():
    with pytest.raises(PosetError, match="shares a lower bound"):
        from_pairs("abc", [("a", "lt", "b"), ("a", "lt", "c"), ("b", "simu", "c")])
    with pytest.raises(PosetError, match="shares an upper bound"):
        from_pairs("abc", [("b", "lt", "a"), ("c", "lt", "a"), ("b", "siml", "c")])


def test_tagging_acyclicity_enforced():
    # x ~u y and x ~l z force y < z.
    with pytest.raises(PosetError, match="not acyclic"):
        from_pairs(
            "xyz",
            [("x", "simu", "y"), ("x", "siml", "z"), ("y", "siml", "z")],
        )
    p = from_pairs("xyz", [("x", "simu", "y"), ("x", "siml", "z"), ("y", "lt", "z")])
    assert p.rel("y", "z") == LT


def test_o_related_is_chainhood():
    p = crown()
    assert p.o_related("a", "b")
    assert p.o_related("a", "a")
    # The two tops travel through the junction alone; their between set is
    # only the endpoints, which an incomparable pair never makes a chain.
    assert p.between_members("b", "c") == ("b", "c")
    assert not p.o_related("b", "c")
    assert p.between_set("b", "c").class_count == 2


def test_strongly_connected_diagnostic():
    assert chain("abc").check_strongly_connected() == []
    bare = from_pairs("ab", [("a", "simu", "b")])
    missing = bare.check_strongly_connected()
    assert len(missing) == 1
    assert missing[0]["pair"] == ("a", "b")


def test_restrict_keeps_relations():
    p = chain("abcd")
    q = p.restrict(("a", "c", "d"))
    assert q.rel("a", "c") == LT
    assert q.between_members("a", "d") == ("a", "c", "d")


def test_relations_table_roundtrip():
    p = crown()
    table = p.relations_table()
    rebuilt = from_pairs(p.elements, [(a, rel, b) for (a, b), rel in table.items()])
    assert rebuilt.relations_table() == table


def test_unknown_element_raises():
    p = chain("ab")
    with pytest.raises(PosetError, match="not an element"):
        p.rel("a", "z")


def test_between_set_needs_distinct_endpoints():
    p = chain("ab")
    with pytest.raises(PosetError, match="distinct"):
        p.between_set("a", "a")
