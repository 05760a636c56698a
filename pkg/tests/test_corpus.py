from __future__ import annotations

import random

import oracles
from treeorder.corpus import (
    BASE_ORDER_COUNTS,
    all_extended_posets,
    count_base_orders,
    random_tree_poset,
    run_corpus_suite,
    run_relation_suite,
    tree_corpus,
)
from treeorder.poset import SIML, SIMU


def test_base_counts_match_the_reference_sequence():
    for n, expected in BASE_ORDER_COUNTS.items():
        assert count_base_orders(n) == expected
    assert tuple(BASE_ORDER_COUNTS[n] for n in range(6)) == oracles.LABELED_ORDER_COUNTS


def test_base_counts_match_the_naive_enumeration():
    for n in range(6):
        assert count_base_orders(n) == oracles.count_naive_base_orders(n)


def test_extended_counts_match_the_naive_enumeration():
    expected = {0: 1, 1: 1, 2: 4, 3: 32, 4: 400, 5: 6912}
    for n in range(5):
        posets = all_extended_posets(n)
        assert len(posets) == expected[n]
        assert len(posets) == oracles.count_naive_extended(n)


def test_extended_count_at_five_is_frozen():
    assert len(all_extended_posets(5)) == 6912
    assert oracles.count_naive_extended(5) == 6912


def test_three_element_census():
    tallies = {"total": 0, "trivial": 0, "untagged": 0, "mixed": 0}
    for p in all_extended_posets(3):
        tallies["total"] += 1
        tags = {p.rel(a, b) for a, b in p.iter_pairs() if p.rel(a, b) in (SIMU, SIML)}
        if not tags:
            tallies["untagged"] += 1
        elif p.is_trivial_extension():
            tallies["trivial"] += 1
        else:
            tallies["mixed"] += 1
    # Six labeled chains carry no incomparable pair; the only mixed-tag
    # shapes come from the single-relation bases, one tagging each.
    assert tallies == {"total": 32, "untagged": 6, "trivial": 20, "mixed": 6}


def test_every_enumerated_poset_passes_the_relation_suite():
    for n in range(5):
        for p in all_extended_posets(n):
            suite = run_relation_suite(p)
            assert suite["ok"], (n, p.relations_table(), suite)


def test_tree_corpus_is_seeded_and_admissible():
    batch = tree_corpus(count=20, seed=20260815)
    again = tree_corpus(count=20, seed=20260815)
    assert len(batch) == 20
    for p, q in zip(batch, again):
        assert p.relations_table() == q.relations_table()
    for p in batch:
        assert run_relation_suite(p)["ok"]


def test_random_tree_posets_keep_their_points():
    rng = random.Random(7)
    for _ in range(10):
        p = random_tree_poset(rng, max_points=10)
        assert 2 <= p.n <= 10
        assert len(p.points) == p.n


def test_corpus_suite_summary():
    report = run_corpus_suite(max_n=4, tree_count=10, seed=3)
    assert report["ok"], report["failures"]
    assert report["counts"] == {
        0: {"base": 1, "extended": 1},
        1: {"base": 1, "extended": 1},
        2: {"base": 3, "extended": 4},
        3: {"base": 19, "extended": 32},
        4: {"base": 219, "extended": 400},
    }
    assert report["checked"] == 1 + 1 + 4 + 32 + 400 + 10
