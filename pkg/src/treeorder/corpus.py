"""Exhaustive and randomized poset corpora for the relation laws.

Two sources.  Small scale: every valid tagged poset on up to five labeled
elements, enumerated as base strict orders (grown one element at a time by
choosing a down-closed lower set and an up-closed upper set) crossed with all
admissible tag assignments on incomparable pairs.  Desk scale: pseudo-random
oriented trees with points sprinkled on their arcs, ordered by the forward
component rule; the theory says these are always admissible, which makes
them good stress instances for the between-set laws.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterator, List, Optional

from .ordertree import OrderTree
from .orbitorder import manifold_graph, manifold_order
from .poset import EQ, GT, LT, SIML, SIMU, ExtendedPoset, PosetError

# Labeled strict orders on 0..n-1 points, for the enumerator sanity check.
BASE_ORDER_COUNTS = {0: 1, 1: 1, 2: 3, 3: 19, 4: 219, 5: 4231}


def base_orders(n: int) -> Iterator[tuple]:
    """All strict partial orders on range(n) as (up, down) bitmask lists.

    Element k is added with a choice of lower set D (down-closed) and upper
    set U (up-closed), disjoint, with every member of D below every member
    of U; each order arises from exactly one choice sequence.
    """
    if n == 0:
        yield ((), ())
        return
    for up, down in base_orders(n - 1):
        up = list(up)
        down = list(down)
        m = n - 1
        closed_down = [d for d in range(1 << m) if _is_closed(d, down)]
        closed_up = [u for u in range(1 << m) if _is_closed(u, up)]
        for d in closed_down:
            for u in closed_up:
                if d & u:
                    continue
                if not _all_below(d, u, up):
                    continue
                nup = [up[i] | (((d >> i) & 1) << m) for i in range(m)]
                ndown = [down[i] | (((u >> i) & 1) << m) for i in range(m)]
                nup.append(u)
                ndown.append(d)
                yield (tuple(nup), tuple(ndown))


def _is_closed(subset: int, spread: list) -> bool:
    # every element of the subset drags its spread along
    rest = subset
    while rest:
        low = rest & -rest
        i = low.bit_length() - 1
        if spread[i] & ~subset:
            return False
        rest ^= low
    return True


def _all_below(d: int, u: int, up: list) -> bool:
    rest = d
    while rest:
        low = rest & -rest
        i = low.bit_length() - 1
        if u & ~up[i]:
            return False
        rest ^= low
    return True


def count_base_orders(n: int) -> int:
    return sum(1 for _ in base_orders(n))


def all_extended_posets(n: int) -> List[ExtendedPoset]:
    """Every admissible tagged poset on range(n).

    For each base order, incomparable pairs with a realized bound have their
    tag forced; the rest are enumerated both ways.  Candidates are handed to
    the ExtendedPoset constructor, whose validation is the single source of
    truth for admissibility.
    """
    out: List[ExtendedPoset] = []
    elements = tuple(range(n))
    for up, down in base_orders(n):
        pairs = []
        forced = {}
        possible = True
        for i in range(n):
            for j in range(i + 1, n):
                if (up[i] >> j) & 1 or (down[i] >> j) & 1:
                    continue
                has_upper = up[i] & up[j]
                has_lower = down[i] & down[j]
                if has_upper and has_lower:
                    possible = False
                    break
                if has_upper:
                    forced[(i, j)] = SIMU
                elif has_lower:
                    forced[(i, j)] = SIML
                else:
                    pairs.append((i, j))
            if not possible:
                break
        if not possible:
            continue
        for choice in range(1 << len(pairs)):
            table = dict(forced)
            for b, (i, j) in enumerate(pairs):
                table[(i, j)] = SIMU if (choice >> b) & 1 else SIML

            def rel_of(a, b, _up=up, _table=table):
                if (_up[a] >> b) & 1:
                    return LT
                if (_up[b] >> a) & 1:
                    return GT
                return _table[(a, b) if a < b else (b, a)]

            try:
                out.append(ExtendedPoset(elements, rel_of))
            except PosetError:
                continue
    return out


# -- tree-derived instances ----------------------------------------------


def random_tree_poset(rng: random.Random, max_points: int = 12) -> ExtendedPoset:
    """Points on a random oriented tree, ordered by the component rule.

    Elements are small integers; the manifold point of element i travels in
    the poset via the ``points`` attribute set on the result.
    """
    n_nodes = rng.randint(2, 9)
    tree = OrderTree()
    tree.add_node(0)
    for v in range(1, n_nodes):
        tree.add_node(v)
        parent = rng.randrange(v)
        if rng.random() < 0.5:
            tree.add_arc(("e", v), parent, v)
        else:
            tree.add_arc(("e", v), v, parent)
    k = rng.randint(2, max_points)
    seen = set()
    points = []
    arcs = tree.sorted_arc_ids()
    while len(points) < k and len(seen) < 64 * len(arcs):
        aid = arcs[rng.randrange(len(arcs))]
        t = Fraction(rng.randint(1, 15), 16)
        if (aid, t) in seen:
            continue
        seen.add((aid, t))
        points.append(("arc", aid, t))
    graph = manifold_graph(tree)

    def rel_of(i, j):
        return manifold_order(tree, points[i], points[j], graph)

    poset = ExtendedPoset(tuple(range(len(points))), rel_of)
    poset.points = points
    return poset


def tree_corpus(count: int = 100, seed: int = 20260815, max_points: int = 12) -> List[ExtendedPoset]:
    rng = random.Random(seed)
    return [random_tree_poset(rng, max_points) for _ in range(count)]


# -- the relation-law suite ------------------------------------------------


def run_relation_suite(p: ExtendedPoset) -> dict:
    """All relation laws on one poset; empty problem lists mean pass.

    Covers the four between-set laws, totality of travel order on every
    between set (the chain corollary; between_set raises internally when it
    fails), tag propagation along the order, and the equivalence-relation
    laws for chain-relatedness.
    """
    problems: dict = {
        "theorem": p.verify_between_theorem(limit=3),
        "travel": [],
        "propagation": p.check_lemma_propagation(),
        "o_equivalence": [],
    }
    for a, b in p.iter_pairs():
        try:
            chain = p.between_set(a, b)
        except PosetError as err:
            problems["travel"].append({"pair": (a, b), "error": str(err)})
            continue
        if chain.members[0] != a or chain.members[-1] != b:
            problems["travel"].append({"pair": (a, b), "error": "endpoints misplaced"})
    problems["o_equivalence"] = p.verify_o_equivalence(limit=3)
    problems["ok"] = not any(problems[key] for key in ("theorem", "travel", "propagation", "o_equivalence"))
    return problems


def run_corpus_suite(max_n: int = 5, tree_count: int = 100, seed: int = 20260815) -> dict:
    """Criterion sweep: the law suite over the full small-scale enumeration
    plus the randomized tree-derived corpus."""
    counts = {}
    failures = []
    checked = 0
    for n in range(max_n + 1):
        base = count_base_orders(n)
        if n in BASE_ORDER_COUNTS and base != BASE_ORDER_COUNTS[n]:
            failures.append({"stage": "enumeration", "n": n, "got": base, "want": BASE_ORDER_COUNTS[n]})
        posets = all_extended_posets(n)
        counts[n] = {"base": base, "extended": len(posets)}
        for p in posets:
            checked += 1
            rep = run_relation_suite(p)
            if not rep["ok"]:
                failures.append({"stage": "enumerated", "n": n, "table": p.relations_table(), "report": rep})
    for idx, p in enumerate(tree_corpus(tree_count, seed)):
        checked += 1
        rep = run_relation_suite(p)
        if not rep["ok"]:
            failures.append({"stage": "tree", "index": idx, "report": rep})
    return {"ok": not failures, "checked": checked, "counts": counts, "failures": failures[:5]}
