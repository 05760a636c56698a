"""Brute-force reference implementations used to freeze expected values.

Everything here is deliberately naive: plain dict-of-pairs relation tables
and quantifier loops, no bitmasks, and no reuse of the package internals,
so the fast implementations have something independent to disagree with.
"""

from __future__ import annotations

import itertools

LABELED_ORDER_COUNTS = (1, 1, 3, 19, 219, 4231)


def naive_strict_orders(n):
    """Yield strict orders on range(n) as {(i, j): True} dicts of i < j."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for choice in itertools.product(("lt", "gt", "none"), repeat=len(pairs)):
        less = {}
        for (i, j), state in zip(pairs, choice):
            if state == "lt":
                less[(i, j)] = True
            elif state == "gt":
                less[(j, i)] = True
        ok = True
        for a in range(n):
            for b in range(n):
                if not less.get((a, b)):
                    continue
                for c in range(n):
                    if less.get((b, c)) and not less.get((a, c)):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            yield less


def count_naive_base_orders(n: int) -> int:
    return sum(1 for _ in naive_strict_orders(n))


def naive_admissible(n, less, tags) -> bool:
    """Axioms for a fully tagged order, written as plain quantifier loops.

    ``less`` maps ordered pairs to True; ``tags`` maps each incomparable
    unordered pair (i < j) to "simu" or "siml".
    """
    for (i, j), tag in tags.items():
        has_upper = any(less.get((i, c)) and less.get((j, c)) for c in range(n))
        has_lower = any(less.get((c, i)) and less.get((c, j)) for c in range(n))
        if has_upper and has_lower:
            return False
        if has_upper and tag != "simu":
            return False
        if has_lower and tag != "siml":
            return False

    def tag_of(a, b):
        return tags.get((a, b) if a < b else (b, a))

    for x in range(n):
        for y in range(n):
            if y == x or tag_of(x, y) != "simu":
                continue
            for z in range(n):
                if z == x or tag_of(x, z) != "siml":
                    continue
                if not less.get((y, z)):
                    return False
    return True


def count_naive_extended(n: int) -> int:
    total = 0
    for less in naive_strict_orders(n):
        free = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if not less.get((i, j)) and not less.get((j, i))
        ]
        for combo in itertools.product(("simu", "siml"), repeat=len(free)):
            tags = dict(zip(free, combo))
            if naive_admissible(n, less, tags):
                total += 1
    return total


def coordinate_rel(c1, c2) -> str:
    """Order of two points on a uniformly oriented line, by coordinate."""
    if c1 == c2:
        return "eq"
    return "lt" if c1 < c2 else "gt"


def coordinate_between(c1, c2, c3) -> bool:
    """Interval membership on the line: is c3 within the travel of c1, c2."""
    lo, hi = min(c1, c2), max(c1, c2)
    return lo <= c3 <= hi
