"""Tagged partial orders and their between-set geometry.

A tagged poset carries, for every pair of distinct elements, exactly one of
four relations: less-than, greater-than, upward-similar, or downward-similar.
The similarity tags record how an incomparable pair sits relative to common
bounds: upward-similar pairs face each other (they admit a common upper bound,
or are formally declared to), downward-similar pairs sit back to back.  A
tagging is admissible when the comparabilities are transitive, every tag is
consistent with the bounds that actually exist, and the whole assignment is
acyclic: whenever x is upward-similar to y and downward-similar to z, z must
lie strictly above y.

The central tool is the between set B(a, b): the endpoints plus every element
lying between them in the tagged sense.  Between sets are totally ordered by
travel order (x comes before y when x lies in B(a, y)) and decompose into
similarity classes, the maximal runs whose pairwise between sets are chains in
the underlying order.  Finitely many classes is what makes a pair tame enough
to lay out on a line.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Iterator, Sequence

EQ = 0
LT = 1
GT = 2
SIMU = 3
SIML = 4

REL_NAMES = {EQ: "eq", LT: "lt", GT: "gt", SIMU: "simu", SIML: "siml"}
REL_CODES = {name: code for code, name in REL_NAMES.items()}
SWAP = {EQ: EQ, LT: GT, GT: LT, SIMU: SIMU, SIML: SIML}

Element = Hashable


class PosetError(ValueError):
    """Raised when a relation table violates an admissibility constraint."""


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def between_by_codes(rac: int, rab: int, rbc: int) -> bool:
    """Whether b lies strictly between a and c, from the three pair codes.

    rac, rab, rbc are the codes of (a, c), (a, b) and (b, c).  Betweenness
    only looks at these three relations, so it restricts cleanly to any
    sub-poset containing the triple.
    """
    if rac == LT:
        return (rab == LT and rbc == LT) or (rab == SIMU and rbc == SIML)
    if rac == GT:
        return (rab == GT and rbc == GT) or (rab == SIML and rbc == SIMU)
    if rac == SIML:
        return (rab == SIML and rbc == LT) or (rbc == SIML and rab == GT)
    if rac == SIMU:
        return (rab == SIMU and rbc == GT) or (rbc == SIMU and rab == LT)
    raise PosetError("betweenness needs two distinct endpoints")


@dataclass(frozen=True)
class BetweenChain:
    """A between set listed in travel order, split into similarity classes."""

    a: Element
    b: Element
    members: tuple
    classes: tuple

    @property
    def class_count(self) -> int:
        return len(self.classes)


class ExtendedPoset:
    """A finite tagged poset, validated eagerly on construction.

    ``rel_of`` is called once per ordered pair of distinct elements and must
    return a relation code (or name).  Construction fails with PosetError if
    the table is not total, not swap-consistent, not transitive, inconsistent
    with realized bounds, or not acyclic.
    """

    def __init__(self, elements: Sequence[Element], rel_of: Callable[[Element, Element], int]):
        self.elements: tuple = tuple(elements)
        self._idx = {e: i for i, e in enumerate(self.elements)}
        if len(self._idx) != len(self.elements):
            raise PosetError("duplicate elements")
        n = len(self.elements)
        m = [[EQ] * n for _ in range(n)]
        for i, a in enumerate(self.elements):
            for j, b in enumerate(self.elements):
                if i == j:
                    continue
                r = rel_of(a, b)
                if isinstance(r, str):
                    r = REL_CODES[r]
                if r not in (LT, GT, SIMU, SIML):
                    raise PosetError(f"pair ({a!r}, {b!r}) has no admissible relation")
                m[i][j] = r
        self._m = m
        self._up = [0] * n    # j bits with i < j
        self._down = [0] * n
        self._simu = [0] * n
        self._siml = [0] * n
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                r = m[i][j]
                if m[j][i] != SWAP[r]:
                    a, b = self.elements[i], self.elements[j]
                    raise PosetError(f"pair ({a!r}, {b!r}) disagrees with its swap")
                if r == LT:
                    self._up[i] |= 1 << j
                elif r == GT:
                    self._down[i] |= 1 << j
                elif r == SIMU:
                    self._simu[i] |= 1 << j
                else:
                    self._siml[i] |= 1 << j
        self._comp = [self._up[i] | self._down[i] for i in range(n)]
        self._bet: dict = {}
        self._validate()

    # -- validation -------------------------------------------------

    def _validate(self) -> None:
        n = len(self.elements)
        for i in range(n):
            for j in _bits(self._up[i]):
                stray = self._up[j] & ~self._up[i]
                if stray:
                    k = next(_bits(stray))
                    a, b, c = self.elements[i], self.elements[j], self.elements[k]
                    raise PosetError(f"comparabilities not transitive: {a!r} < {b!r} < {c!r} but not {a!r} < {c!r}")
        for i in range(n):
            for j in _bits(self._simu[i] | self._siml[i]):
                if j < i:
                    continue
                has_upper = bool(self._up[i] & self._up[j])
                has_lower = bool(self._down[i] & self._down[j])
                a, b = self.elements[i], self.elements[j]
                if has_upper and has_lower:
                    raise PosetError(f"pair ({a!r}, {b!r}) has both kinds of common bound; the base order is not acyclic")
                tag = self._m[i][j]
                if has_upper and tag == SIML:
                    raise PosetError(f"pair ({a!r}, {b!r}) tagged downward-similar but shares an upper bound")
                if has_lower and tag == SIMU:
                    raise PosetError(f"pair ({a!r}, {b!r}) tagged upward-similar but shares a lower bound")
        for i in range(n):
            u, low = self._simu[i], self._siml[i]
            if not (u and low):
                continue
            for j in _bits(u):
                bad = low & ~self._up[j]
                if bad:
                    k = next(_bits(bad))
                    a, b, c = self.elements[i], self.elements[j], self.elements[k]
                    raise PosetError(
                        f"tagging not acyclic: {a!r} ~u {b!r} and {a!r} ~l {c!r} require {c!r} > {b!r}, got "
                        f"{REL_NAMES[self._m[k][j]]}"
                    )

    # -- basic queries ----------------------------------------------

    @property
    def n(self) -> int:
        return len(self.elements)

    def index(self, a: Element) -> int:
        try:
            return self._idx[a]
        except KeyError:
            raise PosetError(f"{a!r} is not an element") from None

    def rel(self, a: Element, b: Element) -> int:
        return self._m[self.index(a)][self.index(b)]

    def classify(self, a: Element, b: Element) -> str:
        return REL_NAMES[self.rel(a, b)]

    def up_set(self, a: Element) -> tuple:
        return tuple(self.elements[j] for j in _bits(self._up[self.index(a)]))

    def down_set(self, a: Element) -> tuple:
        return tuple(self.elements[j] for j in _bits(self._down[self.index(a)]))

    def iter_pairs(self) -> Iterator[tuple]:
        for i in range(self.n):
            for j in range(i + 1, self.n):
                yield self.elements[i], self.elements[j]

    def is_trivial_extension(self) -> bool:
        """At least one incomparable pair, and all of them carry one tag type."""
        saw_u = any(self._simu)
        saw_l = any(self._siml)
        return (saw_u or saw_l) and not (saw_u and saw_l)

    # -- between sets -----------------------------------------------

    def is_between(self, a: Element, b: Element, c: Element) -> bool:
        """Whether b lies in B(a, c).  Endpoints count as members."""
        i, j, k = self.index(a), self.index(b), self.index(c)
        if i == k:
            raise PosetError("between set requires two distinct endpoints")
        if j == i or j == k:
            return True
        return between_by_codes(self._m[i][k], self._m[i][j], self._m[j][k])

    def _between_mask(self, i: int, j: int) -> int:
        key = (i, j) if i < j else (j, i)
        mask = self._bet.get(key)
        if mask is None:
            mask = (1 << i) | (1 << j)
            rij = self._m[i][j]
            for k in range(self.n):
                if k != i and k != j and between_by_codes(rij, self._m[i][k], self._m[k][j]):
                    mask |= 1 << k
            self._bet[key] = mask
        return mask

    def _is_chain(self, mask: int) -> bool:
        for k in _bits(mask):
            if mask & ~(self._comp[k] | (1 << k)):
                return False
        return True

    def o_related(self, a: Element, b: Element) -> bool:
        """Whether B(a, b) is a chain in the underlying order."""
        i, j = self.index(a), self.index(b)
        if i == j:
            return True
        return self._is_chain(self._between_mask(i, j))

    def between_members(self, a: Element, b: Element) -> tuple:
        """Members of B(a, b) in element order, without the travel sort."""
        i, j = self.index(a), self.index(b)
        if i == j:
            raise PosetError("between set requires two distinct endpoints")
        return tuple(self.elements[k] for k in _bits(self._between_mask(i, j)))

    def between_set(self, a: Element, b: Element) -> BetweenChain:
        i, j = self.index(a), self.index(b)
        if i == j:
            raise PosetError("between set requires two distinct endpoints")
        mask = self._between_mask(i, j)
        members = list(_bits(mask))
        rank = {}
        for k in members:
            rank[k] = 1 if k == i else (1 << self.n) + self._popcount(self._between_mask(i, k) & mask)
        members.sort(key=rank.__getitem__)

        def precedes(u: int, v: int) -> bool:
            # u comes no later than v in travel order: u lies in B(a, v)
            if v == i:
                return False
            return bool(self._between_mask(i, v) & (1 << u))

        for p in range(len(members)):
            for q in range(p + 1, len(members)):
                x, y = members[p], members[q]
                if not precedes(x, y) or precedes(y, x):
                    raise PosetError(
                        f"travel order on B({a!r}, {b!r}) is not total at ({self.elements[x]!r}, {self.elements[y]!r})"
                    )
        if members[0] != i or members[-1] != j:
            raise PosetError(f"travel order on B({a!r}, {b!r}) does not run endpoint to endpoint")
        classes: list = []
        current = [members[0]]
        for k in members[1:]:
            if self._is_chain(self._between_mask(current[-1], k)):
                current.append(k)
            else:
                classes.append(current)
                current = [k]
        classes.append(current)
        for p, cp in enumerate(classes):
            for q, cq in enumerate(classes):
                if q < p:
                    continue
                for x in cp:
                    for y in cq:
                        if x == y:
                            continue
                        related = self._is_chain(self._between_mask(x, y))
                        if related != (p == q):
                            raise PosetError(
                                f"similarity classes of B({a!r}, {b!r}) are not travel intervals at "
                                f"({self.elements[x]!r}, {self.elements[y]!r})"
                            )
        return BetweenChain(
            a=a,
            b=b,
            members=tuple(self.elements[k] for k in members),
            classes=tuple(tuple(self.elements[k] for k in cls) for cls in classes),
        )

    @staticmethod
    def _popcount(mask: int) -> int:
        return mask.bit_count()

    # -- checks ------------------------------------------------------

    def check_strongly_connected(self) -> list:
        """Every similarity tag must be backed by a realized bound.

        Returns the list of formally tagged pairs with no matching bound;
        empty means every incomparable pair genuinely shares a bound of the
        tagged kind.
        """
        out = []
        for i in range(self.n):
            for j in _bits(self._simu[i]):
                if j > i and not (self._up[i] & self._up[j]):
                    out.append({"pair": (self.elements[i], self.elements[j]), "tag": "simu", "missing": "common upper bound"})
            for j in _bits(self._siml[i]):
                if j > i and not (self._down[i] & self._down[j]):
                    out.append({"pair": (self.elements[i], self.elements[j]), "tag": "siml", "missing": "common lower bound"})
        return out

    def check_acyclic(self) -> list:
        """The tagging must compose acyclically through shared elements.

        Whenever x is upward-similar to y and downward-similar to z, y must
        sit strictly below z.  Construction already rejects tables that
        break this, so a live poset reports an empty list; the checker
        exists so the law can be audited apart from construction.
        """
        out = []
        for i in range(self.n):
            for j in _bits(self._simu[i]):
                for k in _bits(self._siml[i]):
                    if not (self._up[j] >> k) & 1:
                        out.append({
                            "x": self.elements[i], "y": self.elements[j], "z": self.elements[k],
                            "got": REL_NAMES[self._m[j][k]],
                        })
        return out

    def check_lemma_propagation(self) -> list:
        """Similarity tags must propagate along the order.

        Downward-similar pairs stay downward-similar when one side moves up;
        upward-similar pairs stay upward-similar when one side moves down.
        This is a consequence of admissibility, so violations mean the table
        was built wrong.
        """
        out = []
        for i in range(self.n):
            for j in _bits(self._siml[i]):
                bad = self._up[j] & ~self._siml[i] & ~(1 << i)
                for k in _bits(bad):
                    out.append({
                        "rule": "siml-up",
                        "x": self.elements[i], "y": self.elements[j], "z": self.elements[k],
                        "got": REL_NAMES[self._m[i][k]],
                    })
            for j in _bits(self._simu[i]):
                bad = self._down[j] & ~self._simu[i] & ~(1 << i)
                for k in _bits(bad):
                    out.append({
                        "rule": "simu-down",
                        "x": self.elements[i], "y": self.elements[j], "z": self.elements[k],
                        "got": REL_NAMES[self._m[i][k]],
                    })
        return out

    def verify_o_equivalence(self, limit: int = 100) -> list:
        """Chain-relatedness is an equivalence on every between set.

        Symmetry is global.  Transitivity is only claimed within a between
        set; across unrelated regions it genuinely fails, which is why the
        similarity classes partition between sets and nothing larger.
        """
        out = []
        n = self.n
        orel = [1 << i for i in range(n)]
        for i in range(n):
            for j in range(n):
                if i != j and self._is_chain(self._between_mask(i, j)):
                    orel[i] |= 1 << j
        for i in range(n):
            for j in _bits(orel[i]):
                if not (orel[j] >> i) & 1:
                    out.append({"law": "symmetric", "at": (self.elements[i], self.elements[j])})
        for i in range(n):
            for j in range(i + 1, n):
                members = self._between_mask(i, j)
                for x in _bits(members):
                    partners = orel[x] & members
                    for y in _bits(partners):
                        stray = (orel[y] & members) & ~partners
                        if stray:
                            z = next(_bits(stray))
                            out.append({
                                "law": "transitive",
                                "between": (self.elements[i], self.elements[j]),
                                "at": (self.elements[x], self.elements[y], self.elements[z]),
                            })
                        if len(out) >= limit:
                            return out
        return out

    def verify_between_theorem(self, limit: int = 100) -> list:
        """Check the four structural laws of between sets on every tuple.

        1. B(a, b) is covered by B(a, c) and B(c, b) for any c.
        2. c lies in B(a, b) exactly when B(a, b) splits as that union.
        3. When c lies in B(a, b), the two halves meet only in c.
        4. If b is between a and c, and c is between b and d, then both b and
           c are between a and d.
        """
        n = self.n
        bet = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i != j:
                    bet[i][j] = self._between_mask(i, j)
        out = []

        def note(prop, **kw):
            if len(out) < limit:
                rec = {"property": prop}
                rec.update(kw)
                out.append(rec)

        for a in range(n):
            for b in range(n):
                if a == b:
                    continue
                for c in range(n):
                    if c == a or c == b:
                        continue
                    union = bet[a][c] | bet[c][b]
                    if bet[a][b] & ~union:
                        note(1, a=self.elements[a], b=self.elements[b], c=self.elements[c])
                    inside = bool(bet[a][b] & (1 << c))
                    if inside != (bet[a][b] == union):
                        note(2, a=self.elements[a], b=self.elements[b], c=self.elements[c])
                    if inside and (bet[a][c] & bet[c][b]) != (1 << c):
                        note(3, a=self.elements[a], b=self.elements[b], c=self.elements[c])
        # law 4 via membership transforms: T[x][a] is the set of d with x in B(a, d)
        T = [[0] * n for _ in range(n)]
        for a in range(n):
            for d in range(n):
                if a == d:
                    continue
                mask = bet[a][d]
                for x in _bits(mask):
                    T[x][a] |= 1 << d
        for b in range(n):
            for c in range(n):
                if b == c:
                    continue
                dmask = T[c][b] & ~(1 << b) & ~(1 << c)
                if not dmask:
                    continue
                for a in range(n):
                    if a == b or a == c:
                        continue
                    if not (bet[a][c] & (1 << b)):
                        continue
                    bad = dmask & ~(T[b][a] & T[c][a]) & ~(1 << a)
                    for d in _bits(bad):
                        note(4, a=self.elements[a], b=self.elements[b], c=self.elements[c], d=self.elements[d])
        return out

    # -- derived posets ----------------------------------------------

    def restrict(self, subset: Iterable[Element]) -> "ExtendedPoset":
        keep = tuple(subset)
        return ExtendedPoset(keep, self.rel)

    def relations_table(self) -> dict:
        """Relation names per unordered pair, for serialization."""
        return {(a, b): REL_NAMES[self.rel(a, b)] for a, b in self.iter_pairs()}


def from_pairs(elements: Sequence[Element], pairs: Iterable[tuple]) -> ExtendedPoset:
    """Build a poset from one (a, relation, b) triple per unordered pair."""
    table: dict = {}
    for a, rel, b in pairs:
        code = REL_CODES[rel] if isinstance(rel, str) else rel
        if (a, b) in table or (b, a) in table:
            raise PosetError(f"pair ({a!r}, {b!r}) given twice")
        table[(a, b)] = code
        table[(b, a)] = SWAP[code]

    def rel_of(x, y):
        try:
            return table[(x, y)]
        except KeyError:
            raise PosetError(f"pair ({x!r}, {y!r}) missing from the table") from None

    return ExtendedPoset(elements, rel_of)
