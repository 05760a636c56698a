"""Group models: word arithmetic, canonical balls, and order machinery.

Each model exposes the same small surface: ``identity``, ``mult``, ``inv``,
``ball(r)`` (a deterministic enumeration of the word-metric ball, sorted by
length and then by a fixed tie-break), ``format`` for reports, and
``components`` for the little predicate language used by cone documents.

The free group additionally knows how to sign a word through its lower
central series: embed each generator g_i as 1 + X_i in the ring of formal
power series in non-commuting variables, expand the word, and read the sign
of the first nonzero coefficient in degree-then-lexicographic monomial
order.  The expansion is truncated adaptively; degree 1 (exponent sums)
settles almost every word, and commutator words deepen only as far as the
first surviving coefficient.
"""

from __future__ import annotations

from typing import Iterator


class GroupError(ValueError):
    """Raised for malformed elements or unsupported model operations."""


_LETTERS = "abcdghijkmnpqruvwxyz"


class Z:
    """The integers with generator 1."""

    name = "z"

    identity = 0

    def mult(self, a: int, b: int) -> int:
        return a + b

    def inv(self, a: int) -> int:
        return -a

    def ball(self, r: int) -> list:
        return sorted(range(-r, r + 1), key=lambda n: (abs(n), n))

    def format(self, a: int) -> str:
        return str(a)

    def components(self, a: int) -> tuple:
        return (a,)


class Zk:
    """Free abelian group of rank k, word metric from the standard basis."""

    def __init__(self, k: int):
        if k < 1:
            raise GroupError("rank must be positive")
        self.k = k
        self.name = f"z{k}"
        self.identity = (0,) * k

    def mult(self, a: tuple, b: tuple) -> tuple:
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a: tuple) -> tuple:
        return tuple(-x for x in a)

    def ball(self, r: int) -> list:
        out: list = []

        def grow(prefix: tuple, budget: int) -> None:
            if len(prefix) == self.k - 1:
                for last in range(-budget, budget + 1):
                    out.append(prefix + (last,))
                return
            for x in range(-budget, budget + 1):
                grow(prefix + (x,), budget - abs(x))

        grow((), r)
        return sorted(out, key=lambda v: (sum(abs(x) for x in v), v))

    def format(self, a: tuple) -> str:
        return "(" + ",".join(str(x) for x in a) + ")"

    def components(self, a: tuple) -> tuple:
        return a


class FreeGroup:
    """Free group of rank k; elements are reduced words of nonzero letters.

    Letter i in 1..k is the i-th generator, -i its inverse.
    """

    def __init__(self, k: int = 2):
        if not 1 <= k <= len(_LETTERS):
            raise GroupError("unsupported rank")
        self.k = k
        self.name = f"free{k}"
        self.identity: tuple = ()
        self._sign_cache: dict = {}

    def mult(self, a: tuple, b: tuple) -> tuple:
        i = len(a)
        j = 0
        while i > 0 and j < len(b) and a[i - 1] == -b[j]:
            i -= 1
            j += 1
        return a[:i] + b[j:]

    def inv(self, a: tuple) -> tuple:
        return tuple(-x for x in reversed(a))

    def _letter_order(self) -> list:
        out = []
        for i in range(1, self.k + 1):
            out.extend((i, -i))
        return out

    def ball(self, r: int) -> list:
        letters = self._letter_order()
        out: list = [()]
        layer: list = [()]
        for _ in range(r):
            nxt = []
            for w in layer:
                for x in letters:
                    if w and w[-1] == -x:
                        continue
                    nxt.append(w + (x,))
            out.extend(nxt)
            layer = nxt
        return out

    def format(self, a: tuple) -> str:
        if not a:
            return "e"
        chars = []
        for x in a:
            c = _LETTERS[abs(x) - 1]
            chars.append(c if x > 0 else c.upper())
        return "".join(chars)

    def components(self, a: tuple) -> tuple:
        raise GroupError("free-group elements have no coordinate components")

    # -- series sign --------------------------------------------------

    def _series(self, w: tuple, deg: int) -> dict:
        # fold the word into a truncated series over non-commuting variables
        poly = {(): 1}
        for x in w:
            v = abs(x) - 1
            if x > 0:
                factor = {(): 1, (v,): 1}
            else:
                factor = {(v,) * d: (-1) ** d for d in range(deg + 1)}
            out: dict = {}
            for ma, ca in poly.items():
                for mb, cb in factor.items():
                    if len(ma) + len(mb) > deg:
                        continue
                    m = ma + mb
                    c = out.get(m, 0) + ca * cb
                    if c:
                        out[m] = c
                    elif m in out:
                        del out[m]
            poly = out
        return poly

    def order_sign(self, w: tuple, max_degree: int = 8) -> int:
        """Sign of w in the series order: +1, -1, or 0 for the identity."""
        if not w:
            return 0
        cached = self._sign_cache.get(w)
        if cached is not None:
            return cached
        sums = [0] * self.k
        for x in w:
            sums[abs(x) - 1] += 1 if x > 0 else -1
        sign = 0
        for s in sums:
            if s:
                sign = 1 if s > 0 else -1
                break
        deg = 2
        while not sign:
            if deg > max_degree:
                raise GroupError(f"series sign undecided to degree {max_degree} for {self.format(w)}")
            poly = self._series(w, deg)
            for m in sorted((m for m in poly if m), key=lambda m: (len(m), m)):
                sign = 1 if poly[m] > 0 else -1
                break
            deg += 1
        self._sign_cache[w] = sign
        return sign

    # -- ball-restricted product sweep ---------------------------------

    def bounded_products(self, xs: list, ys: list, r: int) -> Iterator[tuple]:
        """All (g, h, g*h) with g in xs, h in ys and the product in ball(r).

        Factors longer than the budget allows must cancel at the junction, so
        right factors are bucketed by the prefix the cancellation forces.
        """
        buckets: dict = {}
        for h in ys:
            b = len(h)
            for c in range(min(b, r) + 1):
                buckets.setdefault((b, h[:c]), []).append(h)
        lengths = sorted({len(h) for h in ys})
        for g in xs:
            a = len(g)
            for b in lengths:
                over = a + b - r
                cmin = 0 if over <= 0 else (over + 1) // 2
                if cmin > min(a, b):
                    continue
                need = tuple(-g[a - 1 - t] for t in range(cmin))
                for h in buckets.get((b, need), ()):
                    z = self.mult(g, h)
                    if len(z) <= r:
                        yield g, h, z


class InfiniteDihedral:
    """The infinite dihedral group: pairs (n, eps) standing for t^n s^eps.

    t is the translation, s the involution with s t s = t^-1; the word
    length over {t, s} is |n| + eps.
    """

    name = "dihedral"

    identity = (0, 0)

    def mult(self, a: tuple, b: tuple) -> tuple:
        n, alpha = a
        m, beta = b
        return (n + m if alpha == 0 else n - m, alpha ^ beta)

    def inv(self, a: tuple) -> tuple:
        n, alpha = a
        return (-n, 0) if alpha == 0 else a

    def ball(self, r: int) -> list:
        out = [(n, 0) for n in range(-r, r + 1)]
        out.extend((n, 1) for n in range(-(r - 1), r))
        return sorted(out, key=lambda a: (abs(a[0]) + a[1], a[0], a[1]))

    def format(self, a: tuple) -> str:
        n, alpha = a
        parts = []
        if n:
            parts.append(f"t^{n}" if n != 1 else "t")
        if alpha:
            parts.append("s")
        return "*".join(parts) if parts else "e"

    def components(self, a: tuple) -> tuple:
        return a


class TableGroup:
    """A finite group given by an explicit multiplication table.

    Every ball is the whole group, so radius arguments are ignored; the
    table is validated for closure, identity, inverses, and associativity.
    """

    def __init__(self, elements: list, products: list, identity):
        self.elements = list(elements)
        self._idx = {e: i for i, e in enumerate(self.elements)}
        if len(self._idx) != len(self.elements):
            raise GroupError("duplicate table elements")
        if identity not in self._idx:
            raise GroupError("identity missing from the table elements")
        self.identity = identity
        n = len(self.elements)
        if len(products) != n or any(len(row) != n for row in products):
            raise GroupError("product table must be square over the elements")
        self._table = {}
        for i, a in enumerate(self.elements):
            for j, b in enumerate(self.elements):
                c = products[i][j]
                if c not in self._idx:
                    raise GroupError(f"product {a!r}*{b!r} = {c!r} escapes the table")
                self._table[(a, b)] = c
        for a in self.elements:
            if self._table[(self.identity, a)] != a or self._table[(a, self.identity)] != a:
                raise GroupError(f"identity law fails at {a!r}")
            if not any(self._table[(a, b)] == self.identity for b in self.elements):
                raise GroupError(f"{a!r} has no inverse")
        for a in self.elements:
            for b in self.elements:
                for c in self.elements:
                    if self._table[(self._table[(a, b)], c)] != self._table[(a, self._table[(b, c)])]:
                        raise GroupError(f"associativity fails at {a!r}, {b!r}, {c!r}")

    def mult(self, a, b):
        try:
            return self._table[(a, b)]
        except KeyError:
            raise GroupError(f"{a!r} or {b!r} is not a table element") from None

    def inv(self, a):
        for b in self.elements:
            if self._table[(a, b)] == self.identity:
                return b
        raise GroupError(f"{a!r} is not a table element")

    def ball(self, r: int) -> list:
        return list(self.elements)

    def format(self, a) -> str:
        return str(a)

    def components(self, a) -> tuple:
        return (self._idx[a],)


def make_group(family: str, k: int | None = None):
    if family == "z":
        return Z()
    if family == "zk":
        return Zk(k or 2)
    if family == "free":
        return FreeGroup(k or 2)
    if family == "dihedral":
        return InfiniteDihedral()
    raise GroupError(f"unknown group family {family!r}")
