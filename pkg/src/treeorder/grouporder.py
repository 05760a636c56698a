"""Left-invariant orders on groups described by cone partitions.

A cone structure splits a group into the identity, a positive cone P, its
inverse, and two self-inverse similarity cones U and L.  The induced relation
between g and h reads off which piece g^-1 h falls in: positive means g < h,
U means the pair faces a common upper bound, L a common lower bound.  Six
axioms make this a well-defined tagged order: P meets its inverse nowhere
and U, L are symmetric (1); P, L, U absorb products as P*P in P (2), L*P in
L (3), P*U in U (4), U*L in P (5); and the five pieces partition the group
(6).  Axiom sweeps restrict to a finite ball, skipping and counting the
products that escape it.

The element doubling g -> (g-, g, g+) used by the tree construction lives
here too, together with the touching relation R (two doubled points are
R-related when nothing separates them) and the quotient order on cosets of a
normal, completely convex subgroup.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .poset import EQ, GT, LT, REL_NAMES, SIML, SIMU, ExtendedPoset, PosetError, between_by_codes

_VIOLATION_CAP = 25


class ConeError(ValueError):
    """Raised when a cone structure cannot support the requested operation."""


class ConeStructure:
    """A named cone partition over a group model."""

    def __init__(self, name: str, group, in_positive: Callable, in_upper: Callable, in_lower: Callable):
        self.name = name
        self.group = group
        self.in_positive = in_positive
        self.in_upper = in_upper
        self.in_lower = in_lower
        self._side_cache: dict = {}

    def side(self, w) -> str:
        """Which piece w falls in; raises if the pieces fail to partition at w."""
        got = self._side_cache.get(w)
        if got is None:
            hits = []
            if w == self.group.identity:
                hits.append("e")
            if self.in_positive(w):
                hits.append("p")
            if self.in_positive(self.group.inv(w)):
                hits.append("pinv")
            if self.in_upper(w):
                hits.append("u")
            if self.in_lower(w):
                hits.append("l")
            if len(hits) != 1:
                kind = "no piece" if not hits else "pieces " + ",".join(hits)
                raise ConeError(f"cones do not partition at {self.group.format(w)}: {kind}")
            got = hits[0]
            self._side_cache[w] = got
        return got

    def classify(self, g, h) -> int:
        """Relation code between g and h under the induced order."""
        if g == h:
            return EQ
        q = self.group.mult(self.group.inv(g), h)
        s = self.side(q)
        if s == "p":
            return LT
        if s == "pinv":
            return GT
        if s == "u":
            return SIMU
        if s == "l":
            return SIML
        raise ConeError(f"distinct elements with identity quotient: {self.group.format(g)}, {self.group.format(h)}")


def classify_group(cone: ConeStructure, g, h) -> int:
    """Relation code between group elements g and h under the cone order."""
    return cone.classify(g, h)


@dataclass
class ConditionResult:
    condition: int
    description: str
    checked: int = 0
    skipped: int = 0
    violations: list = field(default_factory=list)
    violation_count: int = 0

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def note(self, witness) -> None:
        self.violation_count += 1
        if len(self.violations) < _VIOLATION_CAP:
            self.violations.append(witness)


@dataclass
class ConeReport:
    cone: str
    radius: int
    ball_size: int
    conditions: dict

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.conditions.values())

    def to_jsonable(self, fmt: Callable) -> dict:
        conds = {}
        for idx, c in sorted(self.conditions.items()):
            conds[str(idx)] = {
                "description": c.description,
                "checked": c.checked,
                "skipped": c.skipped,
                "ok": c.ok,
                "violation_count": c.violation_count,
                "violations": [[fmt(x) for x in w] for w in c.violations],
            }
        return {"cone": self.cone, "radius": self.radius, "ball": self.ball_size, "ok": self.ok, "conditions": conds}


def _ball_products(group, xs: list, ys: list, radius: int, bset: set):
    if hasattr(group, "bounded_products"):
        yield from group.bounded_products(xs, ys, radius)
        return
    for g in xs:
        for h in ys:
            z = group.mult(g, h)
            if z in bset:
                yield g, h, z


def verify_cone_axioms(cone: ConeStructure, radius: int, threads: int = 1) -> ConeReport:
    """Sweep all six cone axioms over ball(radius).

    Product axioms only see pairs whose factors and product all lie in the
    ball; everything else is counted as skipped, never silently ignored.
    """
    group = cone.group
    ball = group.ball(radius)
    bset = set(ball)
    pos, upp, low = [], [], []
    for w in ball:
        if cone.in_positive(w):
            pos.append(w)
        if cone.in_upper(w):
            upp.append(w)
        if cone.in_lower(w):
            low.append(w)

    conditions = {
        1: ConditionResult(1, "P misses its inverse set; U and L are inverse-closed"),
        2: ConditionResult(2, "P*P lands in P"),
        3: ConditionResult(3, "L*P lands in L"),
        4: ConditionResult(4, "P*U lands in U"),
        5: ConditionResult(5, "U*L lands in P"),
        6: ConditionResult(6, "pieces partition the ball"),
    }

    c1 = conditions[1]
    c6 = conditions[6]
    for w in ball:
        wi = group.inv(w)
        c1.checked += 1
        if cone.in_positive(w) and cone.in_positive(wi):
            c1.note((w, wi))
        if cone.in_upper(w) != cone.in_upper(wi) or cone.in_lower(w) != cone.in_lower(wi):
            c1.note((w, wi))
        c6.checked += 1
        hits = (w == group.identity) + cone.in_positive(w) + cone.in_positive(wi) + cone.in_upper(w) + cone.in_lower(w)
        if hits != 1:
            c6.note((w,))

    sweeps = [(2, pos, pos, cone.in_positive), (3, low, pos, cone.in_lower), (4, pos, upp, cone.in_upper), (5, upp, low, cone.in_positive)]

    def run_sweep(cond: ConditionResult, xs: list, ys: list, member: Callable) -> None:
        total = len(xs) * len(ys)
        seen = 0
        if threads > 1 and len(xs) >= threads * 4:
            chunks = [xs[i::threads] for i in range(threads)]

            def work(chunk):
                hits = 0
                bad = []
                for g, h, z in _ball_products(group, chunk, ys, radius, bset):
                    hits += 1
                    if not member(z):
                        bad.append((g, h, z))
                return hits, bad

            with ThreadPoolExecutor(max_workers=threads) as pool:
                for hits, bad in pool.map(work, chunks):
                    seen += hits
                    for w in bad:
                        cond.note(w)
        else:
            for g, h, z in _ball_products(group, xs, ys, radius, bset):
                seen += 1
                if not member(z):
                    cond.note((g, h, z))
        cond.checked = seen
        cond.skipped = total - seen

    for idx, xs, ys, member in sweeps:
        run_sweep(conditions[idx], xs, ys, member)

    return ConeReport(cone=cone.name, radius=radius, ball_size=len(ball), conditions=conditions)


def induced_ball_poset(cone: ConeStructure, radius: int) -> ExtendedPoset:
    """The tagged poset the cone induces on ball(radius).

    The axiom sweep must pass first; every quotient the relation table needs
    gets classified on demand, and classification itself raises if the cones
    fail to partition somewhere in ball(2 * radius).
    """
    report = verify_cone_axioms(cone, radius)
    if not report.ok:
        bad = next(idx for idx, c in sorted(report.conditions.items()) if not c.ok)
        raise ConeError(f"cone {cone.name} fails condition ({bad}) at radius {radius}")
    group = cone.group
    ball = group.ball(radius)
    p = ExtendedPoset(ball, cone.classify)
    # left translation cannot change g^-1 h, but a broken group model could;
    # spot-check a deterministic sample
    n = len(ball)
    step = max(1, n // 12)
    sample = ball[::step]
    for f in sample:
        for g in sample:
            for h in sample:
                fg, fh = group.mult(f, g), group.mult(f, h)
                if cone.classify(fg, fh) != cone.classify(g, h):
                    raise ConeError(f"order is not left-invariant at {group.format(f)}, {group.format(g)}, {group.format(h)}")
    return p


# -- element doubling ---------------------------------------------------

MINUS, PLAIN, PLUS = -1, 0, 1
_TAG_TEXT = {MINUS: "-", PLAIN: "", PLUS: "+"}


def aug(g, tag: int = PLAIN) -> tuple:
    return (g, tag)


def plain_of(x: tuple):
    return x[0]


def tag_of(x: tuple) -> int:
    return x[1]


def format_aug(x: tuple, fmt: Callable = str) -> str:
    return fmt(x[0]) + _TAG_TEXT[x[1]]


def blow_up_gplus(p: ExtendedPoset) -> ExtendedPoset:
    """Replace every element g by the ordered triple g- < g < g+.

    Comparabilities spread to all nine tag combinations (x < y forces
    x+ < y-), and similarity tags copy across unchanged.  The result passes
    the same admissibility checks as any tagged poset; in particular the
    doubling never creates a common bound that the base pair lacked.
    """
    elements = []
    for g in p.elements:
        elements.extend(((g, MINUS), (g, PLAIN), (g, PLUS)))

    def rel(x, y):
        g, s = x
        h, t = y
        if g == h:
            return LT if s < t else GT
        return p.rel(g, h)

    return ExtendedPoset(elements, rel)


def r_equivalent(augmented: ExtendedPoset, x: tuple, y: tuple) -> bool:
    """The touching relation: nothing lies between x and y.

    Plain elements touch only themselves; doubled endpoints touch when their
    between set is just the pair.
    """
    if x == y:
        return True
    if tag_of(x) == PLAIN or tag_of(y) == PLAIN:
        return False
    return len(augmented.between_members(x, y)) == 2


def side_toward(p: ExtendedPoset, x, y) -> int:
    """Which doubled tag of x faces y: PLUS when x sits below or faces
    upward toward y, MINUS otherwise."""
    r = p.rel(x, y)
    return PLUS if r in (LT, SIMU) else MINUS


def check_augmented_between(augmented: ExtendedPoset, a, b) -> dict:
    """Verify the doubled between-set signature of the pair's relation.

    Exactly one of three shapes must hold: a < b puts {a+, b-} inside
    B(a-, b+); an upward pair puts {a+, b+} inside B(a-, b-); a downward
    pair puts {a-, b-} inside B(a+, b+).  The other two shapes must fail.
    """

    def contains(lo, hi, members) -> bool:
        got = augmented.between_members(lo, hi)
        return all(m in got for m in members)

    def lt_form(x, y):
        return contains((x, MINUS), (y, PLUS), [(x, PLUS), (y, MINUS)])

    def simu_form(x, y):
        return contains((x, MINUS), (y, MINUS), [(x, PLUS), (y, PLUS)])

    def siml_form(x, y):
        return contains((x, PLUS), (y, PLUS), [(x, MINUS), (y, MINUS)])

    r = augmented.rel((a, PLAIN), (b, PLAIN))
    shapes = {
        "lt(a,b)": lt_form(a, b),
        "lt(b,a)": lt_form(b, a),
        "simu": simu_form(a, b),
        "siml": siml_form(a, b),
    }
    expected = {LT: "lt(a,b)", GT: "lt(b,a)", SIMU: "simu", SIML: "siml"}[r]
    ok = shapes[expected] and not any(v for k, v in shapes.items() if k != expected)
    return {"pair": (a, b), "rel": REL_NAMES[r], "expected": expected, "shapes": shapes, "ok": ok}


def check_no_singleton_classes(augmented: ExtendedPoset, plain_elements: Iterable) -> list:
    """Doubling must thicken every similarity class of a plain pair."""
    plains = list(plain_elements)
    out = []
    for i, a in enumerate(plains):
        for b in plains[i + 1:]:
            chain = augmented.between_set((a, PLAIN), (b, PLAIN))
            for cls in chain.classes:
                if len(cls) == 1:
                    out.append({"pair": (a, b), "singleton": cls[0]})
    return out


# -- subgroups and quotients --------------------------------------------


class SubgroupSpec:
    """A named membership predicate over group elements."""

    def __init__(self, name: str, member: Callable):
        self.name = name
        self.member = member

    def __call__(self, w) -> bool:
        return bool(self.member(w))


@dataclass
class ConvexityReport:
    subgroup: str
    radius: int
    scan_radius: int
    pairs_checked: int
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def check_completely_convex(cone: ConeStructure, sub: SubgroupSpec, radius: int) -> ConvexityReport:
    """Between sets of subgroup pairs must stay inside the subgroup.

    Between membership is a three-point test, so candidates are scanned
    directly over ball(2 * radius) without building the big poset.
    """
    group = cone.group
    ball = group.ball(radius)
    H = [h for h in ball if sub(h)]
    if group.identity not in H:
        raise ConeError(f"subgroup {sub.name} misses the identity")
    for h in H:
        if not sub(group.inv(h)):
            raise ConeError(f"subgroup {sub.name} not inverse-closed at {group.format(h)}")
        for k in H:
            if not sub(group.mult(h, k)):
                raise ConeError(f"subgroup {sub.name} not product-closed at {group.format(h)}, {group.format(k)}")
    big = group.ball(2 * radius)
    violations = []
    pairs = 0
    for i, h1 in enumerate(H):
        for h2 in H[i + 1:]:
            pairs += 1
            rac = cone.classify(h1, h2)
            for c in big:
                if c == h1 or c == h2 or sub(c):
                    continue
                if between_by_codes(rac, cone.classify(h1, c), cone.classify(c, h2)):
                    violations.append({"pair": (h1, h2), "witness": c})
                    break
    return ConvexityReport(subgroup=sub.name, radius=radius, scan_radius=2 * radius, pairs_checked=pairs, violations=violations)


@dataclass
class QuotientResult:
    cone: str
    subgroup: str
    radius: int
    representatives: list
    poset: ExtendedPoset
    relation_witnesses: dict
    uniqueness: list
    property_counts: dict
    property_violations: list
    between_lemma: list
    convexity: ConvexityReport

    @property
    def ok(self) -> bool:
        return not self.uniqueness and not self.property_violations and self.convexity.ok


def quotient_order(cone: ConeStructure, sub: SubgroupSpec, radius: int, lemma_samples: int = 12) -> QuotientResult:
    """Order the cosets of a normal, completely convex subgroup.

    A coset relation is witnessed existentially: g1 H < g2 H when some h in H
    puts g1 below g2 h, and likewise for the similarity tags.  h ranges over
    H inside ball(2 * radius); the identity always witnesses something, so
    every pair gets a relation, and finding two distinct relations for one
    pair is reported as a uniqueness violation.
    """
    group = cone.group
    ball = group.ball(radius)
    for g in ball:
        for h in ball:
            if sub(h) and not sub(group.mult(group.mult(g, h), group.inv(g))):
                raise ConeError(f"subgroup {sub.name} is not normal: conjugate of {group.format(h)} by {group.format(g)} escapes")
    convexity = check_completely_convex(cone, sub, radius)
    if not convexity.ok:
        w = convexity.violations[0]
        raise ConeError(
            f"subgroup {sub.name} is not completely convex: {group.format(w['witness'])} lies between "
            f"{group.format(w['pair'][0])} and {group.format(w['pair'][1])}"
        )

    reps: list = []
    coset_of: dict = {}
    for g in ball:
        for rep in reps:
            if sub(group.mult(group.inv(rep), g)):
                coset_of[g] = rep
                break
        else:
            reps.append(g)
            coset_of[g] = g

    H_search = [h for h in group.ball(2 * radius) if sub(h)]
    rel: dict = {}
    witnesses: dict = {}
    uniqueness: list = []
    for g1 in reps:
        for g2 in reps:
            if g1 == g2:
                continue
            found: dict = {}
            for h in H_search:
                code = cone.classify(g1, group.mult(g2, h))
                if code != EQ and code not in found:
                    found[code] = h
            if len(found) > 1:
                uniqueness.append({"pair": (g1, g2), "relations": {REL_NAMES[c]: h for c, h in found.items()}})
            code = next(iter(found))
            rel[(g1, g2)] = code
            witnesses[(g1, g2)] = found[code]
    # representative independence: any in-ball member of the coset sees the same relations
    for g in ball:
        rep = coset_of[g]
        if g == rep:
            continue
        for other in reps:
            if other == rep:
                continue
            found = set()
            for h in H_search:
                code = cone.classify(g, group.mult(other, h))
                if code != EQ:
                    found.add(code)
            if rel[(rep, other)] not in found or len(found) > 1:
                uniqueness.append({"pair": (g, other), "note": "representative dependence"})

    poset = ExtendedPoset(reps, lambda a, b: rel[(a, b)])

    counts = {1: 0, 2: 0, 3: 0, 4: 0}
    violations: list = []
    n = len(reps)
    for a in reps:
        for b in reps:
            if b == a:
                continue
            rab = rel[(a, b)]
            for c in reps:
                if c == a or c == b:
                    continue
                rbc = rel[(b, c)]
                rac = rel[(a, c)]
                if rab == LT and rbc == LT:
                    counts[1] += 1
                    if rac != LT:
                        violations.append({"clause": 1, "triple": (a, b, c)})
                if rab == SIMU and rbc == SIML:
                    counts[2] += 1
                    if rac != LT:
                        violations.append({"clause": 2, "triple": (a, b, c)})
                if rab == SIMU and rel[(c, b)] == LT:
                    counts[3] += 1
                    if rac != SIMU:
                        violations.append({"clause": 3, "triple": (a, b, c)})
                if rab == SIML and rbc == LT:
                    counts[4] += 1
                    if rac != SIML:
                        violations.append({"clause": 4, "triple": (a, b, c)})

    lemma: list = []
    for f in reps:
        for k in reps:
            if f == k or len(lemma) >= lemma_samples:
                continue
            for g in poset.between_members(f, k):
                if g == f or g == k:
                    continue
                hit = None
                for h in H_search:
                    kh = group.mult(k, h)
                    if kh == f:
                        continue
                    rac = cone.classify(f, kh)
                    for hp in H_search:
                        ghp = group.mult(g, hp)
                        if ghp == f or ghp == kh:
                            continue
                        if between_by_codes(rac, cone.classify(f, ghp), cone.classify(ghp, kh)):
                            hit = (h, hp)
                            break
                    if hit:
                        break
                lemma.append({"triple": (f, g, k), "resolved": bool(hit), "witness": hit})
                if len(lemma) >= lemma_samples:
                    break

    return QuotientResult(
        cone=cone.name,
        subgroup=sub.name,
        radius=radius,
        representatives=reps,
        poset=poset,
        relation_witnesses=witnesses,
        uniqueness=uniqueness,
        property_counts=counts,
        property_violations=violations,
        between_lemma=lemma,
        convexity=convexity,
    )
