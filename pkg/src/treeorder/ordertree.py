"""Oriented order trees built from directed rational arcs, and their blow-ups.

A tree here is a finite union of directed arcs glued at nodes.  Every arc is
a copy of the unit interval, directed tail to head; the positive segments are
the arcs, their closed subsegments, and head-to-tail concatenations.  Blown-up
trees carry two extra node kinds: ``open`` marks an arc end that is a genuine
missing point (doubled endpoints accumulate onto it from the outside), and
``openray`` marks the truncated far end of an added ray.  Open ends never
answer point queries.

Doubled endpoints ("caps") are point nodes listed in the adjacency table:
``(cap, arc, side)`` says every neighbourhood of the cap meets the named open
arc end, so connectivity, geodesics and bound searches flow through the pair
even though the cap touches its own arc only.

The blow-up takes any finite tree to a branchless one in three moves: branch
points with traffic on both sides stretch into an interval, sinks and sources
grow a ray in the missing direction, and what is left of each branch point
splits into one endpoint per ray, all but the distinguished ray, whose end
stays open.  The collapse map back to the base tree is kept on the result.

Nodes marked as window boundary are truncation artifacts of an infinite
object; the blow-up leaves them alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable


class TreeError(ValueError):
    """Raised for malformed trees or points that do not exist."""


@dataclass
class NodeRec:
    id: object
    kind: str = "point"  # point | open | openray


@dataclass
class ArcRec:
    id: object
    tail: object
    head: object
    kind: str = "arc"  # arc | blowup | stub
    core: bool = True


def _key(x) -> str:
    return repr(x)


class OrderTree:
    def __init__(self) -> None:
        self.nodes: dict = {}
        self.arcs: dict = {}
        self.adjacencies: list = []
        self.boundary: set = set()

    # -- construction ------------------------------------------------

    def add_node(self, nid, kind: str = "point") -> None:
        if nid in self.nodes:
            raise TreeError(f"duplicate node {nid!r}")
        if kind not in ("point", "open", "openray"):
            raise TreeError(f"bad node kind {kind!r}")
        self.nodes[nid] = NodeRec(nid, kind)

    def add_arc(self, aid, tail, head, kind: str = "arc", core: bool = True) -> None:
        if aid in self.arcs:
            raise TreeError(f"duplicate arc {aid!r}")
        if tail == head:
            raise TreeError(f"arc {aid!r} is degenerate")
        for end in (tail, head):
            if end not in self.nodes:
                raise TreeError(f"arc {aid!r} references missing node {end!r}")
        self.arcs[aid] = ArcRec(aid, tail, head, kind, core)

    def add_adjacency(self, cap, arc, side: str) -> None:
        if side not in ("tail", "head"):
            raise TreeError(f"bad adjacency side {side!r}")
        self.adjacencies.append((cap, arc, side))

    @classmethod
    def build(cls, nodes: Iterable, arcs: Iterable, boundary: Iterable = ()) -> "OrderTree":
        """Plain tree from node ids and (arc_id, tail, head) triples."""
        t = cls()
        for nid in nodes:
            t.add_node(nid)
        for aid, tail, head in arcs:
            t.add_arc(aid, tail, head)
        t.boundary = set(boundary)
        return t

    # -- points -------------------------------------------------------

    def is_point(self, p) -> bool:
        if not isinstance(p, tuple) or not p:
            return False
        if p[0] == "node":
            rec = self.nodes.get(p[1])
            return rec is not None and rec.kind == "point"
        if p[0] == "arc":
            return p[1] in self.arcs and 0 < p[2] < 1
        return False

    def require_point(self, p) -> None:
        if not self.is_point(p):
            raise TreeError(f"not a point of this tree: {p!r}")

    def arc_end_node(self, aid, side: str):
        arc = self.arcs[aid]
        return arc.tail if side == "tail" else arc.head

    # -- degrees ------------------------------------------------------

    def incidences(self, p) -> list:
        """Rays at p as (direction, arc) pairs; "in" rays arrive, "out" leave."""
        self.require_point(p)
        if p[0] == "arc":
            return [("in", p[1]), ("out", p[1])]
        nid = p[1]
        out = []
        for aid in self.sorted_arc_ids():
            arc = self.arcs[aid]
            if arc.head == nid:
                out.append(("in", aid))
            if arc.tail == nid:
                out.append(("out", aid))
        for cap, aid, side in self.adjacencies:
            if cap == nid:
                out.append(("out", aid) if side == "tail" else ("in", aid))
        return out

    def degrees(self, p) -> dict:
        inc = self.incidences(p)
        n_f = sum(1 for d, _ in inc if d == "in")
        n_o = len(inc) - n_f
        if n_f == 1 and n_o == 1:
            kind = "regular"
        elif n_f == 0 and n_o == 0:
            kind = "isolated"
        elif n_o == 0:
            kind = "sink"
        elif n_f == 0:
            kind = "source"
        elif n_f > 1 and n_o > 1:
            kind = "general-branch"
        elif n_f == 1:
            kind = "distinguished-ray-in"
        else:
            kind = "distinguished-ray-out"
        return {"n_f": n_f, "n_o": n_o, "kind": kind}

    def is_branchless(self) -> bool:
        for nid, rec in self.nodes.items():
            if rec.kind != "point":
                continue
            d = self.degrees(("node", nid))
            if d["n_f"] > 1 or d["n_o"] > 1:
                return False
        return True

    def sorted_node_ids(self) -> list:
        return sorted(self.nodes, key=_key)

    def sorted_arc_ids(self) -> list:
        return sorted(self.arcs, key=_key)

    # -- identified graph ----------------------------------------------

    def _end_token(self, aid, side: str):
        nid = self.arc_end_node(aid, side)
        if self.nodes[nid].kind == "point":
            return ("n", nid)
        return ("end", aid, side)

    def _token_merge(self) -> dict:
        parent: dict = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for aid in self.arcs:
            find(self._end_token(aid, "tail"))
            find(self._end_token(aid, "head"))
        for cap, aid, side in self.adjacencies:
            rx, ry = find(("n", cap)), find(("end", aid, side))
            if rx != ry:
                parent[max(rx, ry, key=_key)] = min(rx, ry, key=_key)
        return {t: find(t) for t in list(parent)}

    def identified_graph(self) -> tuple:
        """Token graph with doubled endpoints merged onto their open ends."""
        roots = self._token_merge()
        edges = []
        for aid in self.sorted_arc_ids():
            edges.append((roots[self._end_token(aid, "tail")], roots[self._end_token(aid, "head")], aid))
        return sorted(set(roots.values()), key=_key), edges, roots

    def check_axioms(self) -> dict:
        """Structural axioms: nondegenerate directed arcs, open ends used
        once, adjacencies from points onto open ends, and one tree underneath.

        Connectivity and acyclicity are read off the identified graph, which
        is exactly the statement that no cyclic word of segments cancels.
        """
        problems = []
        used_nodes = set()
        open_use: dict = {}
        for aid, arc in self.arcs.items():
            used_nodes.update((arc.tail, arc.head))
            for side in ("tail", "head"):
                nid = self.arc_end_node(aid, side)
                if self.nodes[nid].kind != "point":
                    open_use.setdefault(nid, []).append((aid, side))
        for nid, uses in open_use.items():
            if len(uses) != 1:
                problems.append(f"open end {nid!r} shared by {len(uses)} arc ends")
        for nid, rec in self.nodes.items():
            if rec.kind != "point" and nid not in used_nodes:
                problems.append(f"open node {nid!r} attached to no arc")
            if rec.kind == "point" and self.arcs and nid not in used_nodes:
                if not any(cap == nid for cap, _, _ in self.adjacencies):
                    problems.append(f"point node {nid!r} is isolated")
        for cap, aid, side in self.adjacencies:
            if self.nodes.get(cap) is None or self.nodes[cap].kind != "point":
                problems.append(f"adjacency source {cap!r} is not a point")
            elif aid not in self.arcs or self.nodes[self.arc_end_node(aid, side)].kind == "point":
                problems.append(f"adjacency target {(aid, side)!r} is not an open end")
        tokens, edges, _ = self.identified_graph()
        if self.arcs:
            comp = {t: t for t in tokens}

            def find(x):
                while comp[x] != x:
                    comp[x] = comp[comp[x]]
                    x = comp[x]
                return x

            merges = 0
            cyclic = False
            for u, v, _aid in edges:
                ru, rv = find(u), find(v)
                if ru == rv:
                    cyclic = True
                else:
                    comp[ru] = rv
                    merges += 1
            if cyclic:
                problems.append("identified arc graph has a cycle")
            if merges != len(tokens) - 1:
                problems.append("identified arc graph is not connected")
        return {"ok": not problems, "problems": problems, "nodes": len(self.nodes), "arcs": len(self.arcs)}


def check_order_tree_axioms(tree: OrderTree) -> dict:
    """Structural axiom report for a tree; see OrderTree.check_axioms."""
    return tree.check_axioms()


# -- point sets -------------------------------------------------------


@dataclass(frozen=True)
class PointSet:
    """Finitely many node points plus spans inside arcs, canonical form.

    Spans are (arc, lo, hi, lo_closed, hi_closed) with lo <= hi in arc
    coordinates; spans reaching 0 or 1 are open there, the node at that end,
    when real, travels in the node part instead.
    """

    nodes: frozenset
    spans: tuple

    @staticmethod
    def _merge(intervals: list) -> list:
        intervals.sort(key=lambda s: (s[0], not s[2]))
        out: list = []
        for lo, hi, lcl, hcl in intervals:
            if lo > hi or (lo == hi and not (lcl and hcl)):
                continue
            if out:
                plo, phi, plcl, phcl = out[-1]
                if lo < phi or (lo == phi and (phcl or lcl)):
                    nhi, nhcl = max((phi, phcl), (hi, hcl))
                    out[-1] = (plo, nhi, plcl, nhcl)
                    continue
            out.append((lo, hi, lcl, hcl))
        return out

    @classmethod
    def make(cls, nodes: Iterable = (), spans: Iterable = ()) -> "PointSet":
        per_arc: dict = {}
        for aid, lo, hi, lcl, hcl in spans:
            if lo > hi:
                lo, hi, lcl, hcl = hi, lo, hcl, lcl
            per_arc.setdefault(aid, []).append((lo, hi, lcl, hcl))
        flat = []
        for aid in sorted(per_arc, key=_key):
            for lo, hi, lcl, hcl in cls._merge(per_arc[aid]):
                flat.append((aid, lo, hi, lcl, hcl))
        return cls(nodes=frozenset(nodes), spans=tuple(flat))

    def is_empty(self) -> bool:
        return not self.nodes and not self.spans

    def union(self, other: "PointSet") -> "PointSet":
        return PointSet.make(self.nodes | other.nodes, list(self.spans) + list(other.spans))

    def intersection(self, other: "PointSet") -> "PointSet":
        mine: dict = {}
        for aid, lo, hi, lcl, hcl in self.spans:
            mine.setdefault(aid, []).append((lo, hi, lcl, hcl))
        spans = []
        for aid, lo, hi, lcl, hcl in other.spans:
            for plo, phi, plcl, phcl in mine.get(aid, ()):
                if lo > plo:
                    nlo, nlcl = lo, lcl
                elif plo > lo:
                    nlo, nlcl = plo, plcl
                else:
                    nlo, nlcl = lo, lcl and plcl
                if hi < phi:
                    nhi, nhcl = hi, hcl
                elif phi < hi:
                    nhi, nhcl = phi, phcl
                else:
                    nhi, nhcl = hi, hcl and phcl
                if nlo < nhi or (nlo == nhi and nlcl and nhcl):
                    spans.append((aid, nlo, nhi, nlcl, nhcl))
        return PointSet.make(self.nodes & other.nodes, spans)

    def contains_point(self, p) -> bool:
        if p[0] == "node":
            return p[1] in self.nodes
        _, aid, t = p
        for said, lo, hi, lcl, hcl in self.spans:
            if said == aid and (lo < t or (lo == t and lcl)) and (t < hi or (t == hi and hcl)):
                return True
        return False

    def minus_point(self, p) -> "PointSet":
        if p[0] == "node":
            return PointSet.make(self.nodes - {p[1]}, self.spans)
        _, aid, t = p
        spans = []
        for said, lo, hi, lcl, hcl in self.spans:
            if said == aid and lo <= t <= hi:
                spans.append((said, lo, t, lcl, False))
                spans.append((said, t, hi, False, hcl))
            else:
                spans.append((said, lo, hi, lcl, hcl))
        return PointSet.make(self.nodes, spans)

    def difference(self, other: "PointSet") -> "PointSet":
        spans = []
        for aid, lo, hi, lcl, hcl in self.spans:
            pieces = [(lo, hi, lcl, hcl)]
            for oaid, olo, ohi, olcl, ohcl in other.spans:
                if oaid != aid:
                    continue
                nxt = []
                for plo, phi, plcl, phcl in pieces:
                    if ohi < plo or (ohi == plo and not (ohcl and plcl)):
                        nxt.append((plo, phi, plcl, phcl))
                        continue
                    if olo > phi or (olo == phi and not (olcl and phcl)):
                        nxt.append((plo, phi, plcl, phcl))
                        continue
                    if plo < olo or (plo == olo and plcl and not olcl):
                        nxt.append((plo, olo, plcl, not olcl))
                    if phi > ohi or (phi == ohi and phcl and not ohcl):
                        nxt.append((ohi, phi, not ohcl, phcl))
                pieces = nxt
            spans.extend((aid, plo, phi, plcl, phcl) for plo, phi, plcl, phcl in pieces)
        return PointSet.make(self.nodes - other.nodes, spans)

    def is_subset(self, other: "PointSet") -> bool:
        return self.intersection(other) == self

    def touches_end(self, tree: OrderTree, kinds: tuple = ("openray",)) -> bool:
        for aid, lo, hi, _lcl, _hcl in self.spans:
            arc = tree.arcs[aid]
            if lo == 0 and tree.nodes[arc.tail].kind in kinds:
                return True
            if hi == 1 and tree.nodes[arc.head].kind in kinds:
                return True
        return False


# -- segments and geodesics -------------------------------------------


@dataclass(frozen=True)
class Segment:
    """A travel-ordered piece of the tree: node atoms and directed spans.

    Span atoms run ("span", arc, t_from, t_to, include_from, include_to) in
    travel order; t_from > t_to means travel against the arc direction.  Ends
    of the whole segment are always real points.
    """

    atoms: tuple

    def first_point(self):
        a = self.atoms[0]
        return ("node", a[1]) if a[0] == "node" else ("arc", a[1], a[2])

    def last_point(self):
        a = self.atoms[-1]
        return ("node", a[1]) if a[0] == "node" else ("arc", a[1], a[3])

    def point_set(self) -> PointSet:
        nodes = []
        spans = []
        for a in self.atoms:
            if a[0] == "node":
                nodes.append(a[1])
            else:
                _, aid, t0, t1, i0, i1 = a
                spans.append((aid, t0, t1, i0, i1))
        return PointSet.make(nodes, spans)


def _point_as_set(p) -> PointSet:
    if p[0] == "node":
        return PointSet.make(nodes=[p[1]])
    return PointSet.make(spans=[(p[1], p[2], p[2], True, True)])


@dataclass(frozen=True)
class CuspRecord:
    segments: tuple  # indices of the overlapping pair
    points: tuple    # the two doubled endpoints determining the cusp
    stub: object     # arc the pair dips into


@dataclass
class StandardGeodesic:
    tree: OrderTree
    segments: list
    cusps: list

    def point_set(self) -> PointSet:
        ps = PointSet.make()
        for s in self.segments:
            ps = ps.union(s.point_set())
        return ps

    def spine_point_set(self) -> PointSet:
        dips = {i for c in self.cusps for i in c.segments}
        ps = PointSet.make()
        for i, s in enumerate(self.segments):
            if i not in dips:
                ps = ps.union(s.point_set())
        for c in self.cusps:
            ps = ps.union(PointSet.make(nodes=[p[1] for p in c.points]))
        return ps

    def verify(self) -> list:
        """Standard shape: far segments disjoint, neighbours meet in a single
        point or overlap in the cusp shape."""
        problems = []
        sets = [s.point_set() for s in self.segments]
        cusp_at = {c.segments[0]: c for c in self.cusps}
        for i in range(len(sets)):
            for j in range(i + 1, len(sets)):
                inter = sets[i].intersection(sets[j])
                if j - i > 1:
                    if not inter.is_empty():
                        problems.append(f"segments {i} and {j} meet")
                    continue
                if i in cusp_at:
                    sigma = sets[i].minus_point(self.segments[i].first_point())
                    tau = sets[j].minus_point(self.segments[j].last_point())
                    if sigma != tau:
                        problems.append(f"cusp pair {i},{j} does not overlap correctly")
                    continue
                f = self.segments[i].last_point()
                if f != self.segments[j].first_point():
                    problems.append(f"segments {i},{j} do not chain")
                elif inter != _point_as_set(f):
                    problems.append(f"segments {i},{j} overlap beyond their joint")
        return problems


def standard_geodesic(tree: OrderTree, x, y, dip: Fraction = Fraction(1, 2)) -> StandardGeodesic:
    """The standard route from x to y: one segment per arc stretch, dipping
    into the shared open end wherever the route crosses a doubled endpoint
    pair, which contributes a cusp."""
    tree.require_point(x)
    tree.require_point(y)
    if x == y:
        raise TreeError("geodesic needs two distinct points")
    if not (0 < dip < 1):
        raise TreeError("dip depth must be strictly inside the arc")
    if x[0] == "arc" and y[0] == "arc" and x[1] == y[1]:
        seg = Segment((("span", x[1], x[2], y[2], True, True),))
        return StandardGeodesic(tree, [seg], [])

    _tokens, edges, roots = tree.identified_graph()
    nbr: dict = {}
    for u, v, aid in edges:
        nbr.setdefault(u, []).append((v, aid, "tail"))
        nbr.setdefault(v, []).append((u, aid, "head"))

    def point_tokens(p) -> set:
        if p[0] == "node":
            return {roots[("n", p[1])]}
        return {roots[tree._end_token(p[1], "tail")], roots[tree._end_token(p[1], "head")]}

    src, dst = point_tokens(x), point_tokens(y)
    parent: dict = {t: None for t in src}
    queue = sorted(src, key=_key)
    hit = None
    while queue:
        u = queue.pop(0)
        if u in dst:
            hit = u
            break
        for v, aid, enter in sorted(nbr.get(u, ()), key=_key):
            if v not in parent:
                parent[v] = (u, aid, enter)
                queue.append(v)
    if hit is None:
        raise TreeError("points are not connected")

    steps = []
    u = hit
    while parent[u] is not None:
        u, aid, enter = parent[u]
        steps.append((aid, enter))
    steps.reverse()

    def opposite(side: str) -> str:
        return "head" if side == "tail" else "tail"

    def side_with_root(aid, tok) -> str:
        for s in ("tail", "head"):
            if roots[tree._end_token(aid, s)] == tok:
                return s
        raise TreeError("route reconstruction failed")

    # route entries: (arc, enter_side or None, exit_side or None); None marks
    # an endpoint sitting inside that arc
    route = [(aid, enter, opposite(enter)) for aid, enter in steps]
    if x[0] == "arc":
        tok = roots[tree._end_token(steps[0][0], steps[0][1])] if steps else hit
        route.insert(0, (x[1], None, side_with_root(x[1], tok)))
    if y[0] == "arc":
        route.append((y[1], side_with_root(y[1], hit), None))

    segments: list = []
    cusps: list = []
    pending: list = []

    def flush():
        nonlocal pending
        if pending:
            segments.append(Segment(tuple(pending)))
            pending = []

    def end_t(side: str) -> Fraction:
        return Fraction(0) if side == "tail" else Fraction(1)

    def real_node(aid, side):
        nid = tree.arc_end_node(aid, side)
        return nid if tree.nodes[nid].kind == "point" else None

    def emit_dip(a_node, b_node, tok):
        """Cross a doubled endpoint pair by dipping into their open end."""
        stub = None
        for said in tree.sorted_arc_ids():
            for sside in ("tail", "head"):
                if roots.get(("end", said, sside)) == tok:
                    stub = (said, sside)
                    break
            if stub:
                break
        if stub is None:
            raise TreeError(f"no open end between {a_node!r} and {b_node!r}")
        said, sside = stub
        open_t = end_t(sside)
        dip_t = dip if open_t == 0 else 1 - dip
        segments.append(Segment((("node", a_node), ("span", said, open_t, dip_t, False, True))))
        segments.append(Segment((("span", said, dip_t, open_t, True, False), ("node", b_node))))
        cusps.append(CuspRecord(
            segments=(len(segments) - 2, len(segments) - 1),
            points=(("node", a_node), ("node", b_node)),
            stub=said,
        ))

    if not route:
        # both endpoints are nodes on one identified junction: a pure dip
        emit_dip(x[1], y[1], hit)
        return StandardGeodesic(tree, segments, cusps)

    # leading adjustment when x is a node not carried by the first arc end
    if x[0] == "node":
        aid0, enter0, _ = route[0]
        en = real_node(aid0, enter0)
        if en is None:
            pending.append(("node", x[1]))
        elif en != x[1]:
            emit_dip(x[1], en, roots[tree._end_token(aid0, enter0)])

    for k, (aid, enter, exit_) in enumerate(route):
        if enter is None:
            t0, c0 = x[2], True
        else:
            t0, c0 = end_t(enter), False
            en = real_node(aid, enter)
            if en is not None:
                pending.append(("node", en))
        if exit_ is None:
            pending.append(("span", aid, t0, y[2], c0, True))
            flush()
            break
        pending.append(("span", aid, t0, end_t(exit_), c0, False))
        xn = real_node(aid, exit_)
        if xn is not None:
            pending.append(("node", xn))
        if k + 1 < len(route):
            nxt_aid, nxt_enter, _ = route[k + 1]
            en2 = real_node(nxt_aid, nxt_enter)
            if xn is not None and en2 is not None:
                flush()
                if xn != en2:
                    emit_dip(xn, en2, roots[tree._end_token(nxt_aid, nxt_enter)])
            elif xn is None and en2 is None:
                raise TreeError("two open ends meet on the route")
            # otherwise a doubled endpoint meets its own open end and the
            # segment continues through the pair
        else:
            # terminal arc with y a node
            if xn == y[1]:
                flush()
            elif xn is None:
                pending.append(("node", y[1]))
                flush()
            else:
                flush()
                emit_dip(xn, y[1], roots[tree._end_token(aid, exit_)])
    return StandardGeodesic(tree, segments, cusps)


def geodesic_spine(tree: OrderTree, x, y, dip: Fraction = Fraction(1, 2)) -> PointSet:
    """Non-dip segments plus the doubled endpoints at each dip: the part of
    the route every path from x to y must cover."""
    return standard_geodesic(tree, x, y, dip).spine_point_set()


def finite_ray_endpoint(tree: OrderTree, x, targets: list, candidates: list) -> dict:
    """Decide where an increasing chain of spines from x converges.

    ``targets`` gives the nested spine chain with union rho.  Candidate a is
    an endpoint when rho sits inside spine(x, a) minus a and the leftover gap
    holds no real node point, so the chain is only missing invisible arc
    continuum; the defining equation rho = spine(x, a) - {a} then holds up to
    that gap, and ``exact`` records where it holds literally.  Several
    endpoints at once are a mutually non-separable family.  A chain whose tip
    marches into a truncated ray end instead escapes the window.
    """
    if not targets:
        raise TreeError("need at least one spine target")
    spines = [geodesic_spine(tree, x, t) for t in targets]
    for a, b in zip(spines, spines[1:]):
        if not a.is_subset(b):
            raise TreeError("spine chain is not nested")
    union = spines[0]
    for s in spines[1:]:
        union = union.union(s)
    hits = []
    exact = []
    bodies = []
    for a in candidates:
        tree.require_point(a)
        if union.contains_point(a):
            continue
        body = geodesic_spine(tree, x, a).minus_point(a)
        if not union.is_subset(body):
            continue
        gap = body.difference(union)
        if gap.nodes:
            continue
        hits.append(a)
        exact.append(gap.is_empty())
        bodies.append(body)
    if hits:
        non_sep = len(hits) > 1 and all(b == bodies[0] for b in bodies[1:])
        return {"outcome": "endpoint", "points": hits, "exact": exact, "non_separable": non_sep}
    tip = targets[-1]
    if tip[0] == "arc" and tip != x:
        geo = standard_geodesic(tree, x, tip)
        last = geo.segments[-1].atoms[-1]
        if last[0] == "span":
            _, aid, t0, t1, _i0, _i1 = last
            side = "head" if t1 > t0 else "tail"
            if tree.nodes[tree.arc_end_node(aid, side)].kind == "openray":
                return {"outcome": "escapes", "points": [], "exact": [], "non_separable": False}
    return {"outcome": "none", "points": [], "exact": [], "non_separable": False}


# -- blow-up ------------------------------------------------------------


class OneManifold(OrderTree):
    """A branchless blown-up tree remembering the collapse map to its base."""

    def __init__(self, base: OrderTree):
        super().__init__()
        self.base = base
        self.phi_nodes: dict = {}
        self.phi_arcs: dict = {}


def denjoy_blowup(tree: OrderTree) -> OneManifold:
    check = tree.check_axioms()
    if not check["ok"]:
        raise TreeError("blow-up needs a well-formed tree: " + "; ".join(check["problems"]))
    m = OneManifold(tree)
    for nid in tree.sorted_node_ids():
        m.add_node(nid, tree.nodes[nid].kind)
        m.phi_nodes[nid] = nid
    for aid in tree.sorted_arc_ids():
        arc = tree.arcs[aid]
        m.add_arc(aid, arc.tail, arc.head, arc.kind, arc.core)
        m.phi_arcs[aid] = ("base-arc", aid)
    m.boundary = set(tree.boundary)
    for cap, aid, side in tree.adjacencies:
        m.add_adjacency(cap, aid, side)

    def branchy_interior():
        out = []
        for nid in m.sorted_node_ids():
            if nid in m.boundary or m.nodes[nid].kind != "point":
                continue
            d = m.degrees(("node", nid))
            if d["kind"] not in ("regular", "isolated"):
                out.append((nid, d))
        return out

    # stretch two-sided branch points into an interval
    for nid, d in branchy_interior():
        if d["n_f"] > 1 and d["n_o"] > 1:
            n_in, n_out = ("blowin", nid), ("blowout", nid)
            m.add_node(n_in)
            m.add_node(n_out)
            m.phi_nodes[n_in] = nid
            m.phi_nodes[n_out] = nid
            for arc in m.arcs.values():
                if arc.head == nid:
                    arc.head = n_in
                if arc.tail == nid:
                    arc.tail = n_out
            aid = ("blow", nid)
            m.add_arc(aid, n_in, n_out, kind="blowup", core=True)
            m.phi_arcs[aid] = ("base-node", nid)
            del m.nodes[nid]
            del m.phi_nodes[nid]

    # grow a ray in the missing direction at sinks and sources; interior
    # leaves become regular here and need no split
    for nid, d in branchy_interior():
        if d["kind"] == "sink":
            far = ("raytop", nid)
            m.add_node(far, "openray")
            aid = ("stub", nid)
            m.add_arc(aid, nid, far, kind="stub", core=False)
            m.phi_arcs[aid] = ("base-node", m.phi_nodes[nid])
            m.phi_nodes[far] = m.phi_nodes[nid]
        elif d["kind"] == "source":
            far = ("raybottom", nid)
            m.add_node(far, "openray")
            aid = ("stub", nid)
            m.add_arc(aid, far, nid, kind="stub", core=False)
            m.phi_arcs[aid] = ("base-node", m.phi_nodes[nid])
            m.phi_nodes[far] = m.phi_nodes[nid]

    # split the remaining branch points into doubled endpoints, one per
    # non-distinguished ray, leaving the distinguished ray end open
    for nid, d in branchy_interior():
        inc = m.incidences(("node", nid))
        ins = [aid for dirn, aid in inc if dirn == "in"]
        outs = [aid for dirn, aid in inc if dirn == "out"]
        if len(ins) == 1:
            dist, dist_side, rays = ins[0], "head", outs
        elif len(outs) == 1:
            dist, dist_side, rays = outs[0], "tail", ins
        else:
            raise TreeError(f"node {nid!r} still branches both ways")
        base_target = m.phi_nodes[nid]
        for aid in rays:
            cap = ("cap", aid, nid)
            m.add_node(cap)
            m.phi_nodes[cap] = base_target
            arc = m.arcs[aid]
            if arc.tail == nid:
                arc.tail = cap
            else:
                arc.head = cap
            m.add_adjacency(cap, dist, dist_side)
        opennode = ("openend", nid)
        m.add_node(opennode, "open")
        m.phi_nodes[opennode] = base_target
        arc = m.arcs[dist]
        if dist_side == "head":
            arc.head = opennode
        else:
            arc.tail = opennode
        del m.nodes[nid]
        del m.phi_nodes[nid]

    if not m.is_branchless():
        raise TreeError("blow-up left a branch point behind")
    return m


def phi_point(m: OneManifold, p) -> tuple:
    """Collapse a blown-up point back to the base tree."""
    if p[0] == "node":
        return ("node", m.phi_nodes[p[1]])
    _, aid, t = p
    kind, target = m.phi_arcs[aid]
    if kind == "base-arc":
        return ("arc", target, t)
    return ("node", target)


def is_core_point(m: OneManifold, p) -> bool:
    """Core points: everything except ray interiors and ray far ends."""
    if p[0] == "arc":
        return m.arcs[p[1]].core
    return m.nodes[p[1]].kind == "point"


def check_blowup(m: OneManifold) -> dict:
    """Branchless, collapse-surjective from the core, and fiber collapse
    reproduces the base arc structure exactly."""
    problems = []
    if not m.is_branchless():
        problems.append("result branches")
    ax = m.check_axioms()
    if not ax["ok"]:
        problems.extend(ax["problems"])
    base = m.base
    covered = set()
    for aid, arc in m.arcs.items():
        if not arc.core:
            continue
        kind, target = m.phi_arcs[aid]
        covered.add(("arc", target) if kind == "base-arc" else ("node", target))
    for nid, rec in m.nodes.items():
        if rec.kind == "point":
            covered.add(("node", m.phi_nodes[nid]))
    for nid, rec in base.nodes.items():
        if rec.kind == "point" and ("node", nid) not in covered:
            problems.append(f"base node {nid!r} has no core preimage")
    for aid in base.arcs:
        if ("arc", aid) not in covered:
            problems.append(f"base arc {aid!r} has no core preimage")
    for aid, arc in m.arcs.items():
        kind, target = m.phi_arcs[aid]
        if kind != "base-arc":
            continue
        want = base.arcs[target]
        got = (m.phi_nodes[arc.tail], m.phi_nodes[arc.head])
        if got != (want.tail, want.head):
            problems.append(f"arc {aid!r} collapses to {got!r}, base has {(want.tail, want.head)!r}")
    return {"ok": not problems, "problems": problems}


def alternating_line_tree(half_width: int) -> OrderTree:
    """The alternating line: unit arcs on the integers directed even to odd,
    so odd nodes are sinks and even nodes sources; window boundary at the
    two ends."""
    if half_width < 2:
        raise TreeError("window too small")
    t = OrderTree()
    for n in range(-half_width, half_width + 1):
        t.add_node(n)
    for i in range(-half_width, half_width):
        if i % 2 == 0:
            t.add_arc(("s", i), i, i + 1)
        else:
            t.add_arc(("s", i), i + 1, i)
    t.boundary = {-half_width, half_width}
    return t
