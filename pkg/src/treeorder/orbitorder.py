"""Orders extracted from group actions on oriented one-manifolds.

A branchless blown-up tree orders its points: removing an interior point
leaves two components, and the forward one (on the head side of the point's
arc) plays the role of the upper cone.  A pair is comparable when exactly one
point lies in the other's forward component, faces upward-similar when each
lies in the other's forward component, and downward-similar when neither
does.  All four verdicts depend only on the finite path between the points,
so truncation never guesses a relation; what truncation can hide is bound
witnesses, which callers check separately against realized points.

Given a group acting on the manifold, pulling this order back along an orbit
with trivial stabilizer yields a left-invariant tagged order on the group.
When the stabilizer is a totally ordered subgroup instead, the coset order
refines by the stabilizer order on same-coset pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .groups import InfiniteDihedral
from .grouporder import ConeStructure, PLAIN, induced_ball_poset, plain_of, tag_of
from .ordertree import OrderTree, TreeError, denjoy_blowup, alternating_line_tree
from .poset import EQ, GT, LT, SIML, SIMU, ExtendedPoset
from .treebuild import BuildError, build_from_cones, orient_segments


class OrbitError(ValueError):
    """Raised when an action violates an orbit-order precondition."""


# -- the order on a branchless manifold --------------------------------------


def _arc_position(m: OrderTree, p: tuple) -> tuple:
    """Reduce a point to (arc, parameter); parameters 0 and 1 stand for the
    tail and head node of the arc.  Branching nodes have no forward side."""
    if p[0] == "arc":
        return p[1], Fraction(p[2])
    nid = p[1]
    d = m.degrees(p)
    inc = m.incidences(p)
    if d["kind"] == "regular" or (d["n_f"] + d["n_o"]) == 1:
        for direction, aid in inc:
            if direction == "out":
                return aid, Fraction(0)
        return inc[0][1], Fraction(1)
    raise TreeError(f"order undefined at a branching point: {p!r}")


def manifold_graph(m: OrderTree) -> dict:
    """The identified token graph with per-token arc adjacency, computed
    once so pairwise order queries stay cheap."""
    tokens, edges, roots = m.identified_graph()
    adjacency: dict = {tok: [] for tok in tokens}
    ends: dict = {}
    for t1, t2, aid in edges:
        adjacency[t1].append((t2, aid))
        adjacency[t2].append((t1, aid))
        ends[aid] = (t1, t2)
    return {"adjacency": adjacency, "ends": ends, "roots": roots}


def _forward_reaches(graph: dict, start_aid, target_aid) -> bool:
    """Whether the component on the head side of ``start_aid`` (with the arc
    itself cut) contains the target arc."""
    head = graph["ends"][start_aid][1]
    targets = set(graph["ends"][target_aid])
    if head in targets:
        return True
    seen = {head}
    queue = [head]
    while queue:
        tok = queue.pop()
        for nxt, via in graph["adjacency"][tok]:
            if via == start_aid or nxt in seen:
                continue
            if nxt in targets:
                return True
            seen.add(nxt)
            queue.append(nxt)
    return False


def manifold_order(m: OrderTree, x: tuple, y: tuple, graph: Optional[dict] = None) -> int:
    """Relation of two points of a branchless oriented manifold.

    x < y when y sits in the forward component of x but not conversely;
    mutual containment is upward similarity (the points face each other),
    mutual absence downward similarity (back to back).
    """
    m.require_point(x)
    m.require_point(y)
    if x == y:
        return EQ
    xa, xt = _arc_position(m, x)
    ya, yt = _arc_position(m, y)
    if xa == ya:
        if xt == yt:
            return EQ
        return LT if xt < yt else GT
    if graph is None:
        graph = manifold_graph(m)
    forward = _forward_reaches(graph, xa, ya)
    backward = _forward_reaches(graph, ya, xa)
    if forward and not backward:
        return LT
    if backward and not forward:
        return GT
    if forward and backward:
        return SIMU
    return SIML


def realized_bound(m: OrderTree, points: dict, g, h, upper: bool,
                   graph: Optional[dict] = None) -> Optional[object]:
    """A realized common bound of two orbit points among the other realized
    points, or None.  ``points`` maps group elements to manifold points."""
    if graph is None:
        graph = manifold_graph(m)
    want = LT if upper else GT
    for k, pk in points.items():
        if k == g or k == h:
            continue
        if (manifold_order(m, points[g], pk, graph) == want
                and manifold_order(m, points[h], pk, graph) == want):
            return k
    return None


# -- group actions ------------------------------------------------------------


@dataclass
class TreeAction:
    """A partial action on the finite manifold: ``act(g, point)`` returns the
    image point or None when the image leaves the truncation window."""

    group: object
    act: Callable
    name: str = ""


def check_action(m: OrderTree, action: TreeAction, radius: int = 2) -> dict:
    """Identity, composition where defined, and orientation preservation,
    sampled on two interior points of every arc."""
    group = action.group
    ball = group.ball(radius)
    ident = group.identity
    pts = []
    for aid in m.sorted_arc_ids():
        pts.append(("arc", aid, Fraction(1, 4)))
        pts.append(("arc", aid, Fraction(2, 3)))
    problems = []
    for p in pts:
        if action.act(ident, p) != p:
            problems.append(f"identity moves {p!r}")
    for g in ball:
        for h in ball:
            for p in pts[:: max(1, len(pts) // 8)]:
                inner = action.act(h, p)
                if inner is None:
                    continue
                lhs = action.act(group.mult(g, h), p)
                rhs = action.act(g, inner)
                if lhs is not None and rhs is not None and lhs != rhs:
                    problems.append(
                        f"composition differs at {p!r} for "
                        f"{group.format(g)}, {group.format(h)}"
                    )
    for aid in m.sorted_arc_ids():
        p1 = ("arc", aid, Fraction(1, 4))
        p2 = ("arc", aid, Fraction(3, 4))
        for g in ball:
            q1, q2 = action.act(g, p1), action.act(g, p2)
            if q1 is None or q2 is None:
                continue
            if q1[0] != "arc" or q2[0] != "arc" or q1[1] != q2[1]:
                problems.append(f"{group.format(g)} tears arc {aid!r}")
            elif not q1[2] < q2[2]:
                problems.append(f"{group.format(g)} reverses arc {aid!r}")
    return {"ok": not problems, "problems": problems, "points": len(pts)}


@dataclass
class OrbitPoset:
    """The tagged order pulled back along an orbit, with escape bookkeeping."""

    poset: ExtendedPoset
    realized: tuple
    escaped: tuple
    points: dict

    @property
    def coverage(self) -> Fraction:
        total = len(self.realized) + len(self.escaped)
        return Fraction(len(self.realized), total) if total else Fraction(0)


def orbit_points(action: TreeAction, x0: tuple, radius: int) -> tuple:
    """Map the ball through the action; returns (points, escaped)."""
    points: dict = {}
    escaped = []
    for g in action.group.ball(radius):
        img = action.act(g, x0)
        if img is None:
            escaped.append(g)
        else:
            points[g] = img
    return points, tuple(escaped)


def orbit_poset(m: OrderTree, action: TreeAction, x0: tuple, radius: int) -> OrbitPoset:
    """The order on ball elements through their orbit points.

    Elements whose orbit point leaves the window are excluded (counted, not
    guessed).  A nontrivial stabilizer inside the ball is an error; use
    stabilizer_extension_order for that situation.
    """
    group = action.group
    points, escaped = orbit_points(action, x0, radius)
    ident = group.identity
    for g, img in sorted(points.items(), key=lambda kv: group.ball(radius).index(kv[0])):
        if g != ident and img == x0:
            raise OrbitError(f"nontrivial stabilizer: {group.format(g)} fixes the base point")
    realized = tuple(g for g in group.ball(radius) if g in points)
    graph = manifold_graph(m)

    def rel_of(g, h):
        return manifold_order(m, points[g], points[h], graph)

    poset = ExtendedPoset(realized, rel_of)
    return OrbitPoset(poset=poset, realized=realized, escaped=escaped, points=points)


def stabilizer_extension_order(
    m: OrderTree,
    action: TreeAction,
    x0: tuple,
    radius: int,
    stab_order: Callable,
) -> OrbitPoset:
    """Coset order refined by a total order on the base-point stabilizer.

    ``stab_order(g, h)`` must totally order the stabilizer ball and be
    invariant under left translation inside it.  Pairs in one coset compare
    by the stabilizer order of their quotient; pairs in distinct cosets
    compare through their orbit points.
    """
    group = action.group
    points, escaped = orbit_points(action, x0, radius)
    ident = group.identity
    stab = [g for g in group.ball(radius) if g in points and points[g] == x0]
    for g in stab:
        for h in stab:
            if g == h:
                continue
            if stab_order(g, h) == stab_order(h, g):
                raise OrbitError(
                    f"stabilizer order is not total at "
                    f"{group.format(g)}, {group.format(h)}"
                )
    stab_set = set(stab)
    for f in stab:
        for g in stab:
            for h in stab:
                if g == h:
                    continue
                fg, fh = group.mult(f, g), group.mult(f, h)
                if fg in stab_set and fh in stab_set:
                    if stab_order(g, h) != stab_order(fg, fh):
                        raise OrbitError(
                            f"stabilizer order is not left-invariant at "
                            f"{group.format(f)} * ({group.format(g)}, {group.format(h)})"
                        )
    realized = tuple(g for g in group.ball(radius) if g in points)
    graph = manifold_graph(m)

    def rel_of(g, h):
        q = group.mult(group.inv(g), h)
        img = action.act(q, x0)
        if img == x0:
            return LT if stab_order(ident, q) else GT
        return manifold_order(m, points[g], points[h], graph)

    poset = ExtendedPoset(realized, rel_of)
    return OrbitPoset(poset=poset, realized=realized, escaped=escaped, points=points)


# -- concrete manifolds and actions -------------------------------------------


def integer_line(half_width: int) -> OrderTree:
    """A uniformly ascending chain of unit arcs on the integers."""
    if half_width < 1:
        raise TreeError("window too small")
    t = OrderTree()
    for n in range(-half_width, half_width + 1):
        t.add_node(n)
    for i in range(-half_width, half_width):
        t.add_arc(("s", i), i, i + 1)
    t.boundary = {-half_width, half_width}
    return t


def line_coordinate(aid: tuple, t: Fraction) -> Fraction:
    """Real coordinate of a point on a unit arc ("s", i), respecting the
    arc's direction as laid out by integer_line / alternating_line_tree."""
    i = aid[1]
    return i + t if i % 2 == 0 else (i + 1) - t


def line_point(m: OrderTree, c: Fraction, alternating: bool) -> Optional[tuple]:
    """The arc point at real coordinate c, or None outside the window.
    Integer coordinates are rejected (they name nodes, not arc interiors)."""
    j = math.floor(c)
    if c == j:
        return None
    if ("s", j) not in m.arcs:
        return None
    t = c - j if (j % 2 == 0 or not alternating) else (j + 1) - c
    return ("arc", ("s", j), t)


def shift_action(m: OrderTree, group, shift_of: Callable, name: str = "shift") -> TreeAction:
    """Translation action on an ascending integer_line manifold."""

    def act(g, p):
        if p[0] != "arc" or p[1][0] != "s":
            raise TreeError(f"action undefined at {p!r}")
        c = p[1][1] + Fraction(p[2]) + shift_of(g)
        return line_point(m, c, alternating=False)

    return TreeAction(group=group, act=act, name=name)


def label_action(state, layout, manifold: OrderTree) -> tuple:
    """The left translation action read off a built tree's labels.

    Every plain label g owns an interior point of the layout; translation by
    h sends that point to the point of h*g, or escapes when h*g was never
    built.  Returns (action, base_point, points-by-element).
    """
    group = state.group
    if group is None:
        raise BuildError("the build carries no group")
    points: dict = {}
    for lab, pt in layout.label_point.items():
        if tag_of(lab) != PLAIN:
            continue
        if pt[0] != "arc":
            raise BuildError(f"plain label {lab!r} landed on a junction")
        manifold.require_point(pt)
        points[plain_of(lab)] = pt
    inverse = {pt: g for g, pt in points.items()}

    def act(h, p):
        g = inverse.get(p)
        if g is None:
            raise TreeError(f"action undefined at {p!r}")
        return points.get(group.mult(h, g))

    ident = group.identity
    if ident not in points:
        raise BuildError("identity was not built")
    return TreeAction(group=group, act=act, name="label-translation"), points[ident], points


def roundtrip_orbit(cone: ConeStructure, radius: int = 6, stages: Optional[int] = None) -> dict:
    """Build the tree of a cone order, blow it up, act by translation on the
    labels, and pull the manifold order back along the identity orbit.

    The pulled-back order must agree with the ball order induced by the cone
    on every realized pair; elements outside the built part are excluded and
    counted, never guessed.
    """
    state = build_from_cones(cone, radius=radius, stages=stages)
    layout = orient_segments(state)
    manifold = denjoy_blowup(layout.tree)
    if not manifold.is_branchless():
        raise BuildError("blow-up left a branching point")
    action, x0, _ = label_action(state, layout, manifold)
    orbit = orbit_poset(manifold, action, x0, radius)
    induced = induced_ball_poset(cone, radius)
    mismatches = []
    for g in orbit.realized:
        for h in orbit.realized:
            got = orbit.poset.rel(g, h)
            want = induced.rel(g, h)
            if got != want:
                mismatches.append((g, h, got, want))
    ball_size = len(cone.group.ball(radius))
    return {
        "ok": not mismatches,
        "cone": cone.name,
        "radius": radius,
        "realized": len(orbit.realized),
        "escaped": len(orbit.escaped),
        "ball": ball_size,
        "coverage": Fraction(len(orbit.realized), ball_size),
        "mismatches": mismatches,
        "orbit": orbit,
        "induced": induced,
    }


DIHEDRAL_BASE_POINT = ("arc", ("s", 0), Fraction(1, 4))


def dihedral_example(radius: int = 6) -> tuple:
    """The alternating-line structure with its dihedral action.

    Segments [i, i+1] alternate orientation (sources at even integers, sinks
    at odd ones); the blow-up hangs a stub at every interior integer.  The
    generator t shifts by two units, the reflection s reflects about 0, so a
    group element (n, eps) sends coordinate c to 2n + (-1)^eps c; stubs
    travel with their base integers.  The window is wide enough that every
    ball element of the given radius moves the base point within it.
    """
    half_width = 2 * radius + 2
    tree = alternating_line_tree(half_width)
    manifold = denjoy_blowup(tree)
    group = InfiniteDihedral()

    def act(g, p):
        n, eps = g
        sign = 1 if eps == 0 else -1
        if p[0] != "arc":
            raise TreeError(f"action undefined at {p!r}")
        aid, t = p[1], Fraction(p[2])
        if aid[0] == "s":
            c = 2 * n + sign * line_coordinate(aid, t)
            return line_point(manifold, c, alternating=True)
        if aid[0] == "stub":
            base = 2 * n + sign * aid[1]
            if ("stub", base) in manifold.arcs:
                return ("arc", ("stub", base), t)
            return None
        raise TreeError(f"action undefined at {p!r}")

    return tree, manifold, TreeAction(group=group, act=act, name="dihedral-line")
