"""Stagewise construction of a labelled order tree from a tagged ball order.

The builder consumes a finite tagged poset (typically a group ball with a
left-invariant order) and a list of between-set pairs covering it.  Each pair
contributes one stage: the between set B(x, y) splits into similarity
classes, every class is augmented with the doubled tags of its members, laid
over one unit interval with touching tag pairs identified, and the already
built prefix is cut away so the remainder glues onto the existing tree at the
doubled tag of x.  Gluing a half-open remainder whose built part has no
greatest element is supported through explicitly forced stages; the new
segment then attaches at the doubled tag of the furthest built element and
the record is marked as a truncated limit.

The laid-out structure remembers every label position exactly (dyadic
fractions), so the structural checks are equalities, not approximations:
the glued intervals form a tree, complement gaps are bounded by an element
and its own tag, paths between built elements read out their between sets in
travel order, and two labels share a point exactly when nothing lies between
them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .grouporder import (
    MINUS,
    PLAIN,
    PLUS,
    aug,
    blow_up_gplus,
    format_aug,
    induced_ball_poset,
    plain_of,
    r_equivalent,
    side_toward,
    tag_of,
)
from .ordertree import OrderTree
from .poset import BetweenChain, ExtendedPoset, PosetError

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


class BuildError(ValueError):
    """Raised when a decomposition or a stage violates a layout invariant."""


@dataclass(frozen=True)
class Stage:
    """One normalized gluing step.

    ``pair`` is the between-set pair actually laid, with the first entry
    already built.  ``case`` is 1 when the built part of the pair is exactly
    that first entry, and 2 when the stage was forced to attach as a
    truncated limit.  ``original`` keeps the pair as given before any
    replacement shortened it.
    """

    pair: tuple
    case: int
    original: tuple
    replaced: bool = False


@dataclass(frozen=True)
class BetweenDecomposition:
    """A normalized cover of a tagged poset by between-set stages."""

    base: object
    stages: tuple
    dropped: tuple


@dataclass(frozen=True)
class GlueRecord:
    """Identification of a new interval end with an existing point."""

    interval: int
    coord: Fraction
    target: tuple
    truncated_limit: bool


def auto_pairs(poset: ExtendedPoset, root=None) -> list:
    """Star cover: pair the root with every other element, in poset order."""
    if root is None:
        root = poset.elements[0]
    return [(root, e) for e in poset.elements if e != root]


def normalize_decomposition(
    poset: ExtendedPoset,
    pairs: Sequence[tuple],
    case2: Iterable[tuple] = (),
) -> BetweenDecomposition:
    """Reduce a covering list of between-set pairs to gluable stages.

    Ahead of every pair (x, y) the pair (base, x) is inserted, which keeps
    the running union closed under between sets and guarantees each stage
    meets the built part in an initial segment.  Stages whose between set is
    already covered are dropped.  When the built part of a stage reaches past
    its first endpoint, the stage is replaced by the between set from the
    furthest built element onward, so every surviving stage either meets the
    built part in a single element or is explicitly forced (``case2``) to
    attach as a truncated limit.
    """
    pairs = [tuple(p) for p in pairs]
    if not pairs:
        raise BuildError("a decomposition needs at least one pair")
    known = set(poset.elements)
    for x, y in pairs:
        if x not in known or y not in known:
            raise BuildError(f"pair ({x!r}, {y!r}) leaves the poset")
        if x == y:
            raise BuildError(f"degenerate pair at {x!r}")
    forced = {tuple(p) for p in case2}
    base = pairs[0][0]

    covered = {base}
    for x, y in pairs:
        covered.update(poset.between_set(x, y).members)
    uncovered = [e for e in poset.elements if e not in covered]
    if uncovered:
        raise BuildError(f"pairs do not cover the poset; missing {uncovered!r}")

    worklist = []
    for p in pairs:
        if p[0] != base:
            worklist.append(((base, p[0]), False))
        worklist.append((p, p in forced))

    built = {base}
    stages = []
    dropped = []
    for pair, force2 in worklist:
        x, y = pair
        members = poset.between_set(x, y).members
        mset = set(members)
        if mset <= built:
            dropped.append(pair)
            continue
        if x not in built:
            if y not in built:
                raise BuildError(f"stage ({x!r}, {y!r}) does not meet the built part")
            x, y = y, x
            members = poset.between_set(x, y).members
        inter = [m for m in members if m in built]
        if tuple(inter) != members[: len(inter)]:
            raise BuildError(
                f"built part of B({x!r}, {y!r}) is not an initial segment"
            )
        if force2:
            stages.append(Stage(pair=(x, y), case=2, original=pair))
        else:
            z = inter[-1]
            if z == x:
                stages.append(Stage(pair=(x, y), case=1, original=pair))
            else:
                stages.append(Stage(pair=(z, y), case=1, original=pair, replaced=True))
        built |= mset
    return BetweenDecomposition(base=base, stages=tuple(stages), dropped=tuple(dropped))


class LabeledTree:
    """A growing union of glued intervals with exact label positions.

    Points are pairs (interval, coordinate); identifications from gluing are
    kept in a union-find whose canonical representative is the oldest glued
    point.  ``nu`` maps each doubled label to the raw point where its own
    stage laid it; resolving through the union-find gives the geometric
    point.
    """

    def __init__(
        self,
        poset: ExtendedPoset,
        augmented: ExtendedPoset,
        group=None,
        decomposition: Optional[BetweenDecomposition] = None,
        fmt: Optional[Callable] = None,
    ):
        self.poset = poset
        self.aug = augmented
        self.group = group
        self.decomposition = decomposition
        self.fmt = fmt or (group.format if group is not None else str)
        self.intervals: list = []
        self.directions: list = []
        self.glues: list = []
        self.nu: dict = {}
        self.built: set = set()
        self.stages_done: list = []
        self._parent: dict = {}

    # -- point identity ------------------------------------------------

    def find(self, pt: tuple) -> tuple:
        seen = []
        while pt in self._parent:
            seen.append(pt)
            pt = self._parent[pt]
        for s in seen:
            self._parent[s] = pt
        return pt

    def _union(self, pt: tuple, target: tuple) -> None:
        r1, r2 = self.find(pt), self.find(target)
        if r1 != r2:
            self._parent[r1] = r2

    def point_of(self, label: tuple) -> tuple:
        if label not in self.nu:
            raise BuildError(f"label {format_aug(label, self.fmt)} is not built")
        return self.find(self.nu[label])

    def label_key(self, label: tuple) -> tuple:
        return (self.poset.index(plain_of(label)), tag_of(label))

    def labels_by_point(self) -> dict:
        out: dict = {}
        for lab in sorted(self.nu, key=self.label_key):
            out.setdefault(self.find(self.nu[lab]), []).append(lab)
        return {pt: tuple(labs) for pt, labs in out.items()}

    def interval_coords(self) -> dict:
        """Sorted label coordinates per interval, glue ends included."""
        per: dict = {i: set() for i in range(len(self.intervals))}
        for i, c in self.nu.values():
            per[i].add(c)
        for i, (lo, _hi) in enumerate(self.intervals):
            per[i].add(lo)
        return {i: sorted(cs) for i, cs in per.items()}

    def truncated_points(self) -> set:
        return {
            self.find((rec.interval, rec.coord))
            for rec in self.glues
            if rec.truncated_limit
        }

    def format_label(self, label: tuple) -> str:
        return format_aug(label, self.fmt)


# -- per-class layout ----------------------------------------------------


def _class_sequence(poset: ExtendedPoset, members: tuple, x, y) -> list:
    """The doubled labels of one similarity class in travel order.

    Every member contributes both of its tags: consecutive members put their
    facing tags between them, the first member leads with the tag facing x
    (for x itself, the tag facing away from y), and symmetrically at the end.
    """
    m = list(members)
    first, last = m[0], m[-1]
    if first == x:
        lead = aug(first, -side_toward(poset, first, y))
    else:
        lead = aug(first, side_toward(poset, first, x))
    if last == y:
        trail = aug(last, -side_toward(poset, last, x))
    else:
        trail = aug(last, side_toward(poset, last, y))
    seq = [lead]
    for i, u in enumerate(m):
        seq.append(aug(u, PLAIN))
        if i + 1 < len(m):
            v = m[i + 1]
            seq.append(aug(u, side_toward(poset, u, v)))
            seq.append(aug(v, side_toward(poset, v, u)))
    seq.append(trail)
    return seq


def _merge_slots(augmented: ExtendedPoset, seq: list) -> list:
    """Group consecutive labels that touch (nothing between them)."""
    slots: list = []
    for lab in seq:
        if (
            slots
            and tag_of(lab) != PLAIN
            and tag_of(slots[-1][-1]) != PLAIN
            and r_equivalent(augmented, slots[-1][-1], lab)
        ):
            slots[-1].append(lab)
        else:
            slots.append([lab])
    return slots


def _slot_coords(unit: int, nslots: int) -> list:
    """Deterministic positions on [unit, unit + 1]: endpoints for the
    extremal slots, then successive midpoints toward the upper end."""
    if nslots < 3:
        raise BuildError("a class layout needs at least three slots")
    coords = [Fraction(unit)]
    for j in range(1, nslots - 1):
        coords.append(unit + 1 - Fraction(1, 2**j))
    coords.append(Fraction(unit + 1))
    return coords


def _lay_classes(
    state: LabeledTree, classes: tuple, x, y, only_new: bool = False
) -> tuple:
    """Lay the (restricted) classes over [0, k]; consecutive classes share
    their boundary coordinate, which is legal only when the meeting tags
    touch.  Returns the slot list [(coord, labels)] and per-unit directions."""
    p, A = state.poset, state.aug
    lay = []
    for cls in classes:
        members = tuple(m for m in cls if m not in state.built) if only_new else cls
        if members:
            lay.append(members)
    out: list = []
    dirs: dict = {}
    for ci, members in enumerate(lay):
        seq = _class_sequence(p, members, x, y)
        slots = _merge_slots(A, seq)
        coords = _slot_coords(ci, len(slots))
        pos = {lab: j for j, labs in enumerate(slots) for lab in labs}
        g0 = members[0]
        dirs[ci] = 1 if pos[aug(g0, MINUS)] < pos[aug(g0, PLAIN)] else -1
        for c, labs in zip(coords, slots):
            if out and out[-1][0] == c:
                u, v = out[-1][1][-1], labs[0]
                if not r_equivalent(A, u, v):
                    raise BuildError(
                        "class boundary labels do not touch: "
                        f"{state.format_label(u)} | {state.format_label(v)}"
                    )
                out[-1][1].extend(labs)
            else:
                out.append((c, list(labs)))
    return out, dirs


def _register(state: LabeledTree, idx: int, slot_list: list, allow_existing: set) -> None:
    for c, labs in slot_list:
        for lab in labs:
            if lab in state.nu:
                if lab not in allow_existing:
                    raise BuildError(f"label laid twice: {state.format_label(lab)}")
            else:
                state.nu[lab] = (idx, c)


def _lay_base(state: LabeledTree, x1) -> None:
    if state.intervals:
        raise BuildError("base interval already laid")
    try:
        state.poset.index(x1)
    except (KeyError, PosetError):
        raise BuildError(f"base element {x1!r} leaves the poset") from None
    state.intervals.append((ZERO, ONE))
    state.directions.append({0: 1})
    state.nu[aug(x1, MINUS)] = (0, ZERO)
    state.nu[aug(x1, PLAIN)] = (0, HALF)
    state.nu[aug(x1, PLUS)] = (0, ONE)
    state.built.add(x1)


def build_stage(state: LabeledTree, stage: Stage) -> LabeledTree:
    """Glue one stage onto the tree; see the module docstring for the shape."""
    p = state.poset
    x, y = stage.pair
    chain = p.between_set(x, y)
    if stage.case == 2:
        return _lay_case2(state, stage, chain)

    inter = [m for m in chain.members if m in state.built]
    if inter != [x]:
        raise BuildError(
            f"stage ({state.fmt(x)}, {state.fmt(y)}) is not a single-point gluing; "
            f"built part {[state.fmt(m) for m in inter]}"
        )
    idx = len(state.intervals)
    out, dirs = _lay_classes(state, chain.classes, x, y)
    inner = aug(x, side_toward(p, x, y))
    cut_i = next(j for j, (_c, labs) in enumerate(out) if inner in labs)
    prefix = [lab for _c, labs in out[:cut_i] for lab in labs]
    if prefix != [aug(x, -side_toward(p, x, y)), aug(x, PLAIN)]:
        raise BuildError(
            f"unexpected labels before the cut: "
            f"{[state.format_label(l) for l in prefix]}"
        )
    lo = out[cut_i][0]
    if inner not in state.nu:
        raise BuildError(f"gluing tag {state.format_label(inner)} is not built")
    target = state.nu[inner]
    _register(state, idx, out[cut_i:], allow_existing={inner})
    state.intervals.append((lo, Fraction(len(chain.classes))))
    if lo >= 1:
        dirs.pop(0, None)
    state.directions.append(dirs)
    state._union((idx, lo), target)
    state.glues.append(GlueRecord(idx, lo, target, False))
    state.built.update(chain.members)
    state.stages_done.append(stage)
    return state


def _lay_case2(state: LabeledTree, stage: Stage, chain: BetweenChain) -> LabeledTree:
    p = state.poset
    x, y = stage.pair
    inter = [m for m in chain.members if m in state.built]
    new = [m for m in chain.members if m not in state.built]
    if not inter or not new:
        raise BuildError("a truncated-limit stage needs both built and new parts")
    if tuple(inter) != chain.members[: len(inter)]:
        raise BuildError("built part is not an initial segment")
    a_m = inter[-1]
    attach = aug(a_m, side_toward(p, a_m, y))
    if attach not in state.nu:
        raise BuildError(f"attachment tag {state.format_label(attach)} is not built")
    target = state.nu[attach]
    idx = len(state.intervals)
    out, dirs = _lay_classes(state, chain.classes, x, y, only_new=True)
    k = out[-1][0]
    if out[0][0] != ZERO or k != int(k):
        raise BuildError("truncated-limit layout must span whole units")
    _register(state, idx, out, allow_existing=set())
    state.intervals.append((ZERO, Fraction(k)))
    state.directions.append(dirs)
    state._union((idx, ZERO), target)
    state.glues.append(GlueRecord(idx, ZERO, target, True))
    state.built.update(chain.members)
    state.stages_done.append(stage)
    return state


def build_tree(
    poset: ExtendedPoset,
    pairs: Optional[Sequence[tuple]] = None,
    augmented: Optional[ExtendedPoset] = None,
    decomposition: Optional[BetweenDecomposition] = None,
    stages: Optional[int] = None,
    case2: Iterable[tuple] = (),
    group=None,
) -> LabeledTree:
    """Normalize (unless given) and run the stagewise construction."""
    if augmented is None:
        augmented = blow_up_gplus(poset)
    if decomposition is None:
        if pairs is None:
            pairs = auto_pairs(poset)
        decomposition = normalize_decomposition(poset, pairs, case2=case2)
    state = LabeledTree(poset, augmented, group=group, decomposition=decomposition)
    _lay_base(state, decomposition.base)
    todo = decomposition.stages if stages is None else decomposition.stages[:stages]
    for st in todo:
        build_stage(state, st)
    return state


def build_from_cones(cone, radius: int = 6, stages: Optional[int] = None,
                     pairs: Optional[Sequence[tuple]] = None) -> LabeledTree:
    """Ball order from cone subsets, then the stagewise construction."""
    poset = induced_ball_poset(cone, radius)
    augmented = blow_up_gplus(poset)
    if pairs is None:
        pairs = auto_pairs(poset)
    decomposition = normalize_decomposition(poset, pairs)
    state = LabeledTree(poset, augmented, group=cone.group, decomposition=decomposition)
    _lay_base(state, decomposition.base)
    todo = decomposition.stages if stages is None else decomposition.stages[:stages]
    for st in todo:
        build_stage(state, st)
    return state


# -- oriented tree ---------------------------------------------------------


@dataclass
class BuildLayout:
    """The built tree with directed arcs plus the label geometry."""

    tree: OrderTree
    node_labels: dict
    label_point: dict
    unit_of_arc: dict
    checked_labels: int


def orient_segments(state: LabeledTree) -> BuildLayout:
    """Cut the intervals at junctions and direct every arc.

    Each unit subinterval takes its direction from the interior plain labels
    it carries: the arc runs toward the side where the label's lower tag is
    behind it.  All interior labels of a unit must agree; disagreement or a
    unit without interior plain labels is a construction error.
    """
    breaks: dict = {}
    for i, (lo, hi) in enumerate(state.intervals):
        s = {lo, hi}
        s.update(Fraction(j) for j in range(math.ceil(lo), math.floor(hi) + 1))
        breaks[i] = s
    for rec in state.glues:
        breaks[rec.target[0]].add(rec.target[1])

    checked = 0
    plains_by_unit: dict = {}
    for lab, (i, c) in state.nu.items():
        if tag_of(lab) != PLAIN:
            continue
        unit = math.floor(c)
        plains_by_unit.setdefault((i, unit), []).append(lab)
    for i, udirs in enumerate(state.directions):
        for unit, direction in udirs.items():
            plains = plains_by_unit.get((i, unit), [])
            if not plains:
                raise BuildError(f"unit {unit} of interval {i} has no interior label")
            for lab in plains:
                c = state.nu[lab][1]
                below = state.nu[aug(plain_of(lab), MINUS)][1]
                want = 1 if below < c else -1
                if want != direction:
                    raise BuildError(
                        f"direction of unit {unit} in interval {i} disagrees at "
                        f"{state.format_label(lab)}"
                    )
                checked += 1

    nodes = set()
    arcs = []
    unit_of_arc = {}
    span_index: dict = {}
    for i, bs in sorted(breaks.items()):
        cs = sorted(bs)
        roots = [state.find((i, c)) for c in cs]
        nodes.update(roots)
        for (b1, r1), (b2, r2) in zip(zip(cs, roots), zip(cs[1:], roots[1:])):
            unit = math.floor(b1)
            direction = state.directions[i].get(unit)
            if direction is None:
                raise BuildError(f"unit {unit} of interval {i} has no direction")
            aid = (i, b1)
            tail, head = (r1, r2) if direction == 1 else (r2, r1)
            arcs.append((aid, tail, head))
            unit_of_arc[aid] = (i, unit)
            span_index[(i, b1, b2)] = (aid, direction)

    degree: dict = {}
    for _aid, tail, head in arcs:
        degree[tail] = degree.get(tail, 0) + 1
        degree[head] = degree.get(head, 0) + 1
    boundary = {n for n in nodes if degree.get(n, 0) == 1}
    tree = OrderTree.build(sorted(nodes), arcs, boundary)

    node_labels: dict = {}
    label_point: dict = {}
    by_interval = {i: sorted(bs) for i, bs in breaks.items()}
    for lab in sorted(state.nu, key=state.label_key):
        i, c = state.nu[lab]
        root = state.find((i, c))
        if root in nodes:
            node_labels.setdefault(root, []).append(lab)
            label_point[lab] = ("node", root)
            continue
        cs = by_interval[i]
        j = max(k for k, b in enumerate(cs) if b < c)
        b1, b2 = cs[j], cs[j + 1]
        aid, direction = span_index[(i, b1, b2)]
        t = (c - b1) / (b2 - b1) if direction == 1 else (b2 - c) / (b2 - b1)
        label_point[lab] = ("arc", aid, t)
    return BuildLayout(
        tree=tree,
        node_labels={n: tuple(labs) for n, labs in node_labels.items()},
        label_point=label_point,
        unit_of_arc=unit_of_arc,
        checked_labels=checked,
    )


# -- structural verification ------------------------------------------------


def _micro_graph(state: LabeledTree) -> tuple:
    """Vertices (canonical points) and consecutive-label edges per interval."""
    coords = state.interval_coords()
    vertices = set()
    edges = []
    adjacency: dict = {}
    for i in sorted(coords):
        roots = [state.find((i, c)) for c in coords[i]]
        vertices.update(roots)
        for r1, r2 in zip(roots, roots[1:]):
            edges.append((r1, r2))
            adjacency.setdefault(r1, []).append(r2)
            adjacency.setdefault(r2, []).append(r1)
    return vertices, edges, adjacency


def _path_points(adjacency: dict, start: tuple, end: tuple) -> list:
    if start == end:
        return [start]
    seen = {start: None}
    queue = [start]
    while queue:
        nxt = []
        for v in queue:
            for w in adjacency.get(v, ()):
                if w not in seen:
                    seen[w] = v
                    if w == end:
                        path = [w]
                        while path[-1] != start:
                            path.append(seen[path[-1]])
                        return path[::-1]
                    nxt.append(w)
        queue = nxt
    raise BuildError("points are not connected")


def verify_stage_properties(state: LabeledTree) -> dict:
    """Exact structural checks of the current build.

    * tree: the glued intervals form a single tree.
    * gaps: every unlabelled complement component lies between an element
      and one of its own tags; gaps at truncated-limit gluings are reported
      as undetermined rather than checked.
    * paths: for built a, b the path [nu(a), nu(b)] reads out B(a, b) in
      travel order; extra labels must be tags touching a member on each side.
    * identity: labels share a point exactly when they touch; collisions
      forced by a truncated-limit gluing are undetermined.
    """
    p, A = state.poset, state.aug
    vertices, edges, adjacency = _micro_graph(state)
    problems = []
    if len(edges) != len(vertices) - 1:
        problems.append(f"{len(vertices)} points but {len(edges)} spans")
    if vertices:
        reached = {next(iter(sorted(vertices)))}
        queue = list(reached)
        while queue:
            v = queue.pop()
            for w in adjacency.get(v, ()):
                if w not in reached:
                    reached.add(w)
                    queue.append(w)
        if reached != vertices:
            problems.append("glued intervals are not connected")
    tree_report = {"ok": not problems, "points": len(vertices), "problems": problems}

    by_point = state.labels_by_point()
    truncated = state.truncated_points()
    coords = state.interval_coords()
    gap_violations = []
    gap_undetermined = []
    gaps = 0
    for i in sorted(coords):
        cs = coords[i]
        for c1, c2 in zip(cs, cs[1:]):
            gaps += 1
            left = by_point.get(state.find((i, c1)), ())
            right = by_point.get(state.find((i, c2)), ())
            entry = {
                "interval": i,
                "gap": (c1, c2),
                "left": [state.format_label(l) for l in left],
                "right": [state.format_label(l) for l in right],
            }
            if state.find((i, c1)) in truncated or state.find((i, c2)) in truncated:
                gap_undetermined.append(entry)
                continue
            if not _gap_is_tag_pair(left, right):
                gap_violations.append(entry)
    gap_report = {
        "ok": not gap_violations,
        "gaps": gaps,
        "violations": gap_violations,
        "undetermined": gap_undetermined,
    }

    path_violations = []
    pairs_checked = 0
    built = sorted(state.built, key=p.index)
    for ai in range(len(built)):
        for bi in range(ai + 1, len(built)):
            a, b = built[ai], built[bi]
            pairs_checked += 1
            expected = A.between_set(aug(a, PLAIN), aug(b, PLAIN)).members
            missing = [m for m in expected if m not in state.nu]
            if missing:
                path_violations.append(
                    {"pair": (state.fmt(a), state.fmt(b)),
                     "problem": "between set not fully built",
                     "labels": [state.format_label(m) for m in missing]}
                )
                continue
            order = {m: j for j, m in enumerate(expected)}
            route = _path_points(adjacency, state.point_of(aug(a, PLAIN)),
                                 state.point_of(aug(b, PLAIN)))
            flat = []
            extras = []
            for pt in route:
                here = [lab for lab in by_point.get(pt, ()) if lab in order]
                flat.extend(sorted(here, key=lambda m: order[m]))
                extras.extend(lab for lab in by_point.get(pt, ()) if lab not in order)
            if [order[m] for m in flat] != list(range(len(expected))):
                path_violations.append(
                    {"pair": (state.fmt(a), state.fmt(b)),
                     "problem": "path labels out of order",
                     "labels": [state.format_label(m) for m in flat]}
                )
            eset = set(expected)
            for c in extras:
                if tag_of(c) == PLAIN:
                    path_violations.append(
                        {"pair": (state.fmt(a), state.fmt(b)),
                         "problem": "stray plain label on path",
                         "labels": [state.format_label(c)]}
                    )
                    continue
                for end in (aug(a, PLAIN), aug(b, PLAIN)):
                    touching = any(
                        d in eset and r_equivalent(A, c, d)
                        for d in A.between_members(end, c)
                    )
                    if not touching:
                        path_violations.append(
                            {"pair": (state.fmt(a), state.fmt(b)),
                             "problem": "extra label without touching partner",
                             "labels": [state.format_label(c)]}
                        )
                        break
    path_report = {"ok": not path_violations, "pairs": pairs_checked,
                   "violations": path_violations}

    id_violations = []
    id_undetermined = []
    plain_collisions = []
    for pt, labs in sorted(by_point.items()):
        for j in range(len(labs)):
            for k in range(j + 1, len(labs)):
                u, v = labs[j], labs[k]
                if r_equivalent(A, u, v):
                    continue
                entry = {
                    "labels": (state.format_label(u), state.format_label(v)),
                    "point": pt,
                }
                if pt in truncated:
                    id_undetermined.append(entry)
                else:
                    id_violations.append(entry)
                if tag_of(u) == PLAIN and tag_of(v) == PLAIN:
                    plain_collisions.append(entry)
    labels = sorted(state.nu, key=state.label_key)
    for j in range(len(labels)):
        for k in range(j + 1, len(labels)):
            u, v = labels[j], labels[k]
            if tag_of(u) == PLAIN or tag_of(v) == PLAIN:
                continue
            if r_equivalent(A, u, v) and state.point_of(u) != state.point_of(v):
                id_violations.append(
                    {"labels": (state.format_label(u), state.format_label(v)),
                     "problem": "touching labels laid apart"}
                )
    identity_report = {
        "ok": not id_violations,
        "violations": id_violations,
        "undetermined": id_undetermined,
        "plain_collisions": plain_collisions,
    }

    ok = all((tree_report["ok"], gap_report["ok"], path_report["ok"],
              identity_report["ok"]))
    return {
        "ok": ok,
        "tree": tree_report,
        "gaps": gap_report,
        "paths": path_report,
        "identity": identity_report,
    }


def _gap_is_tag_pair(left: tuple, right: tuple) -> bool:
    for a in left:
        if tag_of(a) == PLAIN:
            if any(plain_of(b) == plain_of(a) and tag_of(b) != PLAIN for b in right):
                return True
    for b in right:
        if tag_of(b) == PLAIN:
            if any(plain_of(a) == plain_of(b) and tag_of(a) != PLAIN for a in left):
                return True
    return False


# -- the action on labels ----------------------------------------------------


def act_on_labels(state: LabeledTree, g) -> dict:
    """Left translation on the built labels.

    Every built label (h, tag) maps to (g h, tag); images outside the built
    part are reported as escaped.  On the moved plain labels the betweenness
    relation is checked to transport exactly.
    """
    if state.group is None:
        raise BuildError("this build has no group attached")
    G, p = state.group, state.poset
    moved = {}
    escaped = []
    for lab in sorted(state.nu, key=state.label_key):
        image = aug(G.mult(g, plain_of(lab)), tag_of(lab))
        if image in state.nu:
            moved[lab] = image
        else:
            escaped.append(lab)
    plains = [plain_of(lab) for lab in moved if tag_of(lab) == PLAIN]
    violations = []
    checked = 0
    for f in plains:
        for h in plains:
            for k in plains:
                if len({f, h, k}) != 3:
                    continue
                checked += 1
                before = p.is_between(f, h, k)
                after = p.is_between(G.mult(g, f), G.mult(g, h), G.mult(g, k))
                if before != after:
                    violations.append(
                        {"triple": (state.fmt(f), state.fmt(h), state.fmt(k)),
                         "before": before, "after": after}
                    )
    return {
        "ok": not violations,
        "moved": moved,
        "escaped": tuple(escaped),
        "checked_triples": checked,
        "violations": violations,
    }
