"""Named example structures and the composite check suites built on them.

The catalog is the single place where concrete cones, subgroups, and
scenarios live; checker commands and tests look structures up by name so
that every entry point exercises the same objects.  The dihedral cone
predicates are frozen here in closed form; their provenance is the orbit
order of the alternating-line action (``derive_cone_pieces`` regenerates
them from the action, and the tests compare).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional

from .groups import FreeGroup, InfiniteDihedral, Z, Zk
from .grouporder import (
    ConeStructure,
    SubgroupSpec,
    blow_up_gplus,
    check_augmented_between,
    check_no_singleton_classes,
    induced_ball_poset,
    quotient_order,
    r_equivalent,
    verify_cone_axioms,
)
from .orbitorder import (
    DIHEDRAL_BASE_POINT,
    check_action,
    dihedral_example,
    orbit_poset,
    realized_bound,
    roundtrip_orbit,
)
from .ordertree import check_blowup
from .poset import GT, LT, SIML, SIMU
from .treebuild import build_from_cones, orient_segments, verify_stage_properties


class CatalogError(KeyError):
    """Raised when a name is not in the catalog."""

    def __str__(self) -> str:
        # KeyError would repr the message and add quotes.
        return self.args[0] if self.args else ""


# -- cones -------------------------------------------------------------------


def z_standard() -> ConeStructure:
    return ConeStructure("z-standard", Z(), lambda n: n > 0, lambda n: False, lambda n: False)


def z_broken() -> ConeStructure:
    """Negative control: the positives are {1} alone, so products escape."""
    return ConeStructure("z-broken", Z(), lambda n: n == 1, lambda n: False, lambda n: False)


def zk_lex(k: int = 2) -> ConeStructure:
    group = Zk(k)

    def positive(v: tuple) -> bool:
        for c in v:
            if c:
                return c > 0
        return False

    return ConeStructure(f"z{k}-lex", group, positive, lambda v: False, lambda v: False)


def z2_product() -> ConeStructure:
    """Negative control: coordinatewise positivity leaves mixed-sign pairs
    in no piece, so the pieces fail to partition the ball."""
    group = Zk(2)

    def positive(v: tuple) -> bool:
        return v != (0, 0) and all(c >= 0 for c in v)

    return ConeStructure("z2-product", group, positive, lambda v: False, lambda v: False)


def free_standard(k: int = 2) -> ConeStructure:
    """Total order on reduced words via leading sign of the series embedding."""
    group = FreeGroup(k)
    return ConeStructure(
        f"free{k}-standard", group,
        lambda w: group.order_sign(w) > 0,
        lambda w: False,
        lambda w: False,
    )


def dihedral_standard() -> ConeStructure:
    """Cones of the alternating-line action: positive translations, upper
    reflections, lower reflections (frozen from derive_cone_pieces)."""
    group = InfiniteDihedral()

    def in_positive(w: tuple) -> bool:
        n, eps = w
        return eps == 0 and n > 0

    def in_upper(w: tuple) -> bool:
        n, eps = w
        return eps == 1 and n > 0

    def in_lower(w: tuple) -> bool:
        n, eps = w
        return eps == 1 and n <= 0

    return ConeStructure("dihedral-standard", group, in_positive, in_upper, in_lower)


BUILTIN_CONES: dict = {
    "z-standard": z_standard,
    "z-broken": z_broken,
    "z2-lex": lambda: zk_lex(2),
    "z3-lex": lambda: zk_lex(3),
    "z2-product": z2_product,
    "free2-standard": free_standard,
    "dihedral-standard": dihedral_standard,
}


def get_cone(name: str) -> ConeStructure:
    try:
        return BUILTIN_CONES[name]()
    except KeyError:
        known = ", ".join(sorted(BUILTIN_CONES))
        raise CatalogError(f"unknown cone {name!r}; known: {known}") from None


def derive_cone_pieces(radius: int = 6) -> dict:
    """Re-derive the dihedral pieces from the action instead of formulas.

    Classifies every ball element by its orbit relation to the identity;
    this is the provenance oracle for dihedral_standard.
    """
    _, manifold, action = dihedral_example(radius)
    orb = orbit_poset(manifold, action, DIHEDRAL_BASE_POINT, radius)
    ident = action.group.identity
    names = {LT: "p", GT: "pinv", SIMU: "u", SIML: "l"}
    pieces = {}
    for g in orb.realized:
        pieces[g] = "e" if g == ident else names[orb.poset.rel(ident, g)]
    return pieces


# -- subgroups and quotient scenarios -----------------------------------------


def second_factor_subgroup() -> SubgroupSpec:
    return SubgroupSpec("second-factor", lambda v: v[0] == 0)


def even_subgroup() -> SubgroupSpec:
    return SubgroupSpec("even", lambda n: n % 2 == 0)


SUBGROUPS: dict = {
    "second-factor": second_factor_subgroup,
    "even": even_subgroup,
}


def get_subgroup(name: str) -> SubgroupSpec:
    try:
        return SUBGROUPS[name]()
    except KeyError:
        known = ", ".join(sorted(SUBGROUPS))
        raise CatalogError(f"unknown subgroup {name!r}; known: {known}") from None


QUOTIENT_SCENARIOS: dict = {
    "z2-lex-by-second-factor": lambda: (zk_lex(2), second_factor_subgroup()),
    "z-by-even": lambda: (z_standard(), even_subgroup()),
}


def get_quotient_scenario(name: str) -> tuple:
    try:
        return QUOTIENT_SCENARIOS[name]()
    except KeyError:
        known = ", ".join(sorted(QUOTIENT_SCENARIOS))
        raise CatalogError(f"unknown quotient scenario {name!r}; known: {known}") from None


def _alternating_tree(radius: int):
    from .ordertree import alternating_line_tree

    return alternating_line_tree(2 * radius + 2)


TREES: dict = {
    "alternating-line": _alternating_tree,
}


def get_tree(name: str, radius: int = 6):
    try:
        return TREES[name](radius)
    except KeyError:
        known = ", ".join(sorted(TREES))
        raise CatalogError(f"unknown tree {name!r}; known: {known}") from None


def _dihedral_scenario(radius: int) -> tuple:
    _, manifold, action = dihedral_example(radius)
    return manifold, action, DIHEDRAL_BASE_POINT


def _line_scenario(radius: int) -> tuple:
    from .orbitorder import integer_line, shift_action

    line = integer_line(radius + 1)
    action = shift_action(line, Z(), lambda n: n, name="z-line")
    return line, action, ("arc", ("s", 0), Fraction(1, 4))


ACTION_SCENARIOS: dict = {
    "dihedral-line": _dihedral_scenario,
    "z-line": _line_scenario,
}


def get_action_scenario(name: str, radius: int = 6) -> tuple:
    try:
        return ACTION_SCENARIOS[name](radius)
    except KeyError:
        known = ", ".join(sorted(ACTION_SCENARIOS))
        raise CatalogError(f"unknown scenario {name!r}; known: {known}") from None


# -- composite suites ----------------------------------------------------------


def run_gplus_suite(cone: ConeStructure, radius: int = 6) -> dict:
    """Doubled-order checks over a ball: the three between-set shapes per
    pair, the touching relation is an equivalence, and no similarity class
    between plain elements is a singleton."""
    p = induced_ball_poset(cone, radius)
    aug = blow_up_gplus(p)
    pair_failures = []
    pairs = 0
    for a, b in p.iter_pairs():
        pairs += 1
        rep = check_augmented_between(aug, a, b)
        if not rep["ok"]:
            pair_failures.append(rep)
    elems = aug.elements
    masks = []
    for x in elems:
        m = 0
        for j, y in enumerate(elems):
            if r_equivalent(aug, x, y):
                m |= 1 << j
        masks.append(m)
    r_failures = []
    for i, x in enumerate(elems):
        if not (masks[i] >> i) & 1:
            r_failures.append({"law": "reflexive", "at": x})
        rest = masks[i]
        while rest:
            low = rest & -rest
            j = low.bit_length() - 1
            rest ^= low
            if not (masks[j] >> i) & 1:
                r_failures.append({"law": "symmetric", "at": (x, elems[j])})
            if masks[j] & ~masks[i]:
                r_failures.append({"law": "transitive", "at": (x, elems[j])})
    singletons = check_no_singleton_classes(aug, p.elements)
    return {
        "ok": not (pair_failures or r_failures or singletons),
        "cone": cone.name,
        "radius": radius,
        "ball": len(p.elements),
        "pairs": pairs,
        "pair_failures": pair_failures[:3],
        "r_failures": r_failures[:3],
        "singleton_classes": singletons[:3],
    }


def run_build_suite(cone: ConeStructure, radius: int = 6, stages: Optional[int] = 6) -> dict:
    """Stagewise construction checks: the four structural laws, direction
    independence on every unit, and injectivity of the labeling."""
    state = build_from_cones(cone, radius=radius, stages=stages)
    props = verify_stage_properties(state)
    layout = orient_segments(state)
    by_point: dict = {}
    from .grouporder import PLAIN, plain_of, tag_of

    for lab in state.nu:
        if tag_of(lab) != PLAIN:
            continue
        by_point.setdefault(state.point_of(lab), []).append(plain_of(lab))
    collisions = [v for v in by_point.values() if len(v) > 1]
    return {
        "ok": props["ok"] and not collisions,
        "cone": cone.name,
        "radius": radius,
        "stages": len(state.stages_done),
        "built": len(by_point),
        "properties": {
            "tree": props["tree"]["ok"],
            "gaps": props["gaps"]["ok"],
            "paths": props["paths"]["ok"],
            "identity": props["identity"]["ok"],
        },
        "undetermined": {
            "gaps": len(props["gaps"]["undetermined"]),
            "identity": len(props["identity"]["undetermined"]),
        },
        "oriented_labels": layout.checked_labels,
        "label_collisions": collisions[:3],
        "report": props,
    }


def run_roundtrip_suite(cone: ConeStructure, radius: int = 6) -> dict:
    """Build, blow up, act, and compare the orbit order with the ball order;
    undetermined pairs are the ones touching an escaped element."""
    rep = roundtrip_orbit(cone, radius=radius)
    orbit = rep["orbit"]
    n_ball = rep["ball"]
    n_real = rep["realized"]
    total_pairs = n_ball * (n_ball - 1) // 2
    determined_pairs = n_real * (n_real - 1) // 2
    rep["pair_coverage"] = Fraction(determined_pairs, total_pairs) if total_pairs else Fraction(1)
    rep["undetermined_elements"] = list(orbit.escaped)
    return rep


def run_blowup_suite(radius: int = 6) -> dict:
    """Blow-up shape checks plus orientation preservation of the action."""
    tree, manifold, action = dihedral_example(radius)
    shape = check_blowup(manifold)
    act_rep = check_action(manifold, action, radius=2)
    return {
        "ok": shape["ok"] and act_rep["ok"],
        "radius": radius,
        "shape": shape,
        "action": act_rep,
    }


def run_quotient_suite(name: str, radius: int = 6) -> dict:
    """Quotient scenario by name; negative scenarios report the witness."""
    cone, sub = get_quotient_scenario(name)
    from .grouporder import ConeError, check_completely_convex

    convexity = check_completely_convex(cone, sub, radius)
    out: dict = {
        "ok": convexity.ok,
        "scenario": name,
        "cone": cone.name,
        "subgroup": sub.name,
        "radius": radius,
        "convex": convexity.ok,
        "convexity_violations": [
            {"pair": w["pair"], "witness": w["witness"]} for w in convexity.violations[:3]
        ],
    }
    if not convexity.ok:
        return out
    result = quotient_order(cone, sub, radius)
    out["ok"] = result.ok
    out["representatives"] = len(result.representatives)
    out["property_counts"] = result.property_counts
    out["property_violations"] = result.property_violations[:3]
    out["uniqueness_violations"] = result.uniqueness[:3]
    out["result"] = result
    return out


def run_orbit_suite(radius: int = 6) -> dict:
    """Dihedral orbit order shape: valid but not strongly connected, with
    both tag kinds present and no realized bounds behind any tag."""
    _, manifold, action = dihedral_example(radius)
    orb = orbit_poset(manifold, action, DIHEDRAL_BASE_POINT, radius)
    p = orb.poset
    unbacked = p.check_strongly_connected()
    tags = {p.rel(a, b) for a, b in p.iter_pairs()}
    realized_pairs = []
    for a, b in p.iter_pairs():
        r = p.rel(a, b)
        if r == SIMU and realized_bound(manifold, orb.points, a, b, upper=True) is not None:
            realized_pairs.append((a, b, "upper"))
        if r == SIML and realized_bound(manifold, orb.points, a, b, upper=False) is not None:
            realized_pairs.append((a, b, "lower"))
    tagged = sum(1 for a, b in p.iter_pairs() if p.rel(a, b) in (SIMU, SIML))
    return {
        "ok": (
            bool(unbacked)
            and not realized_pairs
            and len(unbacked) == tagged
            and SIMU in tags
            and SIML in tags
            and not p.is_trivial_extension()
        ),
        "radius": radius,
        "realized": len(orb.realized),
        "escaped": len(orb.escaped),
        "tagged_pairs": tagged,
        "unbacked_pairs": len(unbacked),
        "realized_bound_pairs": realized_pairs[:3],
        "has_simu": SIMU in tags,
        "has_siml": SIML in tags,
        "trivial_extension": p.is_trivial_extension(),
    }


# -- the examples registry ------------------------------------------------------


class ExampleEntry:
    """A named runnable scenario with prose notes.

    Hypotheses that the checks do not decide (minimality of the action, the
    absence of fixed ends) are stated in the notes, not computed.
    """

    def __init__(self, name: str, summary: str, run: Callable, notes: str = ""):
        self.name = name
        self.summary = summary
        self.run = run
        self.notes = notes


def _expect_broken_cone(radius: int = 8) -> dict:
    report = verify_cone_axioms(z_broken(), radius)
    cond2 = report.conditions[2]
    witnessed = any(tuple(w[:2]) == (1, 1) for w in cond2.violations)
    return {
        "ok": (not report.ok) and (not cond2.ok) and witnessed,
        "radius": radius,
        "condition2_violations": cond2.violation_count,
        "first_witnesses": cond2.violations[:3],
    }


def _expect_nonconvex(radius: int = 6) -> dict:
    rep = run_quotient_suite("z-by-even", radius)
    witnesses = {w["witness"] for w in rep["convexity_violations"]}
    return {
        "ok": (not rep["convex"]) and 1 in witnesses,
        "radius": radius,
        "witnesses": sorted(witnesses),
    }


def _cone_example(name: str, radius: int = 8) -> Callable:
    def run(r: int = radius) -> dict:
        report = verify_cone_axioms(get_cone(name), r)
        return {"ok": report.ok, "radius": r, "ball": report.ball_size}

    return run


def _composite(cone_factory: Callable) -> Callable:
    def run(r: int = 6) -> dict:
        cone = cone_factory()
        axioms = verify_cone_axioms(cone, max(r, 8))
        trip = run_roundtrip_suite(cone, r)
        build = run_build_suite(cone, radius=r, stages=6)
        return {
            "ok": axioms.ok and trip["ok"] and build["ok"] and trip["pair_coverage"] >= Fraction(9, 10),
            "cone_axioms": axioms.ok,
            "construction": build["ok"],
            "roundtrip": trip["ok"],
            "pair_coverage": trip["pair_coverage"],
            "undetermined_elements": trip["undetermined_elements"],
        }

    return run


EXAMPLES: list = [
    ExampleEntry(
        "z", "full walk for the integers: axioms, construction, round trip",
        _composite(z_standard),
    ),
    ExampleEntry(
        "dihedral", "full walk for the dihedral order: axioms, construction, round trip",
        _composite(dihedral_standard),
        notes="The underlying action is minimal and has no fixed end; both "
              "are hypotheses of the correspondence, stated here rather than "
              "decided by the checks.",
    ),
    ExampleEntry(
        "cones-z", "cone axioms for the standard order on the integers",
        _cone_example("z-standard"),
    ),
    ExampleEntry(
        "cones-z2-lex", "cone axioms for the lexicographic plane order",
        _cone_example("z2-lex"),
    ),
    ExampleEntry(
        "cones-free", "cone axioms for the total order on the free group",
        _cone_example("free2-standard"),
        notes="Total order via the leading sign of the series embedding of "
              "reduced words; the upper and lower pieces are empty.",
    ),
    ExampleEntry(
        "cones-dihedral", "cone axioms for the infinite dihedral order",
        _cone_example("dihedral-standard"),
        notes="Predicates frozen from the alternating-line action; "
              "derive_cone_pieces regenerates them for comparison.",
    ),
    ExampleEntry(
        "detect-broken-cone", "a bad positive set is caught with a witness",
        _expect_broken_cone,
        notes="Passes when condition 2 fails on the pair (1, 1).",
    ),
    ExampleEntry(
        "gplus-z", "doubled-order laws on an integer ball",
        lambda r=6: run_gplus_suite(z_standard(), r),
    ),
    ExampleEntry(
        "gplus-dihedral", "doubled-order laws on a dihedral ball",
        lambda r=6: run_gplus_suite(dihedral_standard(), r),
    ),
    ExampleEntry(
        "build-z", "stagewise tree construction over the integers",
        lambda r=6: run_build_suite(z_standard(), radius=r, stages=6),
    ),
    ExampleEntry(
        "build-dihedral", "stagewise tree construction for the dihedral order",
        lambda r=6: run_build_suite(dihedral_standard(), radius=r, stages=6),
    ),
    ExampleEntry(
        "blowup-line", "blow-up of the alternating line, with the action",
        run_blowup_suite,
        notes="The action is orientation preserving on every mapped arc; "
              "minimality of the action is a stated hypothesis, not checked.",
    ),
    ExampleEntry(
        "roundtrip-z", "order, tree, manifold, and back on the integers",
        lambda r=6: run_roundtrip_suite(z_standard(), r),
    ),
    ExampleEntry(
        "roundtrip-dihedral", "order, tree, manifold, and back for the dihedral group",
        lambda r=6: run_roundtrip_suite(dihedral_standard(), r),
        notes="Exactness relies on the built window covering the ball; the "
              "correspondence assumes the action has no fixed end, which is "
              "recorded here rather than decided.",
    ),
    ExampleEntry(
        "quotient-z2-lex", "coset order of the plane by its second factor",
        lambda r=6: run_quotient_suite("z2-lex-by-second-factor", r),
    ),
    ExampleEntry(
        "detect-nonconvex-quotient", "a non-convex subgroup is caught with a witness",
        _expect_nonconvex,
        notes="Passes when 1 is reported between two even integers.",
    ),
    ExampleEntry(
        "orbit-dihedral", "the dihedral orbit order is tagged but unbounded",
        run_orbit_suite,
        notes="Every tagged pair lacks a realized bound among orbit points; "
              "the bounds exist only on the blown-in rays, which the orbit "
              "never meets.",
    ),
]

EXAMPLE_INDEX = {e.name: e for e in EXAMPLES}


def get_example(name: str) -> ExampleEntry:
    try:
        return EXAMPLE_INDEX[name]
    except KeyError:
        known = ", ".join(e.name for e in EXAMPLES)
        raise CatalogError(f"unknown example {name!r}; known: {known}") from None
