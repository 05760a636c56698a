"""Batch driver: load spec documents, run checks, emit reports and artifacts.

Exit status contract: 0 when every check passed, 1 when a check failed
(witnesses are printed), 2 for malformed specs or usage errors.  Counts of
undetermined items are always printed and never affect the exit status.
Reports are deterministic: fixed iteration orders, no timestamps, so the
same spec and flags give byte-identical output.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from typing import Callable, Optional

from .catalog import (
    BUILTIN_CONES,
    CatalogError,
    EXAMPLES,
    get_action_scenario,
    get_cone,
    get_example,
    get_subgroup,
    get_tree,
    run_build_suite,
    run_roundtrip_suite,
)
from .corpus import run_relation_suite
from .groups import GroupError
from .grouporder import ConeError, verify_cone_axioms
from .orbitorder import OrbitError, orbit_poset
from .ordertree import TreeError, check_blowup, denjoy_blowup
from .poset import REL_NAMES, PosetError
from .specio import (
    SpecError,
    canonical_json,
    cone_from_document,
    load_document,
    parse_document,
    poset_from_document,
    poset_to_document,
    tree_from_document,
    tree_to_document,
    tree_to_dot,
)
from .treebuild import BuildError, build_from_cones, orient_segments

CHECK_ERRORS = (PosetError, ConeError, BuildError, OrbitError, TreeError)
SPEC_ERRORS = (SpecError, CatalogError, GroupError)


def _parse_args(argv):
    parser = argparse.ArgumentParser(
        prog="treeorder",
        description="checks and constructions for orders, trees, and actions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, radius=True, stages=False, emit=False, threads=False):
        if radius:
            p.add_argument("--radius", type=int, default=6, help="ball radius (default 6)")
        if stages:
            p.add_argument("--stages", type=int, default=6, help="construction stages (default 6)")
        if emit:
            p.add_argument("--emit", choices=["dot", "json"], help="print the artifact instead of the report")
        if threads:
            p.add_argument("--threads", type=int, default=1, help="parallel sweep width")
        p.add_argument("--json", action="store_true", help="machine-readable report")

    p = sub.add_parser("check-cones", help="verify the cone axioms of a group order")
    p.add_argument("spec", help="spec file or builtin cone name")
    common(p, threads=True)

    p = sub.add_parser("check-poset", help="validate a poset document and its relation laws")
    p.add_argument("spec", help="poset spec file")
    common(p, radius=False)

    p = sub.add_parser("build-tree", help="run the stagewise tree construction")
    p.add_argument("spec", help="spec file or builtin cone name")
    common(p, stages=True, emit=True)

    p = sub.add_parser("blowup", help="blow a tree up into a branchless manifold")
    p.add_argument("spec", help="tree spec file or builtin tree name")
    common(p, emit=True)

    p = sub.add_parser("orbit-order", help="pull the manifold order back along an orbit")
    p.add_argument("scenario", help="scenario spec file or builtin scenario name")
    common(p)

    p = sub.add_parser("quotient", help="order the cosets of a convex normal subgroup")
    p.add_argument("spec", help="spec file or builtin cone name")
    p.add_argument("--subgroup", required=True, help="builtin subgroup name")
    common(p)

    p = sub.add_parser("roundtrip", help="compare the rebuilt orbit order with the ball order")
    p.add_argument("spec", help="spec file or builtin cone name")
    common(p)

    p = sub.add_parser("examples", help="list or run the example catalog")
    p.add_argument("action", choices=["list", "run"])
    p.add_argument("name", nargs="?", help="example name (for run)")
    p.add_argument("--radius", type=int, default=None, help="override the example radius")
    p.add_argument("--json", action="store_true", help="machine-readable report")

    return parser.parse_args(argv)


def _load_cone(spec: str):
    if os.path.exists(spec):
        return cone_from_document(load_document(spec))
    if spec in BUILTIN_CONES:
        return get_cone(spec)
    if spec.endswith(".json"):
        raise SpecError(f"cannot read {spec}: no such file")
    raise SpecError(f"{spec!r} is neither a spec file nor a builtin cone name")


def _emit(payload_lines, args, payload) -> None:
    if getattr(args, "json", False):
        sys.stdout.write(canonical_json(payload))
    else:
        for line in payload_lines:
            print(line)


def _fraction(x) -> str:
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(_jsonable(k)): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return _fraction(obj)
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return str(obj)


def _cmd_check_cones(args) -> int:
    cone = _load_cone(args.spec)
    report = verify_cone_axioms(cone, args.radius, threads=args.threads)
    fmt = cone.group.format
    lines = [f"cone {cone.name}: ball {report.ball_size} at radius {args.radius}"]
    for idx, cond in sorted(report.conditions.items()):
        state = "pass" if cond.ok else f"FAIL ({cond.violation_count} violations)"
        lines.append(f"  condition {idx} {cond.description}: {state} (checked {cond.checked})")
        for w in cond.violations[:5]:
            lines.append("    witness: " + ", ".join(fmt(x) for x in w))
    lines.append(f"result: {'PASS' if report.ok else 'FAIL'}")
    _emit(lines, args, report.to_jsonable(fmt))
    return 0 if report.ok else 1


def _cmd_check_poset(args) -> int:
    doc = load_document(args.spec)
    try:
        poset = poset_from_document(doc)
    except PosetError as err:
        _emit([f"poset: INVALID", f"  witness: {err}", "result: FAIL"], args,
              {"ok": False, "error": str(err)})
        return 1
    suite = run_relation_suite(poset)
    lines = [f"poset: {poset.n} elements, valid"]
    for law in ("theorem", "travel", "propagation", "o_equivalence"):
        probs = suite[law]
        lines.append(f"  {law}: {'pass' if not probs else 'FAIL'}")
        for prob in probs[:3]:
            lines.append(f"    witness: {prob}")
    lines.append(f"result: {'PASS' if suite['ok'] else 'FAIL'}")
    _emit(lines, args, _jsonable({"ok": suite["ok"], "elements": poset.n, "laws": suite}))
    return 0 if suite["ok"] else 1


def _layout_annotations(state, layout) -> tuple:
    node_labels: dict = {}
    arc_labels: dict = {}
    for nid, labs in layout.node_labels.items():
        node_labels[nid] = [state.format_label(lab) for lab in labs]
    for lab, pt in sorted(layout.label_point.items(), key=lambda kv: str(kv[1])):
        if pt[0] == "arc":
            arc_labels.setdefault(pt[1], []).append((state.format_label(lab), pt[2]))
    for aid in arc_labels:
        arc_labels[aid].sort(key=lambda item: item[1])
    return node_labels, arc_labels


def _cmd_build_tree(args) -> int:
    cone = _load_cone(args.spec)
    suite = run_build_suite(cone, radius=args.radius, stages=args.stages)
    state = build_from_cones(cone, radius=args.radius, stages=args.stages)
    layout = orient_segments(state)
    if args.emit:
        node_labels, arc_labels = _layout_annotations(state, layout)
        if args.emit == "dot":
            sys.stdout.write(tree_to_dot(layout.tree, node_labels, arc_labels))
        else:
            sys.stdout.write(canonical_json(tree_to_document(layout.tree, node_labels, arc_labels)))
        return 0 if suite["ok"] else 1
    lines = [
        f"build {cone.name}: radius {args.radius}, {suite['stages']} stages, {suite['built']} elements placed",
    ]
    for prop in ("tree", "gaps", "paths", "identity"):
        lines.append(f"  {prop}: {'pass' if suite['properties'][prop] else 'FAIL'}")
    lines.append(
        f"  undetermined: {suite['undetermined']['gaps']} gaps, "
        f"{suite['undetermined']['identity']} identities"
    )
    lines.append(f"  oriented labels checked: {suite['oriented_labels']}")
    if suite["label_collisions"]:
        lines.append(f"  label collisions: {suite['label_collisions']}")
    lines.append(f"result: {'PASS' if suite['ok'] else 'FAIL'}")
    payload = {k: v for k, v in suite.items() if k != "report"}
    _emit(lines, args, _jsonable(payload))
    return 0 if suite["ok"] else 1


def _load_tree(spec: str, radius: int):
    if os.path.exists(spec):
        return tree_from_document(load_document(spec))
    try:
        return get_tree(spec, radius)
    except CatalogError:
        if spec.endswith(".json"):
            raise SpecError(f"cannot read {spec}: no such file") from None
        raise


def _cmd_blowup(args) -> int:
    tree = _load_tree(args.spec, args.radius)
    manifold = denjoy_blowup(tree)
    report = check_blowup(manifold)
    if args.emit:
        if args.emit == "dot":
            sys.stdout.write(tree_to_dot(manifold))
        else:
            sys.stdout.write(canonical_json(tree_to_document(manifold)))
        return 0 if report["ok"] else 1
    kinds: dict = {}
    for nid in manifold.sorted_node_ids():
        kind = manifold.nodes[nid].kind
        kinds[kind] = kinds.get(kind, 0) + 1
    lines = [f"blowup: {len(tree.arcs)} arcs in, {len(manifold.arcs)} arcs out"]
    lines.append(f"  branchless: {'pass' if manifold.is_branchless() else 'FAIL'}")
    lines.append(f"  collapse checks: {'pass' if report['ok'] else 'FAIL'}")
    for prob in report["problems"][:5]:
        lines.append(f"    witness: {prob}")
    for kind in sorted(kinds):
        lines.append(f"  point kind {kind}: {kinds[kind]}")
    lines.append(f"result: {'PASS' if report['ok'] else 'FAIL'}")
    _emit(lines, args, _jsonable({"ok": report["ok"], "problems": report["problems"], "kinds": kinds}))
    return 0 if report["ok"] else 1


def _cmd_orbit_order(args) -> int:
    name = args.scenario
    if os.path.exists(name):
        doc = load_document(name)
        if doc.kind != "scenario":
            raise SpecError(f"expected a scenario document, got {doc.kind!r}")
        name = doc.body["name"]
        radius = doc.body.get("radius", args.radius)
    else:
        radius = args.radius
    manifold, action, base = get_action_scenario(name, radius)
    orbit = orbit_poset(manifold, action, base, radius)
    fmt = action.group.format
    tag_counts: dict = {}
    for a, b in orbit.poset.iter_pairs():
        rel = REL_NAMES[orbit.poset.rel(a, b)]
        tag_counts[rel] = tag_counts.get(rel, 0) + 1
    lines = [f"orbit {name}: radius {radius}, {len(orbit.realized)} realized, {len(orbit.escaped)} undetermined"]
    if orbit.escaped:
        lines.append("  undetermined elements: " + ", ".join(fmt(g) for g in orbit.escaped))
    for rel in sorted(tag_counts):
        lines.append(f"  pairs {rel}: {tag_counts[rel]}")
    lines.append("result: PASS")
    payload = {
        "ok": True,
        "scenario": name,
        "radius": radius,
        "realized": len(orbit.realized),
        "undetermined": [fmt(g) for g in orbit.escaped],
        "pair_counts": tag_counts,
        "poset": poset_to_document(orbit.poset, fmt=fmt),
    }
    _emit(lines, args, _jsonable(payload))
    return 0


def _cmd_quotient(args) -> int:
    cone = _load_cone(args.spec)
    sub = get_subgroup(args.subgroup)
    from .grouporder import check_completely_convex, quotient_order

    fmt = cone.group.format
    convexity = check_completely_convex(cone, sub, args.radius)
    lines = [f"quotient {cone.name} by {sub.name}: radius {args.radius}"]
    if not convexity.ok:
        lines.append(f"  complete convexity: FAIL ({len(convexity.violations)} violations)")
        for w in convexity.violations[:5]:
            lines.append(
                f"    witness: {fmt(w['witness'])} lies between "
                f"{fmt(w['pair'][0])} and {fmt(w['pair'][1])}"
            )
        lines.append("result: FAIL")
        _emit(lines, args, _jsonable({
            "ok": False,
            "convex": False,
            "violations": [
                {"witness": fmt(w["witness"]), "pair": [fmt(w["pair"][0]), fmt(w["pair"][1])]}
                for w in convexity.violations[:5]
            ],
        }))
        return 1
    result = quotient_order(cone, sub, args.radius)
    lines.append(f"  complete convexity: pass ({convexity.pairs_checked} pairs)")
    lines.append(f"  representatives: {len(result.representatives)}")
    for clause in sorted(result.property_counts):
        n_bad = sum(1 for v in result.property_violations if v["clause"] == clause)
        state = "pass" if not n_bad else f"FAIL ({n_bad})"
        lines.append(f"  property {clause}: {state} (checked {result.property_counts[clause]})")
    if result.uniqueness:
        lines.append(f"  relation uniqueness: FAIL ({len(result.uniqueness)})")
    lines.append(f"result: {'PASS' if result.ok else 'FAIL'}")
    payload = {
        "ok": result.ok,
        "convex": True,
        "representatives": [fmt(r) for r in result.representatives],
        "property_counts": result.property_counts,
        "property_violations": result.property_violations[:5],
        "poset": poset_to_document(result.poset, fmt=fmt),
    }
    _emit(lines, args, _jsonable(payload))
    return 0 if result.ok else 1


def _cmd_roundtrip(args) -> int:
    cone = _load_cone(args.spec)
    rep = run_roundtrip_suite(cone, args.radius)
    fmt = cone.group.format
    ok = rep["ok"] and rep["pair_coverage"] >= Fraction(9, 10)
    lines = [f"roundtrip {cone.name}: radius {args.radius}"]
    lines.append(f"  realized {rep['realized']} of {rep['ball']} ball elements")
    lines.append(f"  determined pair coverage: {_fraction(rep['pair_coverage'])}")
    if rep["undetermined_elements"]:
        lines.append("  undetermined elements: " + ", ".join(fmt(g) for g in rep["undetermined_elements"]))
    else:
        lines.append("  undetermined elements: none")
    lines.append(f"  order agreement on determined pairs: {'pass' if rep['ok'] else 'FAIL'}")
    for g, h, got, want in rep["mismatches"][:5]:
        lines.append(
            f"    witness: ({fmt(g)}, {fmt(h)}) rebuilt {REL_NAMES[got]}, ball {REL_NAMES[want]}"
        )
    lines.append(f"result: {'PASS' if ok else 'FAIL'}")
    payload = {
        "ok": ok,
        "cone": cone.name,
        "radius": args.radius,
        "realized": rep["realized"],
        "ball": rep["ball"],
        "pair_coverage": rep["pair_coverage"],
        "undetermined": [fmt(g) for g in rep["undetermined_elements"]],
        "mismatches": [
            [fmt(g), fmt(h), REL_NAMES[got], REL_NAMES[want]] for g, h, got, want in rep["mismatches"][:5]
        ],
    }
    _emit(lines, args, _jsonable(payload))
    return 0 if ok else 1


def _cmd_examples(args) -> int:
    if args.action == "list":
        lines = []
        payload = []
        for entry in EXAMPLES:
            lines.append(f"{entry.name:26s} {entry.summary}")
            payload.append({"name": entry.name, "summary": entry.summary, "notes": entry.notes})
        _emit(lines, args, payload)
        return 0
    if not args.name:
        raise SpecError("examples run needs a name; try 'examples list'")
    entry = get_example(args.name)
    rep = entry.run(args.radius) if args.radius is not None else entry.run()
    lines = [f"example {entry.name}: {entry.summary}"]
    if entry.notes:
        lines.append(f"  note: {entry.notes}")
    for key in sorted(rep):
        if key in ("ok", "report", "result", "orbit", "induced"):
            continue
        lines.append(f"  {key}: {_jsonable(rep[key])}")
    lines.append(f"result: {'PASS' if rep['ok'] else 'FAIL'}")
    payload = {k: v for k, v in rep.items() if k not in ("report", "result", "orbit", "induced")}
    _emit(lines, args, _jsonable(payload))
    return 0 if rep["ok"] else 1


_COMMANDS: dict = {
    "check-cones": _cmd_check_cones,
    "check-poset": _cmd_check_poset,
    "build-tree": _cmd_build_tree,
    "blowup": _cmd_blowup,
    "orbit-order": _cmd_orbit_order,
    "quotient": _cmd_quotient,
    "roundtrip": _cmd_roundtrip,
    "examples": _cmd_examples,
}


def main(argv: Optional[list] = None) -> int:
    args = _parse_args(argv if argv is not None else sys.argv[1:])
    handler = _COMMANDS[args.command]
    try:
        return handler(args)
    except SPEC_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except CHECK_ERRORS as err:
        print(f"check failed: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
