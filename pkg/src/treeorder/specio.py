"""Versioned JSON documents for orders, posets, trees, and scenarios.

One document format drives every checker command: a JSON object with
``version``, ``kind``, and ``body``.  Parsing is strict: unknown kinds,
unknown fields, and malformed bodies are rejected up front so a typo in a
spec never silently changes what gets checked.  The same schemas are used
for emission, so an emitted poset or tree feeds back into the checkers.

Document kinds and bodies:

* ``group-order``: ``{"builtin": name}`` or ``{"name", "group", "cones"}``.
  ``group`` is ``{"family": "z"|"zk"|"free"|"dihedral", "k"?}`` or
  ``{"table": {"elements", "products", "identity"}}``.  ``cones`` holds
  ``positive`` and optional ``upper``/``lower`` predicate expressions.
* ``poset``: ``{"elements": [...], "relations": [[a, rel, b], ...]}`` with
  one relation per unordered pair.
* ``tree``: ``{"nodes": [...], "arcs": [[id, tail, head], ...],
  "boundary": [...]}``; ids may be strings, integers, or nested lists
  (loaded as tuples).
* ``scenario``: ``{"name": ...}`` naming a catalog entry.

Predicate expressions are small trees over normal-form components:
``{"op": "cmp", "component": i, "rel": ">", "value": 0}``,
``{"op": "parity", "component": i, "value": 0|1}``,
``{"op": "lex-positive", "components"?: [...]}``,
``{"op": "all"|"any", "args": [...]}``, ``{"op": "not", "arg": ...}``,
``{"op": "const", "value": bool}``, and ``{"op": "builtin", "name":
"series-positive"}`` for the reduced-word sign, which has no coordinate
form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .groups import GroupError, TableGroup, make_group
from .grouporder import ConeStructure
from .ordertree import OrderTree
from .poset import REL_CODES, REL_NAMES, ExtendedPoset, from_pairs

SPEC_VERSION = "1"

KINDS = ("group-order", "poset", "tree", "scenario")


class SpecError(ValueError):
    """Raised for malformed or unknown document content."""


@dataclass(frozen=True)
class SpecDocument:
    kind: str
    version: str
    body: dict


def _require_fields(obj: dict, where: str, required: set, optional: set = frozenset()) -> None:
    if not isinstance(obj, dict):
        raise SpecError(f"{where} must be an object")
    missing = required - obj.keys()
    if missing:
        raise SpecError(f"{where} misses fields: {', '.join(sorted(missing))}")
    unknown = obj.keys() - required - optional
    if unknown:
        raise SpecError(f"{where} has unknown fields: {', '.join(sorted(unknown))}")


def _freeze(x):
    """JSON arrays become tuples so ids stay hashable."""
    if isinstance(x, list):
        return tuple(_freeze(v) for v in x)
    return x


def _thaw(x):
    if isinstance(x, tuple):
        return [_thaw(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    return x


def parse_document(obj) -> SpecDocument:
    _require_fields(obj, "document", {"version", "kind", "body"})
    if obj["version"] != SPEC_VERSION:
        raise SpecError(f"unsupported version {obj['version']!r}; this build reads {SPEC_VERSION!r}")
    kind = obj["kind"]
    if kind not in KINDS:
        raise SpecError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    body = obj["body"]
    validator = _BODY_VALIDATORS[kind]
    validator(body)
    return SpecDocument(kind=kind, version=obj["version"], body=body)


def load_document(path: str) -> SpecDocument:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as err:
        raise SpecError(f"cannot read {path}: {err}") from None
    except json.JSONDecodeError as err:
        raise SpecError(f"{path} is not valid JSON: {err}") from None
    return parse_document(obj)


# -- group-order documents ---------------------------------------------------


_CMP = {
    ">": lambda a, b: a > b,
    "<": lambda a, b: a < b,
    ">=": lambda a, b: a >= b,
    "<=": lambda a, b: a <= b,
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
}

_BUILTIN_PREDICATES = ("series-positive",)


def _validate_expr(expr, where: str) -> None:
    if not isinstance(expr, dict) or "op" not in expr:
        raise SpecError(f"{where} must be an object with an 'op' field")
    op = expr["op"]
    if op == "cmp":
        _require_fields(expr, where, {"op", "component", "rel", "value"})
        if expr["rel"] not in _CMP:
            raise SpecError(f"{where}: unknown comparison {expr['rel']!r}")
        if not isinstance(expr["component"], int) or not isinstance(expr["value"], int):
            raise SpecError(f"{where}: component and value must be integers")
    elif op == "parity":
        _require_fields(expr, where, {"op", "component", "value"})
        if expr["value"] not in (0, 1):
            raise SpecError(f"{where}: parity value must be 0 or 1")
    elif op == "lex-positive":
        _require_fields(expr, where, {"op"}, {"components"})
    elif op in ("all", "any"):
        _require_fields(expr, where, {"op", "args"})
        if not isinstance(expr["args"], list):
            raise SpecError(f"{where}: args must be an array")
        for i, sub in enumerate(expr["args"]):
            _validate_expr(sub, f"{where}.args[{i}]")
    elif op == "not":
        _require_fields(expr, where, {"op", "arg"})
        _validate_expr(expr["arg"], f"{where}.arg")
    elif op == "const":
        _require_fields(expr, where, {"op", "value"})
        if not isinstance(expr["value"], bool):
            raise SpecError(f"{where}: const value must be a boolean")
    elif op == "builtin":
        _require_fields(expr, where, {"op", "name"})
        if expr["name"] not in _BUILTIN_PREDICATES:
            raise SpecError(f"{where}: unknown builtin {expr['name']!r}")
    else:
        raise SpecError(f"{where}: unknown op {op!r}")


def _validate_group_order_body(body) -> None:
    if isinstance(body, dict) and "builtin" in body:
        _require_fields(body, "group-order body", {"builtin"})
        return
    _require_fields(body, "group-order body", {"group", "cones"}, {"name"})
    group = body["group"]
    if isinstance(group, dict) and "table" in group:
        _require_fields(group, "group", {"table"})
        _require_fields(group["table"], "group.table", {"elements", "products", "identity"})
    else:
        _require_fields(group, "group", {"family"}, {"k"})
    _require_fields(body["cones"], "cones", {"positive"}, {"upper", "lower"})
    for key in ("positive", "upper", "lower"):
        if key in body["cones"]:
            _validate_expr(body["cones"][key], f"cones.{key}")


def build_group(spec: dict):
    if "table" in spec:
        t = spec["table"]
        return TableGroup(
            [_freeze(e) for e in t["elements"]],
            [[_freeze(c) for c in row] for row in t["products"]],
            _freeze(t["identity"]),
        )
    try:
        return make_group(spec["family"], spec.get("k"))
    except GroupError as err:
        raise SpecError(str(err)) from None


def build_predicate(expr: dict, group) -> Callable:
    op = expr["op"]
    if op == "cmp":
        i, rel, value = expr["component"], _CMP[expr["rel"]], expr["value"]

        def run(w):
            comps = group.components(w)
            if i >= len(comps):
                raise SpecError(f"component {i} out of range for {group.format(w)}")
            return rel(comps[i], value)

        return run
    if op == "parity":
        i, value = expr["component"], expr["value"]
        return lambda w: group.components(w)[i] % 2 == value
    if op == "lex-positive":
        wanted = expr.get("components")

        def run(w):
            comps = group.components(w)
            order = wanted if wanted is not None else range(len(comps))
            for i in order:
                if comps[i]:
                    return comps[i] > 0
            return False

        return run
    if op == "all":
        subs = [build_predicate(a, group) for a in expr["args"]]
        return lambda w: all(s(w) for s in subs)
    if op == "any":
        subs = [build_predicate(a, group) for a in expr["args"]]
        return lambda w: any(s(w) for s in subs)
    if op == "not":
        sub = build_predicate(expr["arg"], group)
        return lambda w: not sub(w)
    if op == "const":
        value = expr["value"]
        return lambda w: value
    if op == "builtin":
        if expr.get("name") not in _BUILTIN_PREDICATES:
            raise SpecError(f"unknown builtin {expr.get('name')!r}")
        if not hasattr(group, "order_sign"):
            raise SpecError("series-positive needs a group with a series sign")
        return lambda w: group.order_sign(w) > 0
    raise SpecError(f"unknown op {op!r}")


def cone_from_document(doc: SpecDocument) -> ConeStructure:
    if doc.kind != "group-order":
        raise SpecError(f"expected a group-order document, got {doc.kind!r}")
    body = doc.body
    if "builtin" in body:
        from .catalog import get_cone

        return get_cone(body["builtin"])
    group = build_group(body["group"])
    cones = body["cones"]
    never = lambda w: False
    return ConeStructure(
        body.get("name", "spec-cone"),
        group,
        build_predicate(cones["positive"], group),
        build_predicate(cones["upper"], group) if "upper" in cones else never,
        build_predicate(cones["lower"], group) if "lower" in cones else never,
    )


# -- poset documents ----------------------------------------------------------


def _validate_poset_body(body) -> None:
    _require_fields(body, "poset body", {"elements", "relations"})
    if not isinstance(body["elements"], list) or not isinstance(body["relations"], list):
        raise SpecError("poset body needs element and relation arrays")
    for i, entry in enumerate(body["relations"]):
        if not (isinstance(entry, list) and len(entry) == 3):
            raise SpecError(f"relations[{i}] must be [a, relation, b]")
        if entry[1] not in REL_CODES or entry[1] == "eq":
            raise SpecError(f"relations[{i}]: unknown relation {entry[1]!r}")


def poset_from_document(doc: SpecDocument) -> ExtendedPoset:
    if doc.kind != "poset":
        raise SpecError(f"expected a poset document, got {doc.kind!r}")
    elements = [_freeze(e) for e in doc.body["elements"]]
    pairs = [(_freeze(a), rel, _freeze(b)) for a, rel, b in doc.body["relations"]]
    return from_pairs(elements, pairs)


def poset_to_document(p: ExtendedPoset, fmt: Optional[Callable] = None) -> dict:
    label = fmt if fmt is not None else lambda e: _thaw(e)
    elements = [label(e) for e in p.elements]
    relations = [[label(a), REL_NAMES[p.rel(a, b)], label(b)] for a, b in p.iter_pairs()]
    return {
        "version": SPEC_VERSION,
        "kind": "poset",
        "body": {"elements": elements, "relations": relations},
    }


# -- tree documents -----------------------------------------------------------


def _validate_tree_body(body) -> None:
    """Both the terse hand-written form and the richer emitted form load."""
    _require_fields(body, "tree body", {"nodes", "arcs"}, {"boundary"})
    for i, entry in enumerate(body["nodes"]):
        if isinstance(entry, dict):
            _require_fields(entry, f"nodes[{i}]", {"id"}, {"kind", "labels"})
    for i, entry in enumerate(body["arcs"]):
        if isinstance(entry, dict):
            _require_fields(entry, f"arcs[{i}]", {"id", "tail", "head"}, {"kind", "core", "labels"})
        elif not (isinstance(entry, list) and len(entry) == 3):
            raise SpecError(f"arcs[{i}] must be [id, tail, head] or an object")


def tree_from_document(doc: SpecDocument) -> OrderTree:
    if doc.kind != "tree":
        raise SpecError(f"expected a tree document, got {doc.kind!r}")
    t = OrderTree()
    for entry in doc.body["nodes"]:
        if isinstance(entry, dict):
            t.add_node(_freeze(entry["id"]), kind=entry.get("kind", "point"))
        else:
            t.add_node(_freeze(entry))
    for entry in doc.body["arcs"]:
        if isinstance(entry, dict):
            t.add_arc(
                _freeze(entry["id"]), _freeze(entry["tail"]), _freeze(entry["head"]),
                kind=entry.get("kind", "arc"), core=entry.get("core", True),
            )
        else:
            aid, tail, head = entry
            t.add_arc(_freeze(aid), _freeze(tail), _freeze(head))
    t.boundary = {_freeze(n) for n in doc.body.get("boundary", [])}
    return t


def _sort_key(x) -> str:
    return repr(x)


def tree_to_document(tree: OrderTree, node_labels: Optional[dict] = None,
                     arc_labels: Optional[dict] = None) -> dict:
    nodes = []
    for nid in sorted(tree.nodes, key=_sort_key):
        rec = {"id": _thaw(nid), "kind": tree.nodes[nid].kind}
        if node_labels and nid in node_labels:
            rec["labels"] = sorted(node_labels[nid])
        nodes.append(rec)
    arcs = []
    for aid in tree.sorted_arc_ids():
        arc = tree.arcs[aid]
        rec = {
            "id": _thaw(aid),
            "tail": _thaw(arc.tail),
            "head": _thaw(arc.head),
            "kind": arc.kind,
            "core": arc.core,
        }
        if arc_labels and aid in arc_labels:
            rec["labels"] = [[name, str(t)] for name, t in arc_labels[aid]]
        arcs.append(rec)
    return {
        "version": SPEC_VERSION,
        "kind": "tree",
        "body": {
            "nodes": nodes,
            "arcs": arcs,
            "boundary": [_thaw(n) for n in sorted(tree.boundary, key=_sort_key)],
        },
    }


def _dot_quote(s: str) -> str:
    # Leave backslashes alone so "\n" stays a dot line-break escape.
    return '"' + s.replace('"', '\\"') + '"'


def tree_to_dot(tree: OrderTree, node_labels: Optional[dict] = None,
                arc_labels: Optional[dict] = None) -> str:
    """Render: arcs as directed edges, ray pieces dashed, labels attached."""
    shapes = {"point": "ellipse", "open": "circle", "openray": "diamond"}
    lines = ["digraph ordertree {", "  rankdir=LR;"]
    for nid in sorted(tree.nodes, key=_sort_key):
        rec = tree.nodes[nid]
        name = _dot_quote(str(nid))
        text = str(nid)
        if node_labels and nid in node_labels:
            text += "\\n" + ",".join(sorted(node_labels[nid]))
        attrs = [f"label={_dot_quote(text)}", f"shape={shapes.get(rec.kind, 'box')}"]
        if nid in tree.boundary:
            attrs.append("style=bold")
        lines.append(f"  {name} [{', '.join(attrs)}];")
    for aid in tree.sorted_arc_ids():
        arc = tree.arcs[aid]
        attrs = [f"label={_dot_quote(str(aid))}"]
        if not arc.core:
            attrs.append("style=dashed")
        if arc_labels and aid in arc_labels:
            marks = ",".join(f"{name}@{t}" for name, t in arc_labels[aid])
            attrs = [f"label={_dot_quote(str(aid) + ' ' + marks)}"] + attrs[1:]
        lines.append(f"  {_dot_quote(str(arc.tail))} -> {_dot_quote(str(arc.head))} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- scenario documents ---------------------------------------------------------


def _validate_scenario_body(body) -> None:
    _require_fields(body, "scenario body", {"name"}, {"radius"})


_BODY_VALIDATORS = {
    "group-order": _validate_group_order_body,
    "poset": _validate_poset_body,
    "tree": _validate_tree_body,
    "scenario": _validate_scenario_body,
}


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
