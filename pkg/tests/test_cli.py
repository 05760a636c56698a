from __future__ import annotations

import json

import pytest

from treeorder.cli import main

VALID_POSET = {
    "version": "1",
    "kind": "poset",
    "body": {
        "elements": ["a", "b", "c"],
        "relations": [
            ["a", "lt", "b"],
            ["a", "lt", "c"],
            ["b", "siml", "c"],
        ],
    },
}

BROKEN_CONE = {
    "version": "1",
    "kind": "group-order",
    "body": {
        "name": "broken-z",
        "group": {"family": "z"},
        "cones": {
            "positive": {"op": "cmp", "component": 0, "rel": "==", "value": 1},
            "upper": {"op": "const", "value": False},
            "lower": {"op": "const", "value": False},
        },
    },
}


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def test_builtin_cone_passes(capsys):
    assert main(["check-cones", "z-standard", "--radius", "6"]) == 0
    out = capsys.readouterr().out
    assert "result: PASS" in out
    assert "condition 6" in out


def test_broken_cone_fails_with_witness(tmp_path, capsys):
    spec = write(tmp_path, "broken.json", BROKEN_CONE)
    assert main(["check-cones", spec, "--radius", "8"]) == 1
    out = capsys.readouterr().out
    assert "result: FAIL" in out
    assert "witness: 1, 1, 2" in out


def test_unknown_name_is_a_spec_error(capsys):
    assert main(["check-cones", "nonesuch"]) == 2
    err = capsys.readouterr().err
    assert "neither a spec file nor a builtin cone" in err


def test_malformed_file_is_a_spec_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert main(["check-cones", str(path)]) == 2
    assert "error:" in capsys.readouterr().err


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["check-cones"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0


def test_json_reports_are_canonical_and_stable(capsys):
    assert main(["check-cones", "dihedral-standard", "--radius", "6", "--json"]) == 0
    first = capsys.readouterr().out
    assert main(["check-cones", "dihedral-standard", "--radius", "6", "--json"]) == 0
    second = capsys.readouterr().out
    assert first == second
    data = json.loads(first)
    assert data["ok"] is True and data["cone"] == "dihedral-standard"


def test_check_poset_paths(tmp_path, capsys):
    spec = write(tmp_path, "poset.json", VALID_POSET)
    assert main(["check-poset", spec]) == 0
    assert "result: PASS" in capsys.readouterr().out
    sick = dict(VALID_POSET, body={
        "elements": ["a", "b", "c"],
        "relations": [
            ["a", "lt", "b"],
            ["a", "lt", "c"],
            ["b", "simu", "c"],
        ],
    })
    spec = write(tmp_path, "sick.json", sick)
    assert main(["check-poset", spec]) == 1
    out = capsys.readouterr().out
    assert "INVALID" in out and "lower bound" in out


def test_build_tree_report_and_artifacts(capsys):
    assert main(["build-tree", "z-standard", "--radius", "4", "--stages", "4"]) == 0
    out = capsys.readouterr().out
    assert "result: PASS" in out and "undetermined" in out
    assert main(["build-tree", "z-standard", "--radius", "4", "--stages", "4", "--emit", "dot"]) == 0
    dot = capsys.readouterr().out
    assert dot.startswith("digraph")
    assert main(["build-tree", "z-standard", "--radius", "4", "--stages", "4", "--emit", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "tree"
    assert doc["body"]["arcs"]


def test_blowup_builtin_and_file(tmp_path, capsys):
    assert main(["blowup", "alternating-line", "--radius", "2"]) == 0
    assert "branchless: pass" in capsys.readouterr().out
    tree_doc = {
        "version": "1",
        "kind": "tree",
        "body": {
            "nodes": ["a", "b", "c"],
            "arcs": [["e1", "a", "b"], ["e2", "c", "b"]],
            "boundary": ["a", "c"],
        },
    }
    spec = write(tmp_path, "tree.json", tree_doc)
    assert main(["blowup", spec, "--emit", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "tree"
    assert main(["blowup", "baobab"]) == 2


def test_orbit_order_scenarios(tmp_path, capsys):
    assert main(["orbit-order", "z-line", "--radius", "4"]) == 0
    out = capsys.readouterr().out
    assert "pairs lt" in out
    scen = {"version": "1", "kind": "scenario", "body": {"name": "dihedral-line", "radius": 3}}
    spec = write(tmp_path, "scen.json", scen)
    assert main(["orbit-order", spec, "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["ok"] is True
    assert data["radius"] == 3
    assert data["poset"]["kind"] == "poset"


def test_quotient_both_ways(capsys):
    assert main(["quotient", "z2-lex", "--subgroup", "second-factor", "--radius", "4"]) == 0
    assert "complete convexity: pass" in capsys.readouterr().out
    assert main(["quotient", "z-standard", "--subgroup", "even", "--radius", "4"]) == 1
    out = capsys.readouterr().out
    assert "witness: 1 lies between" in out


def test_roundtrip_command(capsys):
    assert main(["roundtrip", "dihedral-standard", "--radius", "4"]) == 0
    out = capsys.readouterr().out
    assert "order agreement on determined pairs: pass" in out
    assert "undetermined elements: none" in out


def test_examples_list_and_run(capsys):
    assert main(["examples", "list"]) == 0
    listing = capsys.readouterr().out
    assert "dihedral" in listing and "detect-broken-cone" in listing
    assert main(["examples", "run", "dihedral", "--radius", "4"]) == 0
    out = capsys.readouterr().out
    assert "cone_axioms: True" in out
    assert "roundtrip: True" in out
    assert "result: PASS" in out
    assert main(["examples", "run"]) == 2
    assert main(["examples", "run", "zeppelin"]) == 2
