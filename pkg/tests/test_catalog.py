from __future__ import annotations

from fractions import Fraction

import pytest

from treeorder.catalog import (
    ACTION_SCENARIOS,
    BUILTIN_CONES,
    CatalogError,
    EXAMPLES,
    QUOTIENT_SCENARIOS,
    SUBGROUPS,
    TREES,
    derive_cone_pieces,
    dihedral_standard,
    get_action_scenario,
    get_cone,
    get_example,
    get_subgroup,
    get_tree,
    run_blowup_suite,
    run_build_suite,
    run_gplus_suite,
    run_orbit_suite,
    run_quotient_suite,
    run_roundtrip_suite,
    z_standard,
)


def test_builtin_cones_resolve():
    for name in BUILTIN_CONES:
        cone = get_cone(name)
        assert cone.name == name
    with pytest.raises(CatalogError, match="unknown cone"):
        get_cone("moebius")
    # KeyError quoting must not leak into the message.
    assert "'moebius'" in str(CatalogError("unknown cone 'moebius'"))
    assert not str(CatalogError("x")).startswith('"')


def test_registries_resolve_and_reject():
    for name in SUBGROUPS:
        assert get_subgroup(name).name == name
    for name in TREES:
        assert get_tree(name, 2).boundary
    for name in ACTION_SCENARIOS:
        manifold, action, base = get_action_scenario(name, 2)
        assert manifold.is_branchless()
        assert base[0] == "arc"
        assert action.name == name
    for name in QUOTIENT_SCENARIOS:
        assert name in ("z2-lex-by-second-factor", "z-by-even")
    for getter, bad in (
        (get_subgroup, "center"),
        (lambda n: get_tree(n, 2), "baobab"),
        (lambda n: get_action_scenario(n, 2), "rotation"),
    ):
        with pytest.raises(CatalogError):
            getter(bad)


def test_derived_pieces_match_the_frozen_cone():
    cone = dihedral_standard()
    pieces = derive_cone_pieces(6)
    assert len(pieces) == 24
    for g, side in pieces.items():
        assert side == cone.side(g)


def test_example_registry_is_curated():
    names = [e.name for e in EXAMPLES]
    assert len(names) == len(set(names))
    assert names[:2] == ["z", "dihedral"]
    assert "detect-broken-cone" in names
    assert "detect-nonconvex-quotient" in names
    with pytest.raises(CatalogError):
        get_example("zeppelin")
    for entry in EXAMPLES:
        assert entry.summary


def test_gplus_suites_pass():
    for cone in (z_standard(), dihedral_standard()):
        rep = run_gplus_suite(cone, 4)
        assert rep["ok"], rep
        assert rep["pair_failures"] == []
        assert rep["r_failures"] == []
        assert rep["singleton_classes"] == []


def test_build_suites_pass():
    for cone in (z_standard(), dihedral_standard()):
        rep = run_build_suite(cone, radius=4, stages=4)
        assert rep["ok"], rep
        assert all(rep["properties"].values())
        assert rep["label_collisions"] == []


def test_roundtrip_suites_are_exact_here():
    for cone in (z_standard(), dihedral_standard()):
        rep = run_roundtrip_suite(cone, 4)
        assert rep["ok"], rep["mismatches"]
        assert rep["pair_coverage"] == Fraction(1)
        assert rep["undetermined_elements"] == []


def test_blowup_suite_passes():
    rep = run_blowup_suite(4)
    assert rep["ok"]
    assert rep["shape"]["ok"]
    assert rep["action"]["ok"]


def test_quotient_suites():
    good = run_quotient_suite("z2-lex-by-second-factor", 4)
    assert good["ok"] and good["convex"]
    assert good["property_violations"] == []
    bad = run_quotient_suite("z-by-even", 4)
    assert not bad["ok"] and not bad["convex"]
    assert any(w["witness"] == 1 for w in bad["convexity_violations"])


def test_orbit_suite_shape():
    rep = run_orbit_suite(4)
    assert rep["ok"], rep
    assert rep["has_simu"] and rep["has_siml"]
    assert not rep["trivial_extension"]
    assert rep["unbacked_pairs"] == rep["tagged_pairs"] > 0
    assert rep["realized_bound_pairs"] == []


def test_all_examples_run_clean():
    for entry in EXAMPLES:
        rep = entry.run()
        assert rep["ok"], (entry.name, rep)
