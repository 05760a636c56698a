from __future__ import annotations

from treeorder.catalog import dihedral_standard, z_standard
from treeorder.grouporder import PLAIN, plain_of, tag_of
from treeorder.treebuild import (
    act_on_labels,
    build_from_cones,
    orient_segments,
    verify_stage_properties,
)


def plains_placed(state):
    out = {}
    for lab in state.nu:
        if tag_of(lab) == PLAIN:
            out[plain_of(lab)] = state.point_of(lab)
    return out


def test_integer_build_properties_hold():
    state = build_from_cones(z_standard(), radius=4, stages=4)
    props = verify_stage_properties(state)
    assert props["ok"], props
    assert props["gaps"]["violations"] == []
    assert props["paths"]["violations"] == []
    assert props["identity"]["violations"] == []


def test_integer_build_places_a_path():
    state = build_from_cones(z_standard(), radius=4, stages=4)
    placed = plains_placed(state)
    assert set(placed) == {-2, -1, 0, 1, 2}
    # Distinct group elements land on distinct points.
    assert len(set(placed.values())) == len(placed)


def test_dihedral_build_properties_hold():
    state = build_from_cones(dihedral_standard(), radius=4, stages=4)
    props = verify_stage_properties(state)
    assert props["ok"], props
    placed = plains_placed(state)
    assert len(set(placed.values())) == len(placed)


def test_orientation_is_direction_independent():
    state = build_from_cones(dihedral_standard(), radius=4, stages=4)
    layout = orient_segments(state)
    assert 0 < layout.checked_labels <= len(state.nu)
    assert set(layout.label_point) == set(state.nu)


def test_stage_count_is_respected():
    short = build_from_cones(z_standard(), radius=6, stages=2)
    longer = build_from_cones(z_standard(), radius=6, stages=4)
    assert len(short.stages_done) == 2
    assert len(longer.stages_done) == 4
    assert len(plains_placed(short)) < len(plains_placed(longer))


def test_acting_by_a_generator_permutes_labels():
    state = build_from_cones(z_standard(), radius=4, stages=4)
    placed = plains_placed(state)
    moved = act_on_labels(state, 1)
    for lab, target in moved.items():
        if tag_of(lab) != PLAIN:
            continue
        shifted = plain_of(lab) + 1
        if shifted in placed:
            assert target == placed[shifted]
