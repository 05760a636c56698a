"""Order cones on a group, checked and then turned into a ball order.

A left-invariant order on a group can be packaged as three disjoint subsets:
a positive cone P for the strictly-greater elements, and two similarity
cones U and L for incomparable elements that share an upper or a lower
bound with the identity.  Six closure conditions make the packaging
consistent; this script verifies them for a few groups and prints the order
they induce on a small ball.
"""

from __future__ import annotations

from treeorder.catalog import dihedral_standard, free_standard, z_standard
from treeorder.grouporder import induced_ball_poset, verify_cone_axioms


def show(cone, radius):
    report = verify_cone_axioms(cone, radius)
    print(f"{cone.name}: ball of {report.ball_size} at radius {radius}")
    for idx in sorted(report.conditions):
        cond = report.conditions[idx]
        print(f"  condition {idx}: {'ok' if cond.ok else 'FAILED'} ({cond.checked} products checked)")
    return report.ok


def main():
    for cone in (z_standard(), free_standard(2), dihedral_standard()):
        assert show(cone, 6)
        print()

    cone = dihedral_standard()
    poset = induced_ball_poset(cone, 2)
    fmt = cone.group.format
    print("dihedral ball order at radius 2 (row rel column):")
    elems = poset.elements
    width = max(len(fmt(g)) for g in elems)
    print(" " * (width + 1) + " ".join(fmt(g).rjust(width) for g in elems))
    for g in elems:
        row = [poset.classify(g, h).rjust(width) if g != h else "-".rjust(width) for h in elems]
        print(fmt(g).rjust(width) + " " + " ".join(row))
    print()
    print("Reflections compare as 'simu' or 'siml': they never exceed a")
    print("translation, they only flank one.")


if __name__ == "__main__":
    main()
