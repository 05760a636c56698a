"""Left-invariant orders on groups, their tagged extensions, and order trees.

The package has three layers.  ``poset`` carries the tagged relation tables
(strict order plus upper/lower similarity on incomparable pairs) and their
validity laws.  ``groups``/``grouporder``/``treebuild`` go from a group with
order cones to a stagewise tree construction; ``ordertree``/``orbitorder``
go back from an oriented tree with a group action to an order on the group.
``corpus``, ``catalog``, ``specio``, and ``cli`` form the desk-scale shell:
exhaustive small instances, named scenarios, a JSON spec format, and a
command line driver.
"""

from __future__ import annotations

from .catalog import EXAMPLES, get_cone, get_example
from .corpus import all_extended_posets, run_corpus_suite
from .grouporder import (
    ConeError,
    ConeStructure,
    check_completely_convex,
    induced_ball_poset,
    quotient_order,
    verify_cone_axioms,
)
from .groups import FreeGroup, GroupError, InfiniteDihedral, TableGroup, Z, Zk, make_group
from .orbitorder import (
    OrbitError,
    TreeAction,
    check_action,
    manifold_order,
    orbit_poset,
    roundtrip_orbit,
    stabilizer_extension_order,
)
from .ordertree import OneManifold, OrderTree, TreeError, check_blowup, denjoy_blowup, alternating_line_tree
from .poset import EQ, GT, LT, SIML, SIMU, ExtendedPoset, PosetError, between_by_codes
from .treebuild import BuildError, build_from_cones, orient_segments, verify_stage_properties

__version__ = "0.1.0"

__all__ = [
    "BuildError",
    "ConeError",
    "ConeStructure",
    "EQ",
    "EXAMPLES",
    "ExtendedPoset",
    "FreeGroup",
    "GT",
    "GroupError",
    "InfiniteDihedral",
    "LT",
    "OneManifold",
    "OrbitError",
    "OrderTree",
    "PosetError",
    "SIML",
    "SIMU",
    "TableGroup",
    "TreeAction",
    "TreeError",
    "Z",
    "Zk",
    "all_extended_posets",
    "between_by_codes",
    "build_from_cones",
    "check_action",
    "check_blowup",
    "check_completely_convex",
    "denjoy_blowup",
    "alternating_line_tree",
    "get_cone",
    "get_example",
    "induced_ball_poset",
    "make_group",
    "manifold_order",
    "orbit_poset",
    "orient_segments",
    "quotient_order",
    "roundtrip_orbit",
    "run_corpus_suite",
    "stabilizer_extension_order",
    "verify_cone_axioms",
    "verify_stage_properties",
]
