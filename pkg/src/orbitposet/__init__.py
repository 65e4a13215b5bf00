"""Orbit-type posets of SU(n) gauge theories on compact 4-manifolds.

The layers build on each other:

- howe: signatures (k, m) indexing the reductive stabilizer classes;
- abgroup, cohomology: exact finitely generated coefficient arithmetic
  and manifold models (builtin catalog plus descriptor files);
- inclusion: the integer matrix equations deciding signature inclusion,
  with the level invariant counting elementary steps;
- charclass: characteristic class tuples, the pushforward along an
  inclusion, and the two labelling equations;
- lattice: orbit labels and classes, the order decision, the four
  local generators, and Hasse diagram reconstruction from the top;
- cli: the orbitposet command.

Everything is exact integer arithmetic; no floats anywhere.
"""

from .abgroup import AbelianGroup, GroupElement
from .charclass import (
    BundleSpec,
    ClassTuple,
    MembershipReport,
    apply_inclusion,
    check_membership,
    push_tuple,
    solve_labels,
    total_chern,
)
from .cohomology import (
    EvenClass,
    ManifoldModel,
    builtin_manifold,
    bockstein,
    cup,
    cup_classes,
    dump_manifold_descriptor,
    enumerate_even_classes,
    format_even_class,
    load_manifold,
    manifold_model,
    reduce_coefficients,
    solve_bockstein_lift,
    unit_class,
)
from .errors import (
    BoundsError,
    DescriptorError,
    DomainError,
    InvariantError,
    MismatchError,
)
from .howe import (
    HoweSignature,
    canonical_form,
    enumerate_signatures,
    format_signature,
    parse_signature,
    permute_signature,
    signature,
    signature_invariants,
)
from .inclusion import (
    InclusionMatrix,
    LevelProfile,
    bratteli_dot,
    bratteli_text,
    compose,
    format_inclusion,
    level_profile,
    permutation_matrix,
    solve_inclusion_matrices,
)
from .lattice import (
    HasseEdge,
    HassePoset,
    OrbitClass,
    OrbitLabel,
    OrderDecision,
    build_hasse,
    canonical_label,
    compare,
    decompose_inclusion,
    direct_predecessors,
    direct_successors,
    equivalent,
    format_label,
    inverse_merge,
    inverse_split,
    maximal_label,
    merge,
    orbit_class,
    poset_dot,
    poset_from_json,
    poset_text,
    poset_to_json,
    split,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "BoundsError",
    "BundleSpec",
    "ClassTuple",
    "DescriptorError",
    "DomainError",
    "EvenClass",
    "GroupElement",
    "HasseEdge",
    "HassePoset",
    "HoweSignature",
    "InclusionMatrix",
    "InvariantError",
    "LevelProfile",
    "ManifoldModel",
    "MembershipReport",
    "MismatchError",
    "OrbitClass",
    "OrbitLabel",
    "OrderDecision",
    "apply_inclusion",
    "bockstein",
    "bratteli_dot",
    "bratteli_text",
    "build_hasse",
    "builtin_manifold",
    "canonical_form",
    "canonical_label",
    "check_membership",
    "compare",
    "compose",
    "cup",
    "cup_classes",
    "decompose_inclusion",
    "direct_predecessors",
    "direct_successors",
    "dump_manifold_descriptor",
    "enumerate_even_classes",
    "enumerate_signatures",
    "equivalent",
    "format_even_class",
    "format_inclusion",
    "format_label",
    "format_signature",
    "inverse_merge",
    "inverse_split",
    "level_profile",
    "load_manifold",
    "manifold_model",
    "maximal_label",
    "merge",
    "orbit_class",
    "parse_signature",
    "permutation_matrix",
    "permute_signature",
    "poset_dot",
    "poset_from_json",
    "poset_text",
    "poset_to_json",
    "push_tuple",
    "reduce_coefficients",
    "signature",
    "signature_invariants",
    "solve_bockstein_lift",
    "solve_inclusion_matrices",
    "solve_labels",
    "split",
    "total_chern",
    "unit_class",
]
