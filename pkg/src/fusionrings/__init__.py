"""Fusion rings: exact based rings with duality, their constructions,
completion solver, cyclic-group cohomology, and the classification audit."""

from .abelian import FiniteAbelianGroup
from .ring import (
    FusionRing,
    Grading,
    FPDimVector,
    adjoint_subring,
    decompose_word,
    find_isomorphisms,
    fp_dims,
    fusion_graph,
    invertibles,
    is_generator,
    is_k_normal,
    subring_generated,
    universal_grading,
    verify_axioms,
)
from .graphs import Digraph, digraph_iso, dynkin
from .construct import (
    TheoremRowSpec,
    ade_ring,
    deligne_product,
    dequiv_free,
    e4_ring,
    e166_ring,
    one_one_subring,
    pointed_ring,
    theorem_row,
)
from .catalog import admissible_generator_bimodules, bp_catalog, extension_count, quantum_integer
from .cohomology import GroupAction, brute_force_h2, h3_roots_of_unity, h_cyclic
from .jsonio import dump_ring, load_partial, load_ring, ring_from_dict, ring_to_dict
from .solve import (
    PartialRing,
    complete_partial_ring,
    ring_from_generator_graph,
    unique_ring_from_graph,
)
from .audit import audit_all, audit_row, separation_check

__all__ = [
    "FiniteAbelianGroup",
    "FusionRing",
    "Grading",
    "FPDimVector",
    "Digraph",
    "adjoint_subring",
    "decompose_word",
    "digraph_iso",
    "dynkin",
    "find_isomorphisms",
    "fp_dims",
    "fusion_graph",
    "invertibles",
    "is_generator",
    "is_k_normal",
    "subring_generated",
    "universal_grading",
    "verify_axioms",
    "TheoremRowSpec",
    "ade_ring",
    "deligne_product",
    "dequiv_free",
    "e4_ring",
    "e166_ring",
    "one_one_subring",
    "pointed_ring",
    "theorem_row",
    "admissible_generator_bimodules",
    "bp_catalog",
    "extension_count",
    "quantum_integer",
    "GroupAction",
    "brute_force_h2",
    "h3_roots_of_unity",
    "h_cyclic",
    "dump_ring",
    "load_partial",
    "load_ring",
    "ring_from_dict",
    "ring_to_dict",
    "PartialRing",
    "complete_partial_ring",
    "ring_from_generator_graph",
    "unique_ring_from_graph",
    "audit_all",
    "audit_row",
    "separation_check",
]
