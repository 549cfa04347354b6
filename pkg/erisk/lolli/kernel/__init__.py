"""Sequents, proof trees, checkers and shape classifiers."""

from .sequent import Sequent, drop_index, format_sequent, remove_all, remove_one, same_multiset
from .proof import (
    BC_RULES, FULL_RULES, LEFT_RULES, REDUCED_RULES, RIGHT_RULES,
    Path, ProofTree, Rule,
    count_rules, format_path, node_at, postorder_paths, preorder, preorder_paths, rebuild,
    replace_at, size,
)
from .checker import CheckReport, Violation, check_full, check_reduced
from .classify import (
    Marking, UniformityReport,
    acts_on, compute_marking, detached_absorbs, is_coincided, is_complex, is_simple, is_uniform,
    major_index, nonuniformity_measure, product, unmarked_left_rules, violates_uniformity,
)
from .prooftext import BUNDLED, format_proof, load_bundled, load_proof, parse_proof, write_proof
from .bruteforce import search_full

__all__ = [
    "Sequent", "drop_index", "format_sequent", "remove_all", "remove_one", "same_multiset",
    "BC_RULES", "FULL_RULES", "LEFT_RULES", "REDUCED_RULES", "RIGHT_RULES",
    "Path", "ProofTree", "Rule",
    "count_rules", "format_path", "node_at", "postorder_paths", "preorder", "preorder_paths",
    "rebuild", "replace_at", "size",
    "CheckReport", "Violation", "check_full", "check_reduced",
    "Marking", "UniformityReport",
    "acts_on", "compute_marking", "detached_absorbs", "is_coincided", "is_complex", "is_simple",
    "is_uniform", "major_index", "nonuniformity_measure", "product", "unmarked_left_rules",
    "violates_uniformity",
    "BUNDLED", "format_proof", "load_bundled", "load_proof", "parse_proof", "write_proof",
    "search_full",
]
