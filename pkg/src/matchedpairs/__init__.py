"""Exact computations with finite matched pairs of groupoids.

Groupoids and matched pairs are stored as integer tables; every structure
comes with a validator that reports violations with explicit witnesses.
"""
from .doubles import (MatchedPairMorphism, compose_morphisms, double, dual_morphism, generalized_double,
                      identity_morphism, initial_morphism, terminal_morphism, validate_morphism)
from .drinfeld import DrinfeldDouble, certify_drinfeld_iso, drinfeld_double, drinfeld_iso
from .groupoid import FiniteGroupoid, coarse, cyclic_group, discrete, from_rule, from_tables, \
    symmetric_group, validate_groupoid
from .hopf import (Element, WeakHopfAlgebra, build_weak_hopf, certify_r_matrix, certify_weak_hopf,
                   drinfeld_element, linearize, r_matrix)
from .matched import (MatchedPair, build_pair, build_pair_from_labels, check_derived_identities, dual,
                      make_conjugation_pair, make_group_pair, make_initial, make_MXY, make_semi,
                      make_terminal, validate_matched_pair)
from .report import ValidationReport, Violation
from .reps import Representation, build_rep, tensor, validate_representation
from .rotations import (RotationPair, braiding, canonical_double_pair, certify_braiding,
                        check_rotation_pair, enumerate_rotation_pairs, enumerate_rotations)

__all__ = [
    "FiniteGroupoid", "from_tables", "from_rule", "discrete", "coarse", "symmetric_group", "cyclic_group",
    "validate_groupoid",
    "MatchedPair", "build_pair", "build_pair_from_labels", "validate_matched_pair", "check_derived_identities",
    "dual", "make_initial", "make_terminal", "make_MXY", "make_semi", "make_group_pair", "make_conjugation_pair",
    "MatchedPairMorphism", "validate_morphism", "identity_morphism", "initial_morphism", "terminal_morphism",
    "compose_morphisms", "generalized_double", "double", "dual_morphism",
    "Representation", "build_rep", "tensor", "validate_representation",
    "RotationPair", "enumerate_rotations", "enumerate_rotation_pairs", "check_rotation_pair",
    "canonical_double_pair", "braiding", "certify_braiding",
    "Element", "WeakHopfAlgebra", "build_weak_hopf", "certify_weak_hopf", "linearize", "r_matrix",
    "certify_r_matrix", "drinfeld_element",
    "DrinfeldDouble", "drinfeld_double", "drinfeld_iso", "certify_drinfeld_iso",
    "ValidationReport", "Violation",
]
