"""Two-qubit states in the Pauli representation: invariants, classification,
positivity and separability tests, concurrence and Lewenstein-Sanpera
decompositions."""

from .classify import (CharacteristicDecomposition, ClassLabel, FamilyDescriptor, Frames,
                       auxiliary_ab, canonicalize, characteristic_decomposition, class_from_ab,
                       class_of, same_family)
from .criteria import (CriterionReport, hw_transform, is_positive, is_separable, ph3_rank_profile,
                       ph3_transform, separability_margins)
from .entangle import (ConcurrenceResult, ConjectureRecord, ConvergenceWarning, InheritanceReport,
                       LsdResult, SWAP, barely_separable_residual, check_invariance_inheritance,
                       concurrence, conjecture_check, lsd_lambda_max, optimal_lsd, ph3_matrix,
                       product_vectors_in_span)
from .errors import (DiagnosticsError, DomainError, InvalidInputError, InvalidStateError,
                     NoRealRootsError, PauliscopeError)
from .invariants import (GlobalInvariants, LambdaTriple, LocalInvariantVector,
                         closed_form_invariants, entanglement_dyadic, global_invariants,
                         invariants_of_k, lambda_parameterization, local_invariants,
                         positivity_inequalities, quartic_roots)
from .statecore import (DEFAULT_TOL, MAGIC_BASIS, LocalRotation, PauliRep, apply_local, bell_state,
                        chaotic_state, check_matrix, from_matrix, k_operator, paper_basis_matrix,
                        product_state, pure_state, purity_defect, random_density_matrix,
                        random_state, rank2_state, swap_qubits, to_matrix, to_magic_basis,
                        werner_state)

__version__ = "0.1.0"

__all__ = [
    "CharacteristicDecomposition", "ClassLabel", "FamilyDescriptor", "Frames", "auxiliary_ab",
    "canonicalize", "characteristic_decomposition", "class_from_ab", "class_of", "same_family",
    "CriterionReport", "hw_transform", "is_positive", "is_separable", "ph3_rank_profile",
    "ph3_transform", "separability_margins", "ConcurrenceResult", "ConjectureRecord",
    "ConvergenceWarning", "InheritanceReport", "LsdResult", "SWAP",
    "barely_separable_residual", "check_invariance_inheritance", "concurrence",
    "conjecture_check", "lsd_lambda_max", "optimal_lsd", "ph3_matrix",
    "product_vectors_in_span", "DiagnosticsError", "DomainError", "InvalidInputError",
    "InvalidStateError", "NoRealRootsError", "PauliscopeError", "GlobalInvariants",
    "LambdaTriple", "LocalInvariantVector", "closed_form_invariants", "entanglement_dyadic",
    "global_invariants", "invariants_of_k", "lambda_parameterization", "local_invariants",
    "positivity_inequalities", "quartic_roots", "DEFAULT_TOL", "MAGIC_BASIS", "LocalRotation",
    "PauliRep", "apply_local", "bell_state", "chaotic_state", "check_matrix", "from_matrix",
    "k_operator", "paper_basis_matrix", "product_state", "pure_state", "purity_defect",
    "random_density_matrix", "random_state", "rank2_state", "swap_qubits", "to_matrix",
    "to_magic_basis", "werner_state",
]
