//! Ternary deductive systems over finite algebras.

mod finite;
mod reference;
mod system;
mod term;
mod ternary;

pub use finite::{
    boolean_algebra, cyclic_group, meet_semilattice2, p_semilattice_chain3, AlgebraError, FiniteAlgebra, Operation,
};
pub use reference::{p_semilattice_case, reference_cases, ReferenceCase};
pub use system::{
    check_correspondence, check_regularity, check_theta_propositions, congruences, gz_class_matches, is_compatible,
    is_deductive_system, is_g_difference_system, subset_mask, theta_relation, CompatibilityWitness,
    CorrespondenceFailure, CorrespondenceReport, DeductionConfig, DeductionError, DeductionViolation,
    DifferenceWitness, Direction, Partition, RegularityWitness, Relation, ThetaPropositionReport,
    DEFAULT_CONGRUENCE_CAP,
};
pub use term::{Term, TermError};
pub use ternary::{ac_finite_algebra, check_ternary_term_theorems, TernaryFailure, TernaryReport, TernaryTheorem};
