//! Additive eigenvalues of the subshift generated by a directive sequence τσ^ω.
//!
//! The eigenvalues form the group (W ∩ Δ)·v where v is the Perron eigenvector of M_σ scaled
//! by (1…1)·M_τ·v = 1, Δ is the set of rational rows w with w·M_σⁿ integral for some n, and
//! W is the set of rational rows that agree with a combination of (1…1)·M_τ and the
//! coboundaries on every generalized eigenvector of modulus at least one.

mod module;
mod pipeline;
mod spectrum;
mod verify;

pub use module::{module_equal, Closure, EigenvalueModule};
pub use pipeline::{
    analyze, build_c, compute_w, constraint_products, delta_case, eigenvalue_module, length_row,
    recognizability_status, ConstraintMatrix, DeltaCase, EigenOptions, EigenvalueReport,
    RecognizabilityStatus, Stabilization,
};
pub use spectrum::{
    is_primitive_matrix, noncontracting_basis, perron_vector, spectral_data, NonContractingBasis,
    NonContractingBlock, SpectralData, SpectralEntry,
};
pub use verify::{
    boundedness_check, verify_eigenvalue, verify_eigenvalue_with, BoundednessReport,
    EigenvalueWitness, Verification,
};
