//! Exact algebraic numbers: certified root isolation, unit-circle classification, number
//! fields and factorization over them.

mod interval;
mod isolate;
mod number;
mod numfield;
mod trager;

pub use interval::{round_down, round_up, CBox, Interval};
pub use isolate::{isolate_roots, isolate_roots_prec};
pub use number::{AlgebraicNumber, ModulusClass};
pub use numfield::{FieldElement, NumberField};
pub use trager::{
    compositum, conjugate_pairs, factor_over_field, squarefree_norm, FieldPolynomial, PairOrbits,
};
