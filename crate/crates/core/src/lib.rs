//! Exact computation of eigenvalue groups, coboundaries, aperiodicity, recognizability and
//! weak mixing for morphic subshifts generated by a primitive substitution σ and a coding τ.

pub mod algnum;
pub mod eigen;
pub mod error;
pub mod exactlin;
pub mod recog;
pub mod returns;
pub mod spectra;
pub mod substitution;

pub use algnum::{AlgebraicNumber, FieldElement, NumberField};
pub use eigen::{Closure, EigenOptions, EigenvalueModule};
pub use error::{Error, Result};
pub use exactlin::{RationalMatrix, RationalPolynomial, RationalSubspace, Q};
pub use spectra::{BGraph, WeakMixVerdict};
pub use substitution::{Alphabet, Letter, Morphism, Word};
