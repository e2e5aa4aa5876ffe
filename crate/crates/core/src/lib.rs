//! Periodic approximations of one-dimensional subshifts and the spectra of
//! their pattern-equivariant Hamiltonians.

pub mod approximation;
pub mod dictionary;
pub mod error;
pub mod gapgraph;
pub mod spectral;
pub mod substitution;
pub mod symbolic;

pub use dictionary::TruncatedDictionary;
pub use error::{DictionaryViolation, Error, Result};
pub use gapgraph::{GapGraph, Path};
pub use substitution::Substitution;
pub use symbolic::{Alphabet, Letter, PeriodicWord, Word};
