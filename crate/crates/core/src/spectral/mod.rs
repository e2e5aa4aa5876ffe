//! Finite-range pattern-equivariant Hamiltonians on periodic words and their
//! band spectra, computed by Floquet-Bloch reduction or, for nearest-neighbor
//! chains, from the transfer-matrix discriminant.

mod bands;
mod bloch;
mod coefficient;
mod convergence;
mod discriminant;
mod hamiltonian;

pub use bands::BandSpectrum;
pub use bloch::{
    bloch_eigenvalues, canonical_word, hermitian_eigenvalues, spectrum_bloch, spectrum_bloch_supercell, theta_grid, BlochOptions,
    DEFAULT_GRID, DEFAULT_MERGE_TOLERANCE, DEFAULT_WORK_CAP,
};
pub use coefficient::{CoefficientJson, ComplexValue, Cylinder, CylinderSum, PatternCoefficient};
pub use convergence::{bands_csv, convergence_csv, convergence_table, spectrum, ConvergenceRow, SpectrumMethod};
pub use discriminant::{discriminant, spectrum_discriminant, DEFAULT_BRACKET_TOLERANCE};
pub use hamiltonian::{conjugate_shift, HamiltonianJson, HamiltonianSpec, Violation};
