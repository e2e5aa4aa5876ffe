use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::bands::BandSpectrum;
use super::hamiltonian::HamiltonianSpec;
use crate::error::{Error, Result};
use crate::symbolic::PeriodicWord;

pub const DEFAULT_GRID: usize = 128;
pub const DEFAULT_MERGE_TOLERANCE: f64 = 1e-9;
/// Default bound on q·M, the number of eigenvalues computed.
pub const DEFAULT_WORK_CAP: usize = 4_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochOptions {
    pub grid: usize,
    pub merge_tolerance: f64,
    pub work_cap: usize,
}

impl Default for BlochOptions {
    fn default() -> Self {
        Self { grid: DEFAULT_GRID, merge_tolerance: DEFAULT_MERGE_TOLERANCE, work_cap: DEFAULT_WORK_CAP }
    }
}

/// θⱼ = 2πj/M for j < M, plus π when M is odd.
pub fn theta_grid(m: usize) -> Vec<f64> {
    let mut grid: Vec<f64> = (0..m).map(|j| 2.0 * PI * j as f64 / m as f64).collect();
    if m % 2 == 0 {
        grid[m / 2] = PI;
    } else {
        grid.push(PI);
        grid.sort_by(f64::total_cmp);
    }
    grid
}

/// All eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(h: &DMatrix<Complex64>) -> Vec<f64> {
    let mut ev: Vec<f64> = h.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// The primitive block rotated to its lexicographically least form. Spectra
/// are shift invariant, so computing on this representative makes every
/// rotation of a word give bit-identical bands.
pub fn canonical_word(p: &PeriodicWord) -> PeriodicWord {
    PeriodicWord::new(p.primitive().aligned_block().min_rotation(), 0).expect("non-empty block")
}

/// Eigenvalues of the Bloch matrices over the θ grid, in grid order.
pub fn bloch_eigenvalues(h: &HamiltonianSpec, p: &PeriodicWord, opts: &BlochOptions) -> Result<Vec<Vec<f64>>> {
    supercell_eigenvalues(h, &canonical_word(p), 1, opts)
}

fn supercell_eigenvalues(h: &HamiltonianSpec, p: &PeriodicWord, cells: usize, opts: &BlochOptions) -> Result<Vec<Vec<f64>>> {
    if opts.grid < 2 {
        return Err(Error::Validation("grid size must be >= 2".into()));
    }
    let violations = h.validate_self_adjoint();
    if !violations.is_empty() {
        return Err(Error::InvalidHamiltonian(violations));
    }
    let q = p.minimal_period() * cells;
    let work = q.saturating_mul(opts.grid);
    if work > opts.work_cap {
        return Err(Error::WorkCap { work, cap: opts.work_cap });
    }
    Ok(theta_grid(opts.grid).into_par_iter().map(|theta| hermitian_eigenvalues(&h.bloch_matrix_supercell(p, cells, theta))).collect())
}

/// Bands from sorted eigenvalues per θ: band b is the range of the b-th
/// eigenvalue over the grid; touching or overlapping bands are merged.
pub fn spectrum_bloch(h: &HamiltonianSpec, p: &PeriodicWord, opts: &BlochOptions) -> Result<BandSpectrum> {
    bands_from_eigenvalues(bloch_eigenvalues(h, p, opts)?, opts.merge_tolerance)
}

/// Same as [`spectrum_bloch`] but over a supercell of `cells` periods, without
/// reducing the word first.
pub fn spectrum_bloch_supercell(h: &HamiltonianSpec, p: &PeriodicWord, cells: usize, opts: &BlochOptions) -> Result<BandSpectrum> {
    if cells == 0 {
        return Err(Error::Validation("supercell needs at least one cell".into()));
    }
    bands_from_eigenvalues(supercell_eigenvalues(h, p, cells, opts)?, opts.merge_tolerance)
}

fn bands_from_eigenvalues(per_theta: Vec<Vec<f64>>, merge_tolerance: f64) -> Result<BandSpectrum> {
    let q = per_theta[0].len();
    let intervals = (0..q)
        .map(|b| {
            per_theta.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), ev| (lo.min(ev[b]), hi.max(ev[b])))
        })
        .collect();
    BandSpectrum::from_intervals(intervals, merge_tolerance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::PatternCoefficient;
    use crate::symbolic::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::chars("ab").unwrap()
    }

    fn pw(s: &str) -> PeriodicWord {
        PeriodicWord::from_block(ab().parse(s).unwrap()).unwrap()
    }

    #[test]
    fn grid_contains_edges() {
        for m in [2, 3, 7, 64, 128] {
            let g = theta_grid(m);
            assert!(g.contains(&0.0) && g.contains(&PI), "M = {m}");
            assert!(g.windows(2).all(|w| w[0] < w[1]));
        }
        assert_eq!(theta_grid(4).len(), 4);
        assert_eq!(theta_grid(5).len(), 6);
    }

    #[test]
    fn free_laplacian() {
        let s = spectrum_bloch(&HamiltonianSpec::laplacian(ab()), &pw("a"), &BlochOptions { grid: 64, ..Default::default() }).unwrap();
        assert_eq!(s.intervals(), &[(-2.0, 2.0)]);
    }

    #[test]
    fn period_two() {
        let h = HamiltonianSpec::jacobi(ab(), PatternCoefficient::constant(1.0), PatternCoefficient::from_letter_values(&ab(), &[1.0, -1.0]).unwrap()).unwrap();
        let s = spectrum_bloch(&h, &pw("ab"), &BlochOptions { grid: 64, ..Default::default() }).unwrap();
        let r5 = 5f64.sqrt();
        let iv = s.intervals();
        assert_eq!(iv.len(), 2);
        for (got, want) in iv.iter().zip([(-r5, -1.0), (1.0, r5)]) {
            assert!((got.0 - want.0).abs() < 1e-8 && (got.1 - want.1).abs() < 1e-8, "{got:?}");
        }
        for theta in [0.1, 1.0, 2.5] {
            let ev = hermitian_eigenvalues(&h.bloch_matrix(&pw("ab"), theta));
            let e = (3.0 + 2.0 * f64::cos(theta)).sqrt();
            assert!((ev[0] + e).abs() < 1e-12 && (ev[1] - e).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_shift() {
        let free = spectrum_bloch(&HamiltonianSpec::laplacian(ab()), &pw("ab"), &BlochOptions::default()).unwrap();
        let h = HamiltonianSpec::jacobi(ab(), PatternCoefficient::constant(1.0), PatternCoefficient::constant(0.75)).unwrap();
        let shifted = spectrum_bloch(&h, &pw("ab"), &BlochOptions::default()).unwrap();
        assert!(shifted.hausdorff_distance(&free.translate(0.75)) < 1e-12);
    }

    #[test]
    fn work_cap_and_invalid_spec() {
        let opts = BlochOptions { work_cap: 10, ..Default::default() };
        assert!(matches!(spectrum_bloch(&HamiltonianSpec::laplacian(ab()), &pw("a"), &opts), Err(Error::WorkCap { .. })));
        let bad = HamiltonianSpec::new(ab(), [(1, PatternCoefficient::constant(1.0))].into(), PatternCoefficient::constant(0.0));
        assert!(matches!(spectrum_bloch(&bad, &pw("a"), &BlochOptions::default()), Err(Error::InvalidHamiltonian(_))));
        assert!(spectrum_bloch(&HamiltonianSpec::laplacian(ab()), &pw("a"), &BlochOptions { grid: 1, ..Default::default() }).is_err());
    }

    #[test]
    fn supercell_folding() {
        let h = HamiltonianSpec::jacobi(ab(), PatternCoefficient::constant(1.0), PatternCoefficient::kohmoto(&ab(), "a", 1.5).unwrap()).unwrap();
        let p = pw("aab");
        let opts = BlochOptions { grid: 96, ..Default::default() };
        let base = spectrum_bloch(&h, &p, &opts).unwrap();
        for s in 1..=4 {
            let folded = spectrum_bloch_supercell(&h, &p, s, &opts).unwrap();
            // a supercell samples the primitive θ at (θ + 2πl)/s: finer, so within grid error
            assert!(base.hausdorff_distance(&folded) < 1e-3, "s = {s}");
        }
    }

    #[test]
    fn shift_covariance_is_exact() {
        let h = HamiltonianSpec::jacobi(ab(), PatternCoefficient::constant(1.0), PatternCoefficient::kohmoto(&ab(), "a", 1.0).unwrap()).unwrap();
        let p = pw("abaababa");
        let base = spectrum_bloch(&h, &p, &BlochOptions::default()).unwrap();
        for m in 1..8 {
            let shifted = spectrum_bloch(&h, &p.shift(m), &BlochOptions::default()).unwrap();
            assert_eq!(base, shifted, "m = {m}");
        }
    }
}
