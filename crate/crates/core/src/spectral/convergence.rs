use std::fmt::Write;

use serde::Serialize;

use super::bands::BandSpectrum;
use super::bloch::{spectrum_bloch, BlochOptions};
use super::discriminant::spectrum_discriminant;
use super::hamiltonian::HamiltonianSpec;
use crate::error::Result;
use crate::symbolic::PeriodicWord;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectrumMethod {
    Bloch(BlochOptions),
    Discriminant { tolerance: f64 },
}

pub fn spectrum(h: &HamiltonianSpec, p: &PeriodicWord, method: &SpectrumMethod) -> Result<BandSpectrum> {
    match method {
        SpectrumMethod::Bloch(opts) => spectrum_bloch(h, p, opts),
        SpectrumMethod::Discriminant { tolerance } => spectrum_discriminant(h, p, *tolerance),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub k: usize,
    pub q: usize,
    pub bands: usize,
    pub measure: f64,
    /// d_H to the next row's spectrum; absent on the last row.
    pub hausdorff_to_next: Option<f64>,
}

/// Spectra of the approximants (k, η_k) in the given order, with measures
/// and consecutive Hausdorff distances.
pub fn convergence_table(
    h: &HamiltonianSpec,
    approximants: &[(usize, PeriodicWord)],
    method: &SpectrumMethod,
) -> Result<(Vec<ConvergenceRow>, Vec<BandSpectrum>)> {
    let spectra = approximants.iter().map(|(_, p)| spectrum(h, p, method)).collect::<Result<Vec<_>>>()?;
    let rows = approximants
        .iter()
        .zip(&spectra)
        .enumerate()
        .map(|(i, ((k, p), s))| ConvergenceRow {
            k: *k,
            q: p.minimal_period(),
            bands: s.len(),
            measure: s.lebesgue_measure(),
            hausdorff_to_next: spectra.get(i + 1).map(|next| s.hausdorff_distance(next)),
        })
        .collect();
    Ok((rows, spectra))
}

pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from("k,q,bands,measure,hausdorff_to_next\n");
    for r in rows {
        let next = r.hausdorff_to_next.map(|d| format!("{d:?}")).unwrap_or_default();
        writeln!(out, "{},{},{},{:?},{}", r.k, r.q, r.bands, r.measure, next).unwrap();
    }
    out
}

/// Rows `k,q,band_index,lower,upper` for a list of (k, q, spectrum).
pub fn bands_csv(spectra: &[(usize, usize, &BandSpectrum)]) -> String {
    let mut out = String::from("k,q,band_index,lower,upper\n");
    for (k, q, s) in spectra {
        for (i, (lo, hi)) in s.intervals().iter().enumerate() {
            writeln!(out, "{k},{q},{i},{lo:?},{hi:?}").unwrap();
        }
    }
    out
}
