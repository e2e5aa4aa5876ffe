use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::coefficient::{CoefficientJson, PatternCoefficient};
use crate::error::{Error, Result};
use crate::symbolic::{Alphabet, PeriodicWord, Word};

/// Windows enumerated by the conjugation check are capped at this many.
const MAX_CHECK_WINDOWS: usize = 1 << 20;

/// A failed self-adjointness condition with its witness.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// The potential takes a non-real value on this window.
    NonRealPotential { window: String },
    /// k is a hop but −k is not.
    Asymmetric { k: i64 },
    /// t₋ₖ(η) differs from the conjugate of tₖ(τ^{−k}η) on this window,
    /// which is written from position `start` relative to the origin.
    Conjugation { k: i64, start: i64, window: String },
    ZeroHop,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonRealPotential { window } => write!(f, "R1: potential is not real on window {window:?}"),
            Self::Asymmetric { k } => write!(f, "R2: hop {k} present without {}", -k),
            Self::Conjugation { k, start, window } => {
                write!(f, "R3: t_{} is not the conjugate of shifted t_{k} on window {window:?} starting at {start}", -k)
            }
            Self::ZeroHop => write!(f, "hop 0 is reserved for the potential"),
        }
    }
}

/// H = Σₖ tₖ(τ^{−n}ξ)ψ(n−k) + v(τ^{−n}ξ)ψ(n) with finitely many hops.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSpec {
    alphabet: Alphabet,
    hops: BTreeMap<i64, PatternCoefficient>,
    potential: PatternCoefficient,
}

impl HamiltonianSpec {
    /// Assemble without validating; see [`validate_self_adjoint`](Self::validate_self_adjoint).
    pub fn new(alphabet: Alphabet, hops: BTreeMap<i64, PatternCoefficient>, potential: PatternCoefficient) -> Self {
        Self { alphabet, hops, potential }
    }

    /// Assemble and reject specs violating (R1)-(R3).
    pub fn validated(alphabet: Alphabet, hops: BTreeMap<i64, PatternCoefficient>, potential: PatternCoefficient) -> Result<Self> {
        let h = Self::new(alphabet, hops, potential);
        let v = h.validate_self_adjoint();
        if v.is_empty() {
            Ok(h)
        } else {
            Err(Error::InvalidHamiltonian(v))
        }
    }

    /// Nearest-neighbor chain with forward hop `t` (t₁) and potential `v`;
    /// t₋₁ is derived so that the operator is self-adjoint.
    pub fn jacobi(alphabet: Alphabet, t: PatternCoefficient, v: PatternCoefficient) -> Result<Self> {
        let backward = conjugate_shift(&alphabet, &t, 1)?;
        Self::validated(alphabet, [(1, t), (-1, backward)].into(), v)
    }

    /// Free Laplacian t ≡ 1, v ≡ 0.
    pub fn laplacian(alphabet: Alphabet) -> Self {
        Self::jacobi(alphabet, PatternCoefficient::constant(1.0), PatternCoefficient::constant(0.0)).expect("laplacian is self-adjoint")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn hops(&self) -> &BTreeMap<i64, PatternCoefficient> {
        &self.hops
    }

    pub fn potential(&self) -> &PatternCoefficient {
        &self.potential
    }

    pub fn is_nearest_neighbor(&self) -> bool {
        self.hops.keys().copied().eq([-1, 1])
    }

    /// All violations of (R1) real potential, (R2) symmetric hop set and
    /// (R3) t₋ₖ(η) = conj tₖ(τ^{−k}η), the last checked on every window
    /// covering both coefficients.
    pub fn validate_self_adjoint(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let r = self.potential.radius();
        if self.potential.values().any(|c| c.im != 0.0) {
            let windows = self.alphabet.all_words(2 * r);
            for w in windows {
                if self.potential.eval_window(&w).im != 0.0 {
                    out.push(Violation::NonRealPotential { window: self.alphabet.render(&w) });
                }
            }
            if out.is_empty() {
                // only an unreachable default is non-real
                out.push(Violation::NonRealPotential { window: String::new() });
            }
        }
        if self.hops.contains_key(&0) {
            out.push(Violation::ZeroHop);
        }
        for (&k, tk) in &self.hops {
            let Some(tmk) = self.hops.get(&-k) else {
                out.push(Violation::Asymmetric { k });
                continue;
            };
            if k <= 0 {
                continue;
            }
            // t₋ₖ reads η[−r₋, r₋−1]; tₖ(τ^{−k}η) reads η[k−rₖ, k+rₖ−1].
            let (rm, rk) = (tmk.radius() as i64, tk.radius() as i64);
            let start = (-rm).min(k - rk);
            let end = (rm - 1).max(k + rk - 1);
            let len = (end - start + 1).max(0) as usize;
            if self.alphabet.len().checked_pow(len as u32).map_or(true, |n| n > MAX_CHECK_WINDOWS) {
                out.push(Violation::Conjugation { k, start, window: "<too many windows to check>".into() });
                continue;
            }
            for eta in self.alphabet.all_words(len) {
                let sub = |from: i64, n: i64| Word(eta.letters()[(from - start) as usize..(from - start + n) as usize].to_vec());
                let lhs = tmk.eval_window(&sub(-rm, 2 * rm));
                let rhs = tk.eval_window(&sub(k - rk, 2 * rk)).conj();
                if lhs != rhs {
                    out.push(Violation::Conjugation { k, start, window: self.alphabet.render(&eta) });
                    break;
                }
            }
        }
        out
    }

    /// Largest |k| in the hop set.
    pub fn range(&self) -> usize {
        self.hops.keys().map(|k| k.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// H[n, n−k] on the periodic word.
    pub fn hop_value(&self, k: i64, p: &PeriodicWord, n: i64) -> Complex64 {
        self.hops.get(&k).map_or(Complex64::new(0.0, 0.0), |t| t.eval(p, n))
    }

    pub fn potential_value(&self, p: &PeriodicWord, n: i64) -> f64 {
        self.potential.eval(p, n).re
    }

    /// Bloch matrix at quasimomentum θ for the boundary condition
    /// ψ(n+q) = e^{iθ}ψ(n), q the minimal period of `p`.
    ///
    /// A hop from site m to m−k = j + wq with 0 ≤ j < q lands on column j with
    /// phase e^{iθw}. For q = 2, t ≡ 1 and v = ±1 this gives
    /// [[1, 1+e^{−iθ}], [1+e^{iθ}, −1]].
    pub fn bloch_matrix(&self, p: &PeriodicWord, theta: f64) -> DMatrix<Complex64> {
        self.bloch_matrix_supercell(p, 1, theta)
    }

    /// Bloch matrix over `cells` consecutive minimal periods.
    pub fn bloch_matrix_supercell(&self, p: &PeriodicWord, cells: usize, theta: f64) -> DMatrix<Complex64> {
        let q = p.minimal_period() * cells.max(1);
        let qi = q as i64;
        let mut h = DMatrix::from_element(q, q, Complex64::new(0.0, 0.0));
        for m in 0..qi {
            h[(m as usize, m as usize)] += Complex64::new(self.potential_value(p, m), 0.0);
            for (&k, t) in &self.hops {
                let target = m - k;
                let w = target.div_euclid(qi);
                let col = target.rem_euclid(qi) as usize;
                h[(m as usize, col)] += t.eval(p, m) * phase(theta, w);
            }
        }
        h
    }

    pub fn to_json(&self) -> HamiltonianJson {
        HamiltonianJson {
            hops: self.hops.iter().map(|(k, t)| (k.to_string(), t.to_json(&self.alphabet))).collect(),
            potential: self.potential.to_json(&self.alphabet),
        }
    }

    /// Parse and validate.
    pub fn from_json(j: &HamiltonianJson, alphabet: &Alphabet) -> Result<Self> {
        let hops = j
            .hops
            .iter()
            .map(|(k, c)| {
                let k: i64 = k.trim().parse().map_err(|_| Error::Validation(format!("hop key {k:?} is not an integer")))?;
                Ok((k, PatternCoefficient::from_json(c, alphabet)?))
            })
            .collect::<Result<_>>()?;
        let potential = PatternCoefficient::from_json(&j.potential, alphabet)?;
        Self::validated(alphabet.clone(), hops, potential)
    }
}

/// e^{iθw}, exact at θ ∈ {0, π}.
fn phase(theta: f64, w: i64) -> Complex64 {
    if w == 0 || theta == 0.0 {
        Complex64::new(1.0, 0.0)
    } else if theta == std::f64::consts::PI {
        Complex64::new(if w % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
    } else {
        Complex64::from_polar(1.0, theta * w as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianJson {
    pub hops: BTreeMap<String, CoefficientJson>,
    pub potential: CoefficientJson,
}

/// The coefficient η ↦ conj t(τ^{−k}η), tabulated on radius r+|k| windows.
pub fn conjugate_shift(alphabet: &Alphabet, t: &PatternCoefficient, k: i64) -> Result<PatternCoefficient> {
    let r = t.radius();
    if t.table().is_empty() {
        return Ok(PatternCoefficient::constant(t.default_value().conj()));
    }
    let big = r + k.unsigned_abs() as usize;
    // tₖ(τ^{−k}η) reads η[k−r, k+r−1]; inside η[−big, big−1] that starts at k−r+big.
    let offset = (k - r as i64 + big as i64) as usize;
    let table = alphabet
        .all_words(2 * big)
        .into_iter()
        .map(|w| {
            let inner = Word(w.letters()[offset..offset + 2 * r].to_vec());
            (w, t.eval_window(&inner).conj())
        })
        .collect();
    Ok(PatternCoefficient::new(big, table, t.default_value().conj())?.canonical())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::chars("ab").unwrap()
    }

    fn pw(s: &str) -> PeriodicWord {
        PeriodicWord::from_block(ab().parse(s).unwrap()).unwrap()
    }

    #[test]
    fn laplacian_is_valid() {
        assert!(HamiltonianSpec::laplacian(ab()).validate_self_adjoint().is_empty());
    }

    #[test]
    fn one_sided_hop_set() {
        let h = HamiltonianSpec::new(ab(), [(1, PatternCoefficient::constant(1.0))].into(), PatternCoefficient::constant(0.0));
        assert_eq!(h.validate_self_adjoint(), vec![Violation::Asymmetric { k: 1 }]);
    }

    #[test]
    fn conjugation_forced() {
        let i = Complex64::new(0.0, 1.0);
        let bad = HamiltonianSpec::new(
            ab(),
            [(1, PatternCoefficient::constant(i)), (-1, PatternCoefficient::constant(i))].into(),
            PatternCoefficient::constant(0.0),
        );
        assert!(matches!(bad.validate_self_adjoint()[..], [Violation::Conjugation { k: 1, .. }]));
        let good = HamiltonianSpec::new(
            ab(),
            [(1, PatternCoefficient::constant(i)), (-1, PatternCoefficient::constant(-i))].into(),
            PatternCoefficient::constant(0.0),
        );
        assert!(good.validate_self_adjoint().is_empty());
    }

    #[test]
    fn complex_potential_rejected() {
        let h = HamiltonianSpec::new(ab(), BTreeMap::new(), PatternCoefficient::constant(Complex64::new(1.0, 0.5)));
        assert!(matches!(h.validate_self_adjoint()[..], [Violation::NonRealPotential { .. }]));
    }

    #[test]
    fn derived_backward_hop_is_consistent() {
        let a = ab();
        let t = PatternCoefficient::new(
            1,
            [(a.parse("ab").unwrap(), Complex64::new(0.5, 0.25)), (a.parse("ba").unwrap(), Complex64::new(2.0, 0.0))].into(),
            Complex64::new(1.0, 0.0),
        )
        .unwrap();
        let h = HamiltonianSpec::jacobi(a, t, PatternCoefficient::kohmoto(&ab(), "a", 1.0).unwrap()).unwrap();
        let p = pw("aabab");
        for n in -7..7 {
            assert_eq!(h.hop_value(-1, &p, n - 1), h.hop_value(1, &p, n).conj(), "n = {n}");
        }
        // broken table: t_{-1} shifted the wrong way
        let mut hops = h.hops().clone();
        hops.insert(-1, conjugate_shift(&ab(), &hops[&1], -1).unwrap());
        assert!(!HamiltonianSpec::new(ab(), hops, h.potential().clone()).validate_self_adjoint().is_empty());
    }

    #[test]
    fn bloch_matrix_examples() {
        let free = HamiltonianSpec::laplacian(ab());
        let theta = 0.7;
        let m = free.bloch_matrix(&pw("a"), theta);
        assert_eq!(m.shape(), (1, 1));
        assert!((m[(0, 0)] - Complex64::new(2.0 * theta.cos(), 0.0)).norm() < 1e-15);

        let h = HamiltonianSpec::jacobi(ab(), PatternCoefficient::constant(1.0), PatternCoefficient::from_letter_values(&ab(), &[1.0, -1.0]).unwrap()).unwrap();
        let m = h.bloch_matrix(&pw("ab"), theta);
        let e = Complex64::from_polar(1.0, theta);
        assert!((m[(0, 0)] - 1.0).norm() < 1e-15);
        assert!((m[(1, 1)] + 1.0).norm() < 1e-15);
        assert!((m[(0, 1)] - (1.0 + e.conj())).norm() < 1e-15);
        assert!((m[(1, 0)] - (1.0 + e)).norm() < 1e-15);
    }

    #[test]
    fn bloch_matrix_is_hermitian() {
        let a = ab();
        let t = PatternCoefficient::new(2, [(a.parse("abba").unwrap(), Complex64::new(0.3, -0.7))].into(), Complex64::new(1.0, 0.2)).unwrap();
        let h = HamiltonianSpec::jacobi(a, t, PatternCoefficient::kohmoto(&ab(), "b", 2.0).unwrap()).unwrap();
        for block in ["ab", "abb", "aabba", "abbabaab"] {
            for theta in [0.0, 0.3, std::f64::consts::PI, 5.0] {
                let m = h.bloch_matrix(&pw(block), theta);
                assert_eq!(m, m.adjoint(), "{block} θ = {theta}");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let h = HamiltonianSpec::jacobi(ab(), PatternCoefficient::constant(1.0), PatternCoefficient::kohmoto(&ab(), "a", 1.0).unwrap()).unwrap();
        let text = serde_json::to_string(&h.to_json()).unwrap();
        let back = HamiltonianSpec::from_json(&serde_json::from_str(&text).unwrap(), &ab()).unwrap();
        assert_eq!(back, h);
        let bad: HamiltonianJson = serde_json::from_str(r#"{"hops":{"1":{"default":1}},"potential":{}}"#).unwrap();
        assert!(matches!(HamiltonianSpec::from_json(&bad, &ab()), Err(Error::InvalidHamiltonian(_))));
    }
}
