use super::bands::BandSpectrum;
use super::bloch::canonical_word;
use super::hamiltonian::HamiltonianSpec;
use crate::error::{Error, Result};
use crate::symbolic::PeriodicWord;

pub const DEFAULT_BRACKET_TOLERANCE: f64 = 1e-13;

/// Real Jacobi data over one period: aₙ = H[n+1, n], vₙ = H[n, n].
struct Jacobi {
    a: Vec<f64>,
    v: Vec<f64>,
}

impl Jacobi {
    fn from_spec(h: &HamiltonianSpec, p: &PeriodicWord) -> Result<Self> {
        if !h.is_nearest_neighbor() {
            return Err(Error::Precondition("discriminant route needs hops exactly {-1, 1}".into()));
        }
        let violations = h.validate_self_adjoint();
        if !violations.is_empty() {
            return Err(Error::InvalidHamiltonian(violations));
        }
        let q = p.minimal_period() as i64;
        let mut a = Vec::with_capacity(q as usize);
        let mut v = Vec::with_capacity(q as usize);
        for n in 0..q {
            let t = h.hop_value(1, p, n + 1);
            if t.im != 0.0 {
                return Err(Error::Precondition(format!("hopping at site {n} is not real")));
            }
            if t.re == 0.0 {
                return Err(Error::ZeroHopping(n as usize));
            }
            a.push(t.re);
            v.push(h.potential_value(p, n));
        }
        Ok(Self { a, v })
    }

    fn q(&self) -> usize {
        self.a.len()
    }

    /// Trace of T_{q−1}⋯T₀ with Tₙ = [[(E−vₙ)/aₙ, −aₙ₋₁/aₙ], [1, 0]].
    fn discriminant(&self, e: f64) -> f64 {
        let q = self.q();
        // columns of the running product applied to the unit vectors
        let (mut m00, mut m01, mut m10, mut m11) = (1.0, 0.0, 0.0, 1.0);
        for n in 0..q {
            let prev = self.a[(n + q - 1) % q];
            let x = (e - self.v[n]) / self.a[n];
            let y = -prev / self.a[n];
            let (n00, n01) = (x * m00 + y * m10, x * m01 + y * m11);
            m10 = m00;
            m11 = m01;
            m00 = n00;
            m01 = n01;
        }
        m00 + m11
    }

    /// Eigenvalues below x of the Dirichlet restriction to sites 1..q−1.
    fn dirichlet_count(&self, x: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for n in 1..self.q() {
            let off = if n > 1 { self.a[n - 1] } else { 0.0 };
            d = (self.v[n] - x) - if n > 1 { off * off / d } else { 0.0 };
            if d == 0.0 {
                d = -f64::EPSILON * (1.0 + x.abs());
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn envelope(&self) -> (f64, f64) {
        let q = self.q();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for n in 0..q {
            let r = self.a[n].abs() + self.a[(n + q - 1) % q].abs();
            lo = lo.min(self.v[n] - r);
            hi = hi.max(self.v[n] + r);
        }
        (lo - 1.0, hi + 1.0)
    }
}

/// Δ(E) for the nearest-neighbor chain on `p`.
pub fn discriminant(h: &HamiltonianSpec, p: &PeriodicWord, e: f64) -> Result<f64> {
    Ok(Jacobi::from_spec(h, &canonical_word(p))?.discriminant(e))
}

/// Smallest x in [lo, hi] with pred(x), assuming pred is monotone false → true.
fn bisect(mut lo: f64, mut hi: f64, tol: f64, pred: impl Fn(f64) -> bool) -> f64 {
    while hi - lo > tol * (1.0 + lo.abs().max(hi.abs())) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The q bands {E : |Δ(E)| ≤ 2}.
///
/// One Dirichlet eigenvalue sits in every closed gap, so the Dirichlet
/// spectrum together with a Gershgorin envelope cuts the line into q segments
/// holding one band each. Inside a segment Δ is monotone across its band: the
/// root of Δ is bracketed by the sign change and the band edges by the
/// monotone predicate |Δ| > 2 on either side of it.
pub fn spectrum_discriminant(h: &HamiltonianSpec, p: &PeriodicWord, tolerance: f64) -> Result<BandSpectrum> {
    let jac = Jacobi::from_spec(h, &canonical_word(p))?;
    let q = jac.q();
    let (lo, hi) = jac.envelope();
    let mut cuts = vec![lo];
    for j in 0..q - 1 {
        cuts.push(bisect(lo, hi, tolerance * 1e-2, |x| jac.dirichlet_count(x) > j));
    }
    cuts.push(hi);

    let delta = |e: f64| jac.discriminant(e);
    let mut intervals = Vec::with_capacity(q);
    for seg in cuts.windows(2) {
        let (s0, s1) = (seg[0], seg[1]);
        let (d0, d1) = (delta(s0), delta(s1));
        // Exponentially thin bands push |Δ| past 1/ε next to them and the
        // trace loses all digits; the Bloch route stays accurate there.
        if d0.signum() == d1.signum() || d0.is_nan() || d1.is_nan() {
            return Err(Error::IllConditioned(format!("discriminant has no resolvable sign change on [{s0}, {s1}]")));
        }
        let rising = d1 > d0;
        let root = bisect(s0, s1, tolerance, |e| (delta(e) > 0.0) == rising);
        let left = bisect(s0, root, tolerance, |e| delta(e).abs() <= 2.0);
        let right = bisect(root, s1, tolerance, |e| delta(e).abs() > 2.0);
        intervals.push((left, right));
    }
    BandSpectrum::from_intervals(intervals, 0.0)
}
