use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbolic::{Alphabet, PeriodicWord, Word};

/// A strongly pattern-equivariant function: its value at ξ depends only on
/// the window ξ[−r, r−1]. Unlisted windows take `default`.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternCoefficient {
    radius: usize,
    table: BTreeMap<Word, Complex64>,
    default: Complex64,
}

impl PatternCoefficient {
    pub fn new(radius: usize, table: BTreeMap<Word, Complex64>, default: Complex64) -> Result<Self> {
        if let Some(w) = table.keys().find(|w| w.len() != 2 * radius) {
            return Err(Error::Validation(format!("window key of length {} for radius {radius}", w.len())));
        }
        if table.values().chain([&default]).any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Validation("non-finite coefficient value".into()));
        }
        Ok(Self { radius, table, default })
    }

    pub fn constant(c: impl Into<Complex64>) -> Self {
        Self { radius: 0, table: BTreeMap::new(), default: c.into() }
    }

    /// Radius-1 coefficient depending on ξ(0) only, keyed on ξ[−1]ξ[0].
    pub fn from_letter_values(alphabet: &Alphabet, values: &[f64]) -> Result<Self> {
        if values.len() != alphabet.len() {
            return Err(Error::Validation("one value per letter required".into()));
        }
        let table = alphabet
            .all_words(2)
            .into_iter()
            .map(|w| {
                let v = values[w.letters()[1] as usize];
                (w, Complex64::new(v, 0.0))
            })
            .collect();
        Self::new(1, table, Complex64::new(0.0, 0.0))
    }

    /// λ on windows with ξ(0) = `letter`, 0 elsewhere.
    pub fn kohmoto(alphabet: &Alphabet, letter: &str, lambda: f64) -> Result<Self> {
        let l = alphabet.index_of(letter).ok_or_else(|| Error::ForeignLetter(letter.into()))?;
        let values: Vec<f64> = (0..alphabet.len()).map(|i| if i == l as usize { lambda } else { 0.0 }).collect();
        Self::from_letter_values(alphabet, &values)
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn table(&self) -> &BTreeMap<Word, Complex64> {
        &self.table
    }

    pub fn default_value(&self) -> Complex64 {
        self.default
    }

    /// Value on a window of length 2r.
    pub fn eval_window(&self, w: &Word) -> Complex64 {
        self.table.get(w).copied().unwrap_or(self.default)
    }

    /// t(τ^{−n}ξ) for ξ = p, i.e. the table entry for p[n−r, n+r−1].
    pub fn eval(&self, p: &PeriodicWord, n: i64) -> Complex64 {
        if self.table.is_empty() {
            return self.default;
        }
        self.eval_window(&p.window(n - self.radius as i64, 2 * self.radius))
    }

    /// Every value the coefficient can take.
    pub fn values(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.table.values().copied().chain(std::iter::once(self.default))
    }

    /// Drop entries equal to the default.
    pub fn canonical(&self) -> Self {
        let table = self.table.iter().filter(|(_, &c)| c != self.default).map(|(w, &c)| (w.clone(), c)).collect();
        Self { radius: self.radius, table, default: self.default }
    }

    /// Same function written as constant + Σ cⱼ·χ(uⱼ, vⱼ).
    pub fn to_cylinder_sum(&self) -> CylinderSum {
        let r = self.radius;
        let terms = self
            .canonical()
            .table
            .into_iter()
            .map(|(w, c)| Cylinder {
                left: Word(w.letters()[..r].to_vec()),
                right: Word(w.letters()[r..].to_vec()),
                coefficient: c - self.default,
            })
            .collect();
        CylinderSum { constant: self.default, terms }
    }

    /// Tabulate a cylinder sum on all windows of the smallest radius covering it.
    pub fn from_cylinder_sum(alphabet: &Alphabet, sum: &CylinderSum) -> Result<Self> {
        let radius = sum.terms.iter().map(|t| t.left.len().max(t.right.len())).max().unwrap_or(0);
        let table = alphabet
            .all_words(2 * radius)
            .into_iter()
            .map(|w| {
                let v = sum.eval_window(&w, radius);
                (w, v)
            })
            .collect();
        Ok(Self::new(radius, table, sum.constant)?.canonical())
    }

    pub(crate) fn to_json(&self, alphabet: &Alphabet) -> CoefficientJson {
        CoefficientJson {
            radius: self.radius,
            table: self.table.iter().map(|(w, &c)| (alphabet.render(w), ComplexValue::from(c))).collect(),
            default: ComplexValue::from(self.default),
        }
    }

    pub(crate) fn from_json(j: &CoefficientJson, alphabet: &Alphabet) -> Result<Self> {
        let table = j
            .table
            .iter()
            .map(|(k, v)| {
                let w = if k.is_empty() { Word::empty() } else { alphabet.parse(k)? };
                Ok((w, Complex64::from(*v)))
            })
            .collect::<Result<_>>()?;
        Self::new(j.radius, table, j.default.into())
    }
}

/// χ(u, v): the indicator of ξ[−|u|, −1] = u and ξ[0, |v|−1] = v.
#[derive(Debug, Clone, PartialEq)]
pub struct Cylinder {
    pub left: Word,
    pub right: Word,
    pub coefficient: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CylinderSum {
    pub constant: Complex64,
    pub terms: Vec<Cylinder>,
}

impl CylinderSum {
    /// Evaluate on a window ξ[−radius, radius−1].
    pub fn eval_window(&self, w: &Word, radius: usize) -> Complex64 {
        let l = w.letters();
        self.terms
            .iter()
            .filter(|t| {
                t.left.len() <= radius
                    && t.right.len() <= radius
                    && l[radius - t.left.len()..radius] == *t.left.letters()
                    && l[radius..radius + t.right.len()] == *t.right.letters()
            })
            .fold(self.constant, |acc, t| acc + t.coefficient)
    }
}

/// A complex number in JSON: `[re, im]` or a bare real.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexValue {
    Real(f64),
    Pair([f64; 2]),
}

impl From<ComplexValue> for Complex64 {
    fn from(v: ComplexValue) -> Self {
        match v {
            ComplexValue::Real(re) => Complex64::new(re, 0.0),
            ComplexValue::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

impl From<Complex64> for ComplexValue {
    fn from(c: Complex64) -> Self {
        if c.im == 0.0 {
            ComplexValue::Real(c.re)
        } else {
            ComplexValue::Pair([c.re, c.im])
        }
    }
}

fn zero() -> ComplexValue {
    ComplexValue::Real(0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientJson {
    #[serde(default)]
    pub radius: usize,
    #[serde(default)]
    pub table: BTreeMap<String, ComplexValue>,
    #[serde(default = "zero")]
    pub default: ComplexValue,
}
