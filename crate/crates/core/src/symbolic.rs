//! Alphabets, finite words, periodic bi-infinite words and the encoding of
//! colored point sets on the line into symbolic sequences.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a letter inside its [`Alphabet`].
pub type Letter = u16;

/// A finite ordered set of opaque symbols.
///
/// The construction order fixes the lexicographic order used everywhere
/// downstream (sorted level sets, vertex orderings, tie-breaks).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<String>,
    index: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(letters: impl IntoIterator<Item = S>) -> Result<Self> {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::Validation("alphabet is empty".into()));
        }
        if letters.len() > Letter::MAX as usize {
            return Err(Error::Validation("alphabet too large".into()));
        }
        let mut index = HashMap::with_capacity(letters.len());
        for (i, l) in letters.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::Validation("empty letter symbol".into()));
            }
            if index.insert(l.clone(), i as Letter).is_some() {
                return Err(Error::Validation(format!("duplicate letter {l:?}")));
            }
        }
        Ok(Self { letters, index })
    }

    /// Alphabet of single-character letters, e.g. `Alphabet::chars("ab")`.
    pub fn chars(s: &str) -> Result<Self> {
        Self::new(s.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn symbol(&self, l: Letter) -> &str {
        &self.letters[l as usize]
    }

    pub fn index_of(&self, symbol: &str) -> Option<Letter> {
        self.index.get(symbol).copied()
    }

    fn single_char(&self) -> bool {
        self.letters.iter().all(|l| l.chars().count() == 1)
    }

    /// Parse a word. Single-character alphabets are split per character;
    /// otherwise letters are separated by whitespace.
    pub fn parse(&self, text: &str) -> Result<Word> {
        let letters: Result<Vec<Letter>> = if self.single_char() {
            text.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| {
                    let s = c.to_string();
                    self.index_of(&s).ok_or(Error::ForeignLetter(s))
                })
                .collect()
        } else {
            text.split_whitespace()
                .map(|s| self.index_of(s).ok_or_else(|| Error::ForeignLetter(s.to_string())))
                .collect()
        };
        letters.map(Word)
    }

    pub fn render(&self, w: &Word) -> String {
        let sep = if self.single_char() { "" } else { " " };
        w.0.iter().map(|&l| self.symbol(l)).collect::<Vec<_>>().join(sep)
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        w.0.iter().all(|&l| (l as usize) < self.len())
    }

    /// All words of length `n`, in lexicographic order.
    pub fn all_words(&self, n: usize) -> Vec<Word> {
        let a = self.len();
        let total = a.pow(n as u32);
        (0..total)
            .map(|mut code| {
                let mut letters = vec![0; n];
                for slot in letters.iter_mut().rev() {
                    *slot = (code % a) as Letter;
                    code /= a;
                }
                Word(letters)
            })
            .collect()
    }
}

/// A finite word, stored as letter indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// The contiguous factor `w[start .. start + len]`.
    pub fn subword(&self, start: usize, len: usize) -> Result<Word> {
        let end = start.checked_add(len).filter(|&e| e <= self.len());
        match end {
            Some(end) => Ok(Word(self.0[start..end].to_vec())),
            None => Err(Error::Range { start, end: start.saturating_add(len), len: self.len() }),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Prefix of length `len - 1` (the boundary map ∂₀ on edge words).
    pub fn drop_last(&self) -> Word {
        Word(self.0[..self.len().saturating_sub(1)].to_vec())
    }

    /// Suffix of length `len - 1` (the boundary map ∂₁ on edge words).
    pub fn drop_first(&self) -> Word {
        Word(self.0.get(1..).unwrap_or(&[]).to_vec())
    }

    pub fn contains_letter(&self, l: Letter) -> bool {
        self.0.contains(&l)
    }

    /// Cyclic rotation starting at position `start`.
    pub fn rotate(&self, start: usize) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        let s = start % self.len();
        let mut v = self.0[s..].to_vec();
        v.extend_from_slice(&self.0[..s]);
        Word(v)
    }

    /// Lexicographically smallest rotation.
    pub fn min_rotation(&self) -> Word {
        (0..self.len().max(1)).map(|s| self.rotate(s)).min().unwrap_or_default()
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Without an alphabet at hand, letters 0..26 print as a..z.
        for &l in &self.0 {
            if l < 26 {
                write!(f, "{}", (b'a' + l as u8) as char)?;
            } else {
                write!(f, "<{l}>")?;
            }
        }
        Ok(())
    }
}

/// The bi-infinite word ξ(n) = block[(n + origin) mod |block|].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicWord {
    block: Word,
    origin: usize,
}

impl PeriodicWord {
    pub fn new(block: Word, origin: usize) -> Result<Self> {
        if block.is_empty() {
            return Err(Error::Validation("periodic word needs a non-empty block".into()));
        }
        let origin = origin % block.len();
        Ok(Self { block, origin })
    }

    /// `u^∞` with the first letter of `u` at position 0.
    pub fn from_block(block: Word) -> Result<Self> {
        Self::new(block, 0)
    }

    pub fn block(&self) -> &Word {
        &self.block
    }

    pub fn origin(&self) -> usize {
        self.origin
    }

    pub fn block_len(&self) -> usize {
        self.block.len()
    }

    pub fn at(&self, n: i64) -> Letter {
        let l = self.block.len() as i64;
        self.block.0[(n + self.origin as i64).rem_euclid(l) as usize]
    }

    /// ξ(start) … ξ(start + len − 1).
    pub fn window(&self, start: i64, len: usize) -> Word {
        Word((0..len as i64).map(|i| self.at(start + i)).collect())
    }

    /// The block re-based so that its first letter sits at position 0.
    pub fn aligned_block(&self) -> Word {
        self.block.rotate(self.origin)
    }

    pub fn minimal_period(&self) -> usize {
        let l = self.block.len();
        let b = &self.block.0;
        (1..=l)
            .filter(|q| l % q == 0)
            .find(|&q| (0..l).all(|i| b[i] == b[(i + q) % l]))
            .unwrap_or(l)
    }

    /// Equivalent periodic word whose block is one minimal period.
    pub fn primitive(&self) -> PeriodicWord {
        let q = self.minimal_period();
        PeriodicWord { block: self.window(0, q), origin: 0 }
    }

    /// τ^m ξ, where (τξ)(j) = ξ(j − 1).
    pub fn shift(&self, m: i64) -> PeriodicWord {
        let l = self.block.len() as i64;
        let origin = (self.origin as i64 - m).rem_euclid(l) as usize;
        PeriodicWord { block: self.block.clone(), origin }
    }

    /// True when both words lie in the same shift orbit.
    pub fn rotation_equivalent(&self, other: &PeriodicWord) -> bool {
        let a = self.primitive();
        let b = other.primitive();
        a.block_len() == b.block_len() && a.block.min_rotation() == b.block.min_rotation()
    }
}

/// A finite sample of a colored Delone set on the real line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColoredPointSet {
    pub points: Vec<f64>,
    pub colors: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_max: Option<f64>,
}

impl ColoredPointSet {
    pub fn validate(&self) -> Result<()> {
        if self.points.len() < 2 {
            return Err(Error::Validation("need at least two points".into()));
        }
        if self.points.len() != self.colors.len() {
            return Err(Error::Validation("points and colors differ in length".into()));
        }
        if self.points.iter().any(|x| !x.is_finite()) {
            return Err(Error::Validation("non-finite coordinate".into()));
        }
        if let Some(i) = self.points.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::Validation(format!("points not strictly increasing at index {}", i + 1)));
        }
        match (self.r_min, self.r_max) {
            (Some(r), Some(big_r)) => {
                if !(r > 0.0 && big_r >= r) {
                    return Err(Error::Validation("radii must satisfy 0 < r_min <= r_max".into()));
                }
                for g in self.gaps() {
                    if g < 2.0 * r || g > 2.0 * big_r {
                        return Err(Error::Validation(format!(
                            "gap {g} outside [{}, {}]",
                            2.0 * r,
                            2.0 * big_r
                        )));
                    }
                }
            }
            (None, None) => {}
            _ => return Err(Error::Validation("give both radii or neither".into())),
        }
        Ok(())
    }

    pub fn gaps(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.windows(2).map(|w| w[1] - w[0])
    }

    /// Checks 2r|n−m| ≤ |x_n − x_m| ≤ 2R|n−m| over all pairs. `None` without radii.
    pub fn metric_comparable(&self) -> Option<bool> {
        let (r, big_r) = (self.r_min?, self.r_max?);
        let x = &self.points;
        let slack = 1e-12 * x.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let ok = (0..x.len()).all(|n| {
            (n + 1..x.len()).all(|m| {
                let d = (x[m] - x[n]).abs();
                let steps = (m - n) as f64;
                2.0 * r * steps <= d + slack && d <= 2.0 * big_r * steps + slack
            })
        });
        Some(ok)
    }
}

/// One letter of an encoded point set: a gap class and the color of its left point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TileLetter {
    pub gap: f64,
    pub color: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeloneEncoding {
    pub alphabet: Alphabet,
    pub word: Word,
    /// Gap representative and color for each letter, indexed like the alphabet.
    pub tiles: Vec<TileLetter>,
}

impl DeloneEncoding {
    /// Points rebuilt from the word: x₀ = 0 and x_{n+1} = x_n + gap(letter n).
    pub fn reconstruct(&self) -> Vec<f64> {
        let mut pts = Vec::with_capacity(self.word.len() + 1);
        let mut x = 0.0;
        pts.push(x);
        for &l in self.word.letters() {
            x += self.tiles[l as usize].gap;
            pts.push(x);
        }
        pts
    }
}

/// Encode a finite colored point set as a word over (gap class, color) letters.
///
/// Gaps are clustered greedily left to right: a gap joins the first existing
/// class whose representative (its first member) lies within `gap_tolerance`.
/// The sample is anchored at its leftmost point.
pub fn encode_delone(d: &ColoredPointSet, gap_tolerance: f64) -> Result<DeloneEncoding> {
    if !(gap_tolerance > 0.0) {
        return Err(Error::Validation("gap_tolerance must be positive".into()));
    }
    d.validate()?;

    let mut reps: Vec<f64> = Vec::new();
    let classes: Vec<usize> = d
        .gaps()
        .map(|g| match reps.iter().position(|&r| (g - r).abs() <= gap_tolerance) {
            Some(c) => c,
            None => {
                reps.push(g);
                reps.len() - 1
            }
        })
        .collect();

    let mut pairs: Vec<(usize, &str)> =
        classes.iter().zip(&d.colors).map(|(&c, col)| (c, col.as_str())).collect();
    pairs.sort_by(|a, b| reps[a.0].total_cmp(&reps[b.0]).then_with(|| a.1.cmp(b.1)));
    pairs.dedup();

    let names: Vec<String> = (0..pairs.len())
        .map(|i| if pairs.len() <= 26 { ((b'a' + i as u8) as char).to_string() } else { format!("t{i}") })
        .collect();
    let alphabet = Alphabet::new(names)?;
    let tiles = pairs.iter().map(|&(c, col)| TileLetter { gap: reps[c], color: col.to_string() }).collect();

    let word = classes
        .iter()
        .zip(&d.colors)
        .map(|(&c, col)| pairs.iter().position(|&(pc, pcol)| pc == c && pcol == col.as_str()).unwrap() as Letter)
        .collect::<Vec<_>>();

    Ok(DeloneEncoding { alphabet, word: Word(word), tiles })
}
