//! Truncated dictionaries: the finite level sets D ∩ Aⁿ for 1 ≤ n ≤ depth.
//!
//! A dictionary of a subshift is infinite; every comparison in this crate is
//! made on a depth-limited truncation. A validated truncation satisfies
//! heredity at every level and extensibility as far as the stored levels can
//! witness it: words up to `depth − 2` need a two-sided extension `aub`, words
//! at `depth − 1` need a left and a right extension, the top level is exempt.
//! Whether a validated truncation extends to an infinite dictionary is not
//! decided here.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{DictionaryViolation, Error, Result};
use crate::symbolic::{Alphabet, PeriodicWord, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedDictionary {
    alphabet: Alphabet,
    /// `levels[n - 1]` holds the words of length `n`.
    levels: Vec<BTreeSet<Word>>,
}

impl TruncatedDictionary {
    /// Build from explicit level sets, rejecting anything that violates the axioms.
    pub fn from_word_sets(alphabet: Alphabet, levels: Vec<BTreeSet<Word>>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Validation("dictionary needs depth >= 1".into()));
        }
        let d = Self { alphabet, levels };
        let violations = d.violations();
        if violations.is_empty() {
            Ok(d)
        } else {
            Err(Error::InvalidDictionary(violations))
        }
    }

    /// Convenience wrapper parsing each level from text.
    pub fn from_strings(alphabet: Alphabet, levels: &[&[&str]]) -> Result<Self> {
        let parsed = levels
            .iter()
            .map(|lvl| lvl.iter().map(|s| alphabet.parse(s)).collect::<Result<BTreeSet<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_word_sets(alphabet, parsed)
    }

    /// dic(ξ) truncated at `depth`, for a periodic ξ.
    pub fn from_periodic_word(alphabet: Alphabet, p: &PeriodicWord, depth: usize) -> Result<Self> {
        check_depth(depth)?;
        check_letters(&alphabet, p.block())?;
        let q = p.block_len() as i64;
        let levels = (1..=depth)
            .map(|n| (0..q).map(|s| p.window(s, n)).collect::<BTreeSet<_>>())
            .collect();
        Ok(Self { alphabet, levels })
    }

    /// Dictionary of the orbit closure of `u^∞ w · v^∞`.
    pub fn from_eventually_periodic(
        alphabet: Alphabet,
        left: &Word,
        middle: &Word,
        right: &Word,
        depth: usize,
    ) -> Result<Self> {
        check_depth(depth)?;
        if left.is_empty() || right.is_empty() {
            return Err(Error::Validation("periodic tails must be non-empty".into()));
        }
        for w in [left, middle, right] {
            check_letters(&alphabet, w)?;
        }
        let reps = |u: &Word| depth / u.len() + 2;
        let mut sample = Word::empty();
        for _ in 0..reps(left) {
            sample = sample.concat(left);
        }
        sample = sample.concat(middle);
        for _ in 0..reps(right) {
            sample = sample.concat(right);
        }
        let levels = collect_factors(std::iter::once(&sample), depth);
        Self::from_word_sets(alphabet, levels)
    }

    /// All factors of a finite sample, validated. Suitable for long samples
    /// of recurrent sequences where boundary effects vanish.
    pub fn from_sample(alphabet: Alphabet, sample: &Word, depth: usize) -> Result<Self> {
        check_depth(depth)?;
        check_letters(&alphabet, sample)?;
        if sample.len() < depth {
            return Err(Error::DepthTooSmall { depth: sample.len(), required: depth });
        }
        let levels = collect_factors(std::iter::once(sample), depth);
        Self::from_word_sets(alphabet, levels)
    }

    pub fn full_shift(alphabet: Alphabet, depth: usize) -> Result<Self> {
        check_depth(depth)?;
        let levels = (1..=depth).map(|n| alphabet.all_words(n).into_iter().collect()).collect();
        Ok(Self { alphabet, levels })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Words of length `n`, sorted. Panics outside `1..=depth`.
    pub fn level(&self, n: usize) -> &BTreeSet<Word> {
        &self.levels[n - 1]
    }

    pub fn levels(&self) -> &[BTreeSet<Word>] {
        &self.levels
    }

    pub fn contains(&self, w: &Word) -> bool {
        match w.len() {
            0 => true,
            n if n <= self.depth() => self.levels[n - 1].contains(w),
            _ => false,
        }
    }

    /// Subword complexity p(k) = ♯(D ∩ Aᵏ).
    pub fn complexity(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.depth() {
            return Err(Error::Range { start: k, end: k + 1, len: self.depth() + 1 });
        }
        Ok(self.levels[k - 1].len())
    }

    /// Levels 1..=m agree as sets.
    pub fn equal_to_depth(&self, other: &Self, m: usize) -> Result<bool> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        if m > self.depth().min(other.depth()) {
            return Err(Error::DepthTooSmall { depth: self.depth().min(other.depth()), required: m });
        }
        Ok(self.levels[..m] == other.levels[..m])
    }

    /// Largest m ≤ min(depths, cap) with `equal_to_depth(other, m)`.
    pub fn match_depth(&self, other: &Self, cap: usize) -> Result<usize> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let limit = self.depth().min(other.depth()).min(cap);
        Ok((0..limit).take_while(|&i| self.levels[i] == other.levels[i]).count())
    }

    pub fn restrict_depth(&self, m: usize) -> Result<Self> {
        check_depth(m)?;
        if m > self.depth() {
            return Err(Error::DepthTooSmall { depth: self.depth(), required: m });
        }
        Self::from_word_sets(self.alphabet.clone(), self.levels[..m].to_vec())
    }

    /// Level-wise union at the common depth, revalidated.
    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let depth = self.depth().min(other.depth());
        let levels = (0..depth).map(|i| self.levels[i].union(&other.levels[i]).cloned().collect()).collect();
        Self::from_word_sets(self.alphabet.clone(), levels)
    }

    /// Every axiom violation visible in the truncation.
    pub fn violations(&self) -> Vec<DictionaryViolation> {
        let depth = self.depth();
        let render = |w: &Word| self.alphabet.render(w);
        let mut out = Vec::new();
        for (i, level) in self.levels.iter().enumerate() {
            let n = i + 1;
            if level.is_empty() {
                out.push(DictionaryViolation::EmptyLevel { level: n });
            }
            for w in level {
                if w.len() != n || !self.alphabet.contains_word(w) {
                    out.push(DictionaryViolation::WrongLength { word: render(w), level: n });
                    continue;
                }
                if n >= 2 {
                    for f in [w.drop_last(), w.drop_first()] {
                        if !self.levels[n - 2].contains(&f) {
                            out.push(DictionaryViolation::Heredity { word: render(w), missing: render(&f) });
                        }
                    }
                }
                if n + 2 <= depth {
                    let extended = self.levels[n + 1].iter().any(|e| e.letters()[1..=n] == *w.letters());
                    if !extended {
                        out.push(DictionaryViolation::Extensibility { word: render(w) });
                    }
                } else if n + 1 == depth {
                    let next = &self.levels[n];
                    if !next.iter().any(|e| e.letters()[..n] == *w.letters()) {
                        out.push(DictionaryViolation::RightExtension { word: render(w) });
                    }
                    if !next.iter().any(|e| e.letters()[1..] == *w.letters()) {
                        out.push(DictionaryViolation::LeftExtension { word: render(w) });
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> DictionaryJson {
        DictionaryJson {
            alphabet: self.alphabet.letters().to_vec(),
            depth: self.depth(),
            levels: self
                .levels
                .iter()
                .enumerate()
                .map(|(i, l)| (i + 1, l.iter().map(|w| self.alphabet.render(w)).collect()))
                .collect(),
        }
    }

    pub fn from_json(j: &DictionaryJson) -> Result<Self> {
        let alphabet = Alphabet::new(j.alphabet.iter().cloned())?;
        if j.depth == 0 {
            return Err(Error::Validation("depth must be >= 1".into()));
        }
        let levels = (1..=j.depth)
            .map(|n| {
                let words = j.levels.get(&n).ok_or_else(|| Error::Validation(format!("level {n} missing")))?;
                words.iter().map(|s| alphabet.parse(s)).collect::<Result<BTreeSet<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(extra) = j.levels.keys().find(|&&k| k == 0 || k > j.depth) {
            return Err(Error::Validation(format!("level {extra} outside 1..={}", j.depth)));
        }
        Self::from_word_sets(alphabet, levels)
    }
}

/// Wire form: `{"alphabet":[...], "depth":N, "levels":{"1":[...], ...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DictionaryJson {
    pub alphabet: Vec<String>,
    pub depth: usize,
    pub levels: BTreeMap<usize, Vec<String>>,
}

/// Level sets of all factors (lengths 1..=depth) of the given finite words.
pub(crate) fn collect_factors<'a>(words: impl IntoIterator<Item = &'a Word>, depth: usize) -> Vec<BTreeSet<Word>> {
    let mut levels = vec![BTreeSet::new(); depth];
    for w in words {
        let l = w.letters();
        for (n, level) in levels.iter_mut().enumerate() {
            let n = n + 1;
            if n > l.len() {
                break;
            }
            for s in 0..=l.len() - n {
                level.insert(Word(l[s..s + n].to_vec()));
            }
        }
    }
    levels
}

fn check_depth(depth: usize) -> Result<()> {
    if depth == 0 {
        Err(Error::Validation("depth must be >= 1".into()))
    } else {
        Ok(())
    }
}

fn check_letters(alphabet: &Alphabet, w: &Word) -> Result<()> {
    match w.letters().iter().find(|&&l| l as usize >= alphabet.len()) {
        Some(l) => Err(Error::ForeignLetter(format!("#{l}"))),
        None => Ok(()),
    }
}
