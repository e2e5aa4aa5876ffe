//! Substitutions (word homomorphisms), primitivity, and the dictionaries they
//! generate. Includes the Fibonacci and Golay-Rudin-Shapiro rules.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::dictionary::{collect_factors, TruncatedDictionary};
use crate::error::{Error, Result};
use crate::symbolic::{Alphabet, Letter, PeriodicWord, Word};

/// Cap on k when searching for a letter with S^k(a) = u·a·v.
pub const SPECIAL_LETTER_SEARCH_CAP: usize = 20;

const MAX_ITERATIONS: usize = 64;
const MAX_WORD_LEN: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    alphabet: Alphabet,
    images: Vec<Word>,
}

impl Substitution {
    pub fn new(alphabet: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != alphabet.len() {
            return Err(Error::Validation(format!(
                "{} images for {} letters",
                images.len(),
                alphabet.len()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::Validation(format!("image of {:?} is empty", alphabet.symbol(i as Letter))));
            }
            if !alphabet.contains_word(img) {
                return Err(Error::ForeignLetter(format!("in image of {:?}", alphabet.symbol(i as Letter))));
            }
        }
        Ok(Self { alphabet, images })
    }

    /// Build from `(letter, image)` text pairs.
    pub fn from_rules(alphabet: Alphabet, rules: &[(&str, &str)]) -> Result<Self> {
        let mut images = vec![None; alphabet.len()];
        for &(l, img) in rules {
            let idx = alphabet.index_of(l).ok_or_else(|| Error::ForeignLetter(l.to_string()))?;
            images[idx as usize] = Some(alphabet.parse(img)?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, img)| img.ok_or_else(|| Error::Validation(format!("no rule for {:?}", alphabet.symbol(i as Letter)))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, images)
    }

    /// a → ab, b → a.
    pub fn fibonacci() -> Self {
        Self::from_rules(Alphabet::chars("ab").unwrap(), &[("a", "ab"), ("b", "a")]).unwrap()
    }

    /// Golay-Rudin-Shapiro on pair letters: A → AB, B → AC, C → DB, D → DC.
    pub fn golay_rudin_shapiro() -> Self {
        Self::from_rules(
            Alphabet::chars("ABCD").unwrap(),
            &[("A", "AB"), ("B", "AC"), ("C", "DB"), ("D", "DC")],
        )
        .unwrap()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn image(&self, l: Letter) -> &Word {
        &self.images[l as usize]
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut out = Vec::new();
        for &l in w.letters() {
            let img = self.images.get(l as usize).ok_or_else(|| Error::ForeignLetter(format!("#{l}")))?;
            out.extend_from_slice(img.letters());
        }
        Ok(Word(out))
    }

    pub fn iterate(&self, w: &Word, k: usize) -> Result<Word> {
        let mut cur = w.clone();
        for _ in 0..k {
            cur = self.apply(&cur)?;
        }
        Ok(cur)
    }

    /// S applied letterwise to a bi-infinite periodic word; the image of ξ(0)
    /// starts at position 0 of the result.
    pub fn apply_periodic(&self, p: &PeriodicWord) -> Result<PeriodicWord> {
        PeriodicWord::from_block(self.apply(&p.aligned_block())?)
    }

    pub fn iterate_periodic(&self, p: &PeriodicWord, k: usize) -> Result<PeriodicWord> {
        PeriodicWord::from_block(self.iterate(&p.aligned_block(), k)?)
    }

    /// Entry (a, b) counts occurrences of a in S(b).
    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let n = self.alphabet.len();
        let mut m = vec![vec![0u64; n]; n];
        for (b, img) in self.images.iter().enumerate() {
            for &a in img.letters() {
                m[a as usize][b] += 1;
            }
        }
        IncidenceMatrix(m)
    }

    /// Least N ≤ |A|² − |A| + 1 with M^N entrywise positive, or a zero entry
    /// of M^N at the bound.
    pub fn is_primitive(&self) -> Primitivity {
        let n = self.alphabet.len();
        let bound = n * n - n + 1;
        let pattern: Vec<Vec<bool>> = self.incidence_matrix().0.iter().map(|r| r.iter().map(|&x| x > 0).collect()).collect();
        let mut power = pattern.clone();
        for exponent in 1..=bound {
            if power.iter().all(|r| r.iter().all(|&x| x)) {
                return Primitivity::Primitive { exponent };
            }
            if exponent < bound {
                power = bool_mul(&power, &pattern);
            }
        }
        let (a, b) = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| !power[a][b])
            .expect("non-positive power has a zero entry");
        Primitivity::NotPrimitive { bound, zero_entry: (a as Letter, b as Letter) }
    }

    /// A letter a and k ≤ 20 with S^k(a) = u·a·v, u and v non-empty, and
    /// S^k(a) containing every letter. Smallest letter first, then smallest k.
    pub fn special_letter(&self) -> Option<(Letter, usize)> {
        let n = self.alphabet.len();
        (0..n as Letter).find_map(|a| {
            let mut w = Word(vec![a]);
            for k in 1..=SPECIAL_LETTER_SEARCH_CAP {
                w = self.apply(&w).ok()?;
                let l = w.letters();
                let interior = l.len() >= 3 && l[1..l.len() - 1].contains(&a);
                let covers = (0..n as Letter).all(|x| l.contains(&x));
                if interior && covers {
                    return Some((a, k));
                }
                if w.len() > MAX_WORD_LEN {
                    return None;
                }
            }
            None
        })
    }

    /// Letters whose iterates generate the dictionary: every letter for a
    /// primitive substitution, the special letter otherwise.
    fn seeds(&self) -> Result<Vec<Letter>> {
        match self.is_primitive() {
            Primitivity::Primitive { .. } => Ok((0..self.alphabet.len() as Letter).collect()),
            Primitivity::NotPrimitive { .. } => match self.special_letter() {
                Some((a, _)) => Ok(vec![a]),
                None => Err(Error::UnsupportedSubstitution(
                    "not primitive and no letter a with S^k(a) = u a v covering the alphabet".into(),
                )),
            },
        }
    }

    /// Union of the factors of S^j(a) for seed letters a and 0 ≤ j ≤ `iterations`.
    pub fn factor_levels(&self, depth: usize, iterations: usize) -> Result<Vec<BTreeSet<Word>>> {
        let seeds = self.seeds()?;
        let mut levels = vec![BTreeSet::new(); depth];
        let mut current: Vec<Word> = seeds.iter().map(|&a| Word(vec![a])).collect();
        for j in 0..=iterations {
            merge(&mut levels, collect_factors(&current, depth));
            if j < iterations {
                current = current.iter().map(|w| self.apply(w)).collect::<Result<_>>()?;
            }
        }
        Ok(levels)
    }

    /// The truncated dictionary dic(S) at `depth`.
    ///
    /// Iterates until every seed image is longer than 2·depth and one further
    /// iteration leaves the accumulated level sets unchanged.
    pub fn dictionary(&self, depth: usize) -> Result<TruncatedDictionary> {
        Ok(self.dictionary_with_iterations(depth)?.0)
    }

    /// Same as [`dictionary`](Self::dictionary), also returning the iteration count used.
    pub fn dictionary_with_iterations(&self, depth: usize) -> Result<(TruncatedDictionary, usize)> {
        if depth == 0 {
            return Err(Error::Validation("depth must be >= 1".into()));
        }
        let seeds = self.seeds()?;
        let mut levels = vec![BTreeSet::new(); depth];
        let mut current: Vec<Word> = seeds.iter().map(|&a| Word(vec![a])).collect();
        merge(&mut levels, collect_factors(&current, depth));
        for j in 1..=MAX_ITERATIONS {
            let next: Vec<Word> = current.iter().map(|w| self.apply(w)).collect::<Result<_>>()?;
            if next.iter().map(Word::len).sum::<usize>() > MAX_WORD_LEN {
                break;
            }
            let changed = merge(&mut levels, collect_factors(&next, depth));
            let long_enough = next.iter().all(|w| w.len() > 2 * depth);
            current = next;
            if long_enough && !changed {
                let d = TruncatedDictionary::from_word_sets(self.alphabet.clone(), levels)?;
                return Ok((d, j));
            }
        }
        Err(Error::UnsupportedSubstitution("dictionary levels did not stabilize".into()))
    }

    pub fn to_json(&self) -> SubstitutionJson {
        SubstitutionJson {
            alphabet: self.alphabet.letters().to_vec(),
            rules: self
                .images
                .iter()
                .enumerate()
                .map(|(i, w)| (self.alphabet.symbol(i as Letter).to_string(), self.alphabet.render(w)))
                .collect(),
        }
    }

    pub fn from_json(j: &SubstitutionJson) -> Result<Self> {
        let alphabet = Alphabet::new(j.alphabet.iter().cloned())?;
        let rules: Vec<(&str, &str)> = j.rules.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
        Self::from_rules(alphabet, &rules)
    }
}

/// Wire form: `{"alphabet":["a","b"],"rules":{"a":"ab","b":"a"}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubstitutionJson {
    pub alphabet: Vec<String>,
    pub rules: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primitivity {
    Primitive { exponent: usize },
    NotPrimitive { bound: usize, zero_entry: (Letter, Letter) },
}

impl Primitivity {
    pub fn is_primitive(&self) -> bool {
        matches!(self, Self::Primitive { .. })
    }
}

/// Square non-negative integer matrix indexed by letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix(pub Vec<Vec<u64>>);

impl IncidenceMatrix {
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.0.len();
        let mut out = vec![vec![0u64; n]; n];
        for i in 0..n {
            for k in 0..n {
                let a = self.0[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i][j] += a * other.0[k][j];
                }
            }
        }
        Self(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let n = self.0.len();
        let mut acc = Self((0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

fn bool_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).any(|k| a[i][k] && b[k][j])).collect()).collect()
}

fn merge(into: &mut [BTreeSet<Word>], from: Vec<BTreeSet<Word>>) -> bool {
    let mut changed = false;
    for (dst, src) in into.iter_mut().zip(from) {
        for w in src {
            changed |= dst.insert(w);
        }
    }
    changed
}

/// Two-letter alphabet {a, b} standing for {+1, −1}.
pub fn grs_binary_alphabet() -> Alphabet {
    Alphabet::chars("ab").unwrap()
}

/// Expand pair letters: A = aa, B = ab, C = ba, D = bb.
pub fn flatten_grs(w: &Word) -> Result<Word> {
    let mut out = Vec::with_capacity(2 * w.len());
    for &l in w.letters() {
        if l > 3 {
            return Err(Error::ForeignLetter(format!("#{l}")));
        }
        out.push(l >> 1);
        out.push(l & 1);
    }
    Ok(Word(out))
}

pub fn flatten_grs_periodic(p: &PeriodicWord) -> Result<PeriodicWord> {
    PeriodicWord::from_block(flatten_grs(&p.aligned_block())?)
}

/// First `n_max` terms of a₀ = +1, a_{2n} = a_n, a_{2n+1} = (−1)ⁿ a_n,
/// with +1 ↦ `a` and −1 ↦ `b`.
pub fn grs_sequence(n_max: usize) -> Word {
    let mut signs: Vec<bool> = Vec::with_capacity(n_max);
    for i in 0..n_max {
        let v = if i == 0 {
            false
        } else if i % 2 == 0 {
            signs[i / 2]
        } else {
            let n = i / 2;
            signs[n] ^ (n % 2 == 1)
        };
        signs.push(v);
    }
    Word(signs.into_iter().map(Letter::from).collect())
}
