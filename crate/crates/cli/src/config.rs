use std::path::Path as FsPath;

use perapprox::approximation::{approximant_sequence, substitution_approximants};
use perapprox::dictionary::DictionaryJson;
use perapprox::spectral::{BlochOptions, HamiltonianJson, HamiltonianSpec, SpectrumMethod, DEFAULT_BRACKET_TOLERANCE, DEFAULT_GRID, DEFAULT_MERGE_TOLERANCE, DEFAULT_WORK_CAP};
use perapprox::substitution::{flatten_grs_periodic, grs_binary_alphabet, SubstitutionJson};
use perapprox::symbolic::{encode_delone, ColoredPointSet};
use perapprox::{Alphabet, Path, PeriodicWord, Substitution, TruncatedDictionary, Word};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub source: Source,
    pub depth: usize,
    /// Inclusive [k_min, k_max].
    #[serde(default = "default_k_range")]
    pub k_range: [usize; 2],
    #[serde(default)]
    pub hamiltonian: Option<HamiltonianJson>,
    #[serde(default = "default_grid")]
    pub grid_size: usize,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub method: MethodName,
    /// Seed path for substitution approximants S^k(η(γ)).
    #[serde(default)]
    pub seed_path: Option<Vec<String>>,
    /// Recode approximants before the spectral stage.
    #[serde(default)]
    pub flatten: Option<Flatten>,
    #[serde(default)]
    pub match_cap: Option<usize>,
}

fn default_k_range() -> [usize; 2] {
    [1, 4]
}

fn default_grid() -> usize {
    DEFAULT_GRID
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub merge: f64,
    pub bracket: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { merge: DEFAULT_MERGE_TOLERANCE, bracket: DEFAULT_BRACKET_TOLERANCE }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodName {
    #[default]
    Bloch,
    Discriminant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flatten {
    /// Golay–Rudin–Shapiro pair letters A,B,C,D to aa,ab,ba,bb.
    Grs,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Substitution(SubstitutionJson),
    PeriodicWord(PeriodicSource),
    EventuallyPeriodic(EventuallyPeriodicSource),
    WordSets(DictionaryJson),
    Delone(DeloneSource),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeriodicSource {
    pub alphabet: Vec<String>,
    pub block: String,
    #[serde(default)]
    pub origin: usize,
}

/// left^∞ · middle · right^∞
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventuallyPeriodicSource {
    pub alphabet: Vec<String>,
    pub left: String,
    #[serde(default)]
    pub middle: String,
    pub right: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeloneSource {
    pub points: Vec<f64>,
    pub colors: Vec<String>,
    #[serde(default)]
    pub r_min: Option<f64>,
    #[serde(default)]
    pub r_max: Option<f64>,
    pub gap_tolerance: f64,
}

pub fn load(path: &FsPath) -> Result<SystemConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<SystemConfig, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let pointer = pointer(e.path());
        CliError::Schema { pointer, message: e.into_inner().to_string() }
    })
}

fn pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

impl SystemConfig {
    pub fn k_min(&self) -> usize {
        self.k_range[0]
    }

    pub fn k_max(&self) -> usize {
        self.k_range[1]
    }

    /// Checks that do not need the source to be built.
    pub fn validate(&self) -> Result<(), CliError> {
        let [lo, hi] = self.k_range;
        if lo == 0 || lo > hi {
            return Err(CliError::Config(format!("k_range [{lo}, {hi}] must satisfy 1 <= k_min <= k_max")));
        }
        if self.depth < hi + 2 {
            return Err(CliError::Config(format!("depth {} must be at least k_max + 2 = {}", self.depth, hi + 2)));
        }
        if self.grid_size < 2 {
            return Err(CliError::Config("grid_size must be >= 2".into()));
        }
        if !(self.tolerances.merge >= 0.0) || !(self.tolerances.bracket > 0.0) {
            return Err(CliError::Config("tolerances must be non-negative (bracket positive)".into()));
        }
        if self.seed_path.is_some() && !matches!(self.source, Source::Substitution(_)) {
            return Err(CliError::Config("seed_path needs a substitution source".into()));
        }
        Ok(())
    }

    pub fn substitution(&self) -> Result<Option<Substitution>, CliError> {
        match &self.source {
            Source::Substitution(s) => Ok(Some(Substitution::from_json(s)?)),
            _ => Ok(None),
        }
    }

    pub fn dictionary(&self) -> Result<TruncatedDictionary, CliError> {
        let depth = self.depth;
        let d = match &self.source {
            Source::Substitution(s) => Substitution::from_json(s)?.dictionary(depth)?,
            Source::PeriodicWord(p) => {
                let a = Alphabet::new(p.alphabet.iter().cloned())?;
                let word = PeriodicWord::new(a.parse(&p.block)?, p.origin)?;
                TruncatedDictionary::from_periodic_word(a, &word, depth)?
            }
            Source::EventuallyPeriodic(e) => {
                let a = Alphabet::new(e.alphabet.iter().cloned())?;
                let (left, right) = (a.parse(&e.left)?, a.parse(&e.right)?);
                let mid = if e.middle.is_empty() { Word::empty() } else { a.parse(&e.middle)? };
                TruncatedDictionary::from_eventually_periodic(a, &left, &mid, &right, depth)?
            }
            Source::WordSets(j) => {
                let d = TruncatedDictionary::from_json(j)?;
                if d.depth() < depth {
                    return Err(CliError::Config(format!("word_sets depth {} below configured depth {depth}", d.depth())));
                }
                d.restrict_depth(depth)?
            }
            Source::Delone(s) => {
                let pts = ColoredPointSet { points: s.points.clone(), colors: s.colors.clone(), r_min: s.r_min, r_max: s.r_max };
                let enc = encode_delone(&pts, s.gap_tolerance)?;
                TruncatedDictionary::from_sample(enc.alphabet, &enc.word, depth)?
            }
        };
        Ok(d)
    }

    /// Approximants (k, η_k) over k_range: substitution iterates of the seed
    /// when a seed path is set, global-path approximants otherwise.
    pub fn approximants(&self, d: &TruncatedDictionary, seed_override: Option<&[String]>) -> Result<Vec<(usize, PeriodicWord)>, CliError> {
        let ks = self.k_min()..=self.k_max();
        let seed = seed_override.or(self.seed_path.as_deref());
        let words: Vec<(usize, PeriodicWord)> = match (seed, self.substitution()?) {
            (Some(edges), Some(s)) => {
                let path = parse_path(s.alphabet(), edges)?;
                substitution_approximants(&s, &path, ks, Some(self.depth))?.into_iter().map(|a| (a.k, a.word)).collect()
            }
            (Some(_), None) => return Err(CliError::Config("seed_path needs a substitution source".into())),
            (None, _) => approximant_sequence(d, ks, self.match_cap.unwrap_or(self.depth))?
                .into_iter()
                .map(|c| (c.k, c.approximant))
                .collect(),
        };
        match self.flatten {
            None => Ok(words),
            Some(Flatten::Grs) => words.into_iter().map(|(k, w)| Ok((k, flatten_grs_periodic(&w)?))).collect(),
        }
    }

    /// Alphabet seen by the Hamiltonian.
    pub fn spectral_alphabet(&self, d: &TruncatedDictionary) -> Alphabet {
        match self.flatten {
            Some(Flatten::Grs) => grs_binary_alphabet(),
            None => d.alphabet().clone(),
        }
    }

    pub fn hamiltonian(&self, alphabet: &Alphabet) -> Result<HamiltonianSpec, CliError> {
        let j = self.hamiltonian.as_ref().ok_or_else(|| CliError::Config("this command needs a hamiltonian".into()))?;
        Ok(HamiltonianSpec::from_json(j, alphabet)?)
    }

    pub fn method(&self, grid_override: Option<usize>, work_cap: Option<usize>) -> SpectrumMethod {
        match self.method {
            MethodName::Bloch => SpectrumMethod::Bloch(BlochOptions {
                grid: grid_override.unwrap_or(self.grid_size),
                merge_tolerance: self.tolerances.merge,
                work_cap: work_cap.unwrap_or(DEFAULT_WORK_CAP),
            }),
            MethodName::Discriminant => SpectrumMethod::Discriminant { tolerance: self.tolerances.bracket },
        }
    }
}

pub fn parse_path(alphabet: &Alphabet, edges: &[String]) -> Result<Path, CliError> {
    let words = edges.iter().map(|e| alphabet.parse(e.trim())).collect::<perapprox::Result<Vec<_>>>()?;
    Ok(Path::new(words)?)
}
