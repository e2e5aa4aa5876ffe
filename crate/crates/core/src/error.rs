use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the symbolic, graph and spectral layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index range [{start}, {end}) out of bounds for word of length {len}")]
    Range { start: usize, end: usize, len: usize },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("letter {0:?} is not in the alphabet")]
    ForeignLetter(String),

    #[error("alphabets differ")]
    AlphabetMismatch,

    #[error("invalid dictionary: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidDictionary(Vec<DictionaryViolation>),

    #[error("depth {depth} too small: need at least {required}")]
    DepthTooSmall { depth: usize, required: usize },

    #[error("graph does not match dictionary at order {order}")]
    GraphMismatch { order: usize },

    #[error("GAP-graph of order {order} is not strongly connected ({} components)", .components.len())]
    NotStronglyConnected { order: usize, components: Vec<Vec<String>> },

    #[error("path error: {0}")]
    Path(String),

    #[error("unsupported substitution: {0}")]
    UnsupportedSubstitution(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid Hamiltonian: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidHamiltonian(Vec<crate::spectral::Violation>),

    #[error("work cap exceeded: {work} > {cap}")]
    WorkCap { work: usize, cap: usize },

    #[error("empty spectrum")]
    EmptySpectrum,

    #[error("singular transfer matrix: zero hopping at site {0}")]
    ZeroHopping(usize),

    #[error("ill-conditioned computation: {0}")]
    IllConditioned(String),

    #[error("internal consistency violated: {0}")]
    Internal(String),
}

/// A single axiom violation found while validating a truncated dictionary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DictionaryViolation {
    EmptyLevel { level: usize },
    WrongLength { word: String, level: usize },
    Heredity { word: String, missing: String },
    Extensibility { word: String },
    RightExtension { word: String },
    LeftExtension { word: String },
}

impl std::fmt::Display for DictionaryViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::EmptyLevel { level } => write!(f, "level {level} is empty"),
            Self::WrongLength { word, level } => write!(f, "word {word:?} stored at level {level}"),
            Self::Heredity { word, missing } => {
                write!(f, "heredity: factor {missing:?} of {word:?} is missing")
            }
            Self::Extensibility { word } => {
                write!(f, "extensibility: {word:?} has no two-sided extension")
            }
            Self::RightExtension { word } => {
                write!(f, "extensibility: {word:?} has no right extension")
            }
            Self::LeftExtension { word } => {
                write!(f, "extensibility: {word:?} has no left extension")
            }
        }
    }
}
