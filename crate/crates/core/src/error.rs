//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("symbol index {0} is not in the alphabet (size {1})")]
    SymbolNotInAlphabet(usize, usize),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("cannot parse word {input:?}: {reason}")]
    WordParse { input: String, reason: String },

    #[error("cannot parse group spec {input:?}: {reason}")]
    GroupSpecParse { input: String, reason: String },

    #[error("unsupported group parameter: {0}")]
    UnsupportedFamily(String),

    #[error("relator set is not symmetrized: {0}")]
    RelatorsNotSymmetrized(String),

    #[error("ball element cap exceeded: {count} elements at radius {radius} (cap {cap})")]
    BallBudget {
        count: usize,
        radius: u32,
        cap: usize,
    },

    #[error("out-of-ball query: element {0:?} is not in the ball")]
    OutOfBall(String),

    #[error("distance query left the certified region for {0:?}")]
    OutOfBallDistance(String),

    #[error("geodesic enumeration cap exceeded ({0} geodesics)")]
    GeodesicCap(usize),

    #[error("subgroup ball is empty")]
    EmptySubgroupBall,

    #[error("signature radius {k} too large for ball radius {radius}")]
    SignatureRadius { k: u32, radius: u32 },

    #[error("cone successor map inconsistent: {0} (signature radius too small)")]
    ConeSuccessor(String),

    #[error("word difference bound {0} exceeded; retry with a larger bound")]
    DifferenceBound(u32),

    #[error("automaton state budget exceeded ({count} states, cap {cap})")]
    StateBudget { count: usize, cap: usize 	},

    #[error("enumeration cap exceeded ({0} tuples)")]
    EnumerationCap(usize),

    #[error("operation requires a deterministic automaton")]
    NotDeterministic,

    #[error("automaton accepts the empty language")]
    EmptyLanguage,

    #[error("tape index {0} out of range for {1} tapes")]
    BadTape(usize, usize),

    #[error("padding violation: {0}")]
    PaddingViolation(String),

    #[error("invalid automaton encoding: {0}")]
    BadEncoding(String),

    #[error("subgroup ball radius {have} is insufficient (need {need})")]
    InsufficientSubgroupRadius { have: u32, need: u32 },

    #[error("coset has no representative inside the certified region")]
    EmptyCoset,

    #[error("coset escapes the measured region")]
    CosetEscapes,

    #[error("lemma 5A slack {slack} exceeds C1 = {c1}")]
    SlackExceedsC1 { slack: i64, c1: i64 },

    #[error("negative constant: {0}")]
    NegativeConstant(String),

    #[error("alphabet extension failed: {0}")]
    Extension(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
