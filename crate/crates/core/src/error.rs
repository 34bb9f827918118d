use thiserror::Error;

use crate::words::Family;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("generator {generator} is out of range for degree {n}")]
    GeneratorIndex { generator: String, n: usize },

    #[error("generator {generator} does not belong to the {family} alphabet")]
    GeneratorKind { generator: String, family: Family },

    #[error("degree {n} outside the supported range {min}..={max}")]
    Degree { n: usize, min: usize, max: usize },

    #[error("bar is only defined on origami alphabets")]
    BarUndefined,

    #[error("words are over different alphabets")]
    AlphabetMismatch,

    #[error("diagram sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("rule with empty left-hand side or identical sides")]
    InvalidRule,

    #[error("reduction exceeded {limit} steps; the system may not terminate")]
    StepBudget { limit: usize },

    #[error("rewriting system is not confluent")]
    NotConfluent,

    #[error("completion stopped: {0}")]
    CompletionLimit(String),

    #[error("enumeration stopped after {found} elements (cap {cap})")]
    EnumerationCap { found: usize, cap: usize },

    #[error("monoid is incomplete")]
    Incomplete,

    #[error("relation {lhs} = {rhs} is not preserved by the morphism")]
    RelationViolated { lhs: String, rhs: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
