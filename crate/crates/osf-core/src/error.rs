use thiserror::Error;

/// Error type shared by the whole finite engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    Dimension {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("invalid finite space: {0}")]
    InvalidSpace(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("filtration is not refinement-monotone between t={t} and t={}", t + 1)]
    NotMonotone { t: usize },

    #[error("process is not adapted at t={t} (outcomes {a} and {b} share a block but differ)")]
    NotAdapted { t: usize, a: usize, b: usize },

    #[error("random time is not a stopping time: {{r <= {t}}} is not measurable at t={t}")]
    NotStoppingTime { t: usize },

    #[error("process is not nondecreasing at t={t}, outcome {outcome}")]
    NotIncreasing { t: usize, outcome: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("rank index out of range: j={j}, k={k}")]
    RankOutOfRange { j: usize, k: usize },

    #[error("parametered process has no slice at parameter {0}")]
    ParamOutOfRange(String),

    #[error("mark symbol {0:?} is not in the declared alphabet")]
    UnknownMark(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
