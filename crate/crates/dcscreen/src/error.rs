//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by dataset ingestion, screening, and the simulation harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    /// A cell that does not parse as a finite number. `row` counts data rows
    /// (header excluded) and `col` counts CSV columns, both 1-based.
    #[error("non-numeric cell at row {row}, column {col}")]
    NonNumericCell { row: usize, col: usize },

    #[error("row {row} has {got} fields, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        got: usize,
    },

    #[error("dataset has no predictor columns")]
    EmptyPredictors,

    #[error("need at least {min} rows, got {got}")]
    TooFewRows { min: usize, got: usize },

    #[error("row-count mismatch: {left} rows vs {right} rows")]
    RowCountMismatch { left: usize, right: usize },

    /// Non-finite value in an in-memory matrix (row/col are 0-based).
    #[error("non-finite value in {matrix} at ({row}, {col})")]
    NonFiniteValue {
        matrix: &'static str,
        row: usize,
        col: usize,
    },

    #[error("invalid column spec `{spec}`: {reason}")]
    InvalidColumnSpec { spec: String, reason: String },

    #[error("invalid group spec `{spec}`: {reason}")]
    InvalidGroupSpec { spec: String, reason: String },

    #[error("method requires a univariate response, got q = {q}")]
    UnsupportedResponse { q: usize },

    #[error("method does not support grouped predictors")]
    UnsupportedGrouping,

    #[error("selection cutoff d = {d} exceeds the number of feature blocks ({blocks})")]
    CutoffTooLarge { d: usize, blocks: usize },

    #[error("no utilities to rank")]
    EmptyUtilities,

    #[error("invalid utilities: {0}")]
    InvalidUtilities(String),

    #[error("invalid selection rule: {0}")]
    InvalidRule(String),

    #[error("correlation must lie in [-1, 1], got {0}")]
    InvalidRho(f64),

    #[error("invalid model spec: {0}")]
    InvalidModelSpec(String),

    #[error("ranking does not contain active block {block}")]
    ActiveBlockMissing { block: usize },

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("method `{method}` cannot run on model {model}: {reason}")]
    IncompatibleMethod {
        method: String,
        model: String,
        reason: String,
    },

    #[error("unknown preset `{name}`; valid presets are:\n{valid}")]
    UnknownPreset { name: String, valid: String },

    #[error("convergence grid needs at least 2 sample sizes")]
    GridTooSmall,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// CLI exit code for this error: 2 for usage/configuration mistakes,
    /// 1 for data and validation failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::UnknownPreset { .. }
            | Error::GridTooSmall
            | Error::InvalidConfig(_)
            | Error::InvalidRule(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
