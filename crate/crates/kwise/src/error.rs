use std::io;
use std::path::PathBuf;

use thiserror::Error;

use crate::format::ParseError;

/// Process exit codes.
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_GUARD: u8 = 3;
pub const EXIT_INTERNAL: u8 = 4;

#[derive(Debug, Error)]
pub enum AppError {
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("invalid ranking: {}", .0.message)]
    Ranking(ParseError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Core(#[from] kwise_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("instance {instance} of cell m={m}, k={k}, phi={phi}: {mode} found optimum {found}, {reference_mode} found {expected}")]
    ModeDisagreement {
        m: usize,
        k: usize,
        phi: f64,
        instance: usize,
        mode: String,
        found: u64,
        reference_mode: String,
        expected: u64,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl AppError {
    pub fn exit_code(&self) -> u8 {
        use kwise_core::Error as E;
        match self {
            AppError::Core(
                E::TooManyCandidates { .. }
                | E::EnumerationBudget { .. }
                | E::ExponentialDigraph { .. }
                | E::ComponentTooLarge { .. }
                | E::Overflow
                | E::Interrupted,
            ) => EXIT_GUARD,
            AppError::ModeDisagreement { .. } => EXIT_INTERNAL,
            AppError::Csv(_) | AppError::Json(_) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        }
    }
}
