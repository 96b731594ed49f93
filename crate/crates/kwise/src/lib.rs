//! File formats, output documents, the experiment harness and the
//! command-line front end for [`kwise_core`].

pub mod bench;
pub mod dot;
mod error;
pub mod format;
pub mod output;
pub mod parallel;

pub use error::{AppError, EXIT_GUARD, EXIT_INPUT, EXIT_INTERNAL};
