//! Verification harness for `dichroma-core`: DGF input and output, bound
//! checks on single instances, counterexample hunting, and the pieces the
//! `dichroma` command line is built from.

pub mod dgf;
pub mod hunt;
pub mod verify;

use thiserror::Error;

pub use dgf::{emit_dgf, emit_json, parse_dgf, ParseError};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] dichroma_core::Error),
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("instance has {n} vertices but exact verification is capped at {cap}")]
    InstanceTooLarge { n: usize, cap: usize },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Worker count from `DICHROMA_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var("DICHROMA_THREADS").ok()?.trim().parse().ok().filter(|&t| t > 0)
}

/// A pool honouring [`thread_cap`].
pub fn thread_pool() -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(t) = thread_cap() {
        b = b.num_threads(t);
    }
    b.build().expect("thread pool")
}
