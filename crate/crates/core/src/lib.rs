pub mod alphabet;
pub mod analysis;
pub mod classify;
pub mod cli;
pub mod error;
pub mod features;
pub mod ingest;
pub mod mining;
pub mod pipeline;
pub mod rng;
pub mod sequence;
pub mod synth;

pub use error::{Error, Result};
