//! Command-line front end for `horadam-core`: single terms, single identity
//! checks, and reproducible grid sweeps with JSON or CSV reports.

pub mod catalog;
pub mod cli;
pub mod config;
pub mod sweep;

pub use catalog::{CheckReport, Checker, Probe, Verdict, CATALOG};
pub use config::{ConfigError, Format, Init, SweepConfig};
pub use sweep::{SweepReport, Tally, Witness};
