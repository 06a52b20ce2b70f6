//! Name-addressed identity checks, scalar evaluation and batch suites behind the
//! `mvlaguerre` command line tool.

pub mod cli;
pub mod eval;
pub mod params;
pub mod registry;
pub mod suite;

pub use params::Params;
pub use registry::{default_tolerance, evaluate, sample, validate, QuadratureOverride, RunOptions, SeriesOverride, IDENTITIES};
