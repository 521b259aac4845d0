pub mod commands;
pub mod config;
pub mod output;

pub use commands::{cmd_analyze, cmd_evaluate, cmd_mine, cmd_optimize, seed_fixtures};
pub use config::{AlphabetSource, GeometrySource, MinSupport, RunConfig};
