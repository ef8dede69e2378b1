//! Configuration parsing and dispatch for the `hsie` command-line tool.

pub mod config;
pub mod run;

pub use config::{parse_config, Command, ConfigError, RunConfig};
pub use run::{exit_code, run};
