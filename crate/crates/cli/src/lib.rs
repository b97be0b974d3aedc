//! Command-line front end for `cuspcert-core`: JSON configuration, text and
//! JSON reports, slope atlases with SVG output.

pub mod cli;
pub mod config;
pub mod error;
pub mod render;
pub mod report;
pub mod svg;

pub use cli::{execute, Cli, ExitStatus, Outcome};
pub use config::{load_config, parse_config, Manifold, ManifoldConfig};
pub use error::{ErrorCode, InputError};
