//! Argument parsing and command dispatch.

use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use cuspcert_core::{RegionKind, TruncationHeight};

use crate::config::load_config;
use crate::error::{ErrorCode, InputError};
use crate::render::{to_json, to_text, Style};
use crate::report::{run_areas, run_atlas, run_certify, run_tube_check, Document};
use crate::svg::atlas_svg;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum ExitStatus {
    /// Every requested certification passed.
    Certified = 0,
    /// At least one certification failed or was inapplicable.
    NotCertified = 1,
    /// Unreadable, malformed or inconsistent input.
    InputError = 2,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    R1,
    R2,
}

#[derive(Debug, Parser)]
#[command(
    name = "cuspcert",
    version,
    about = "Certify Dehn fillings and tubings from cusp geometry"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write an SVG diagram (atlas only).
    #[arg(long, global = true, value_name = "PATH")]
    pub svg: Option<PathBuf>,
    /// Evaluate fillings in parallel; output order is unchanged.
    #[arg(long, global = true)]
    pub parallel: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the filling and arc-chain criteria for every entry of a config.
    Certify { config: PathBuf },
    /// List the slopes of one cusp excluded from filling.
    Atlas {
        config: PathBuf,
        #[arg(long)]
        cusp: usize,
        /// Length bound; accepts `12pi`-style multiples of pi.
        #[arg(long, value_parser = parse_threshold, allow_hyphen_values = true)]
        threshold: f64,
    },
    /// Compare closed-form region areas with numerical quadrature.
    Areas {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        /// Truncation height, or `inf`.
        #[arg(long, value_parser = parse_height, allow_hyphen_values = true)]
        b: TruncationHeight,
    },
    /// Run the tubing criteria for every tubing of a config.
    TubeCheck { config: PathBuf },
}

pub fn parse_threshold(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let value = match t.strip_suffix("pi") {
        Some("") => Ok(PI),
        Some(m) => m.trim().parse::<f64>().map(|m| m * PI),
        None => t.parse::<f64>(),
    };
    value.map_err(|e| format!("invalid threshold `{s}`: {e}"))
}

fn parse_height(s: &str) -> Result<TruncationHeight, String> {
    s.parse::<TruncationHeight>().map_err(|e| e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: ExitStatus,
    pub stdout: String,
    pub stderr: String,
}

fn document(cli: &Cli) -> Result<Document, InputError> {
    if cli.svg.is_some() && !matches!(cli.command, Command::Atlas { .. }) {
        return Err(InputError::new(
            ErrorCode::InvalidArgument,
            "--svg is only supported by `atlas`",
        ));
    }
    match &cli.command {
        Command::Certify { config } => run_certify(&load_config(config)?, cli.parallel).map(Document::Certify),
        Command::Atlas {
            config,
            cusp,
            threshold,
        } => {
            let doc = run_atlas(&load_config(config)?, *cusp, *threshold)?;
            if let Some(path) = &cli.svg {
                std::fs::write(path, atlas_svg(&doc))
                    .map_err(|e| InputError::new(ErrorCode::Io, format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(Document::Atlas(doc))
        }
        Command::Areas { kind, a, b } => {
            let kind = match kind {
                Kind::R1 => RegionKind::R1,
                Kind::R2 => RegionKind::R2,
            };
            run_areas(kind, *a, *b).map(Document::Areas)
        }
        Command::TubeCheck { config } => run_tube_check(&load_config(config)?).map(Document::TubeCheck),
    }
}

/// Runs a parsed command line; `color` enables ANSI status tags in text.
pub fn execute(cli: &Cli, color: bool) -> Outcome {
    match document(cli) {
        Ok(doc) => {
            let stdout = match cli.format {
                Format::Text => to_text(&doc, Style { color }),
                Format::Json => to_json(&doc) + "\n",
            };
            let status = if doc.certified() {
                ExitStatus::Certified
            } else {
                ExitStatus::NotCertified
            };
            Outcome {
                status,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let stderr = match cli.format {
                Format::Text => format!("{e}\n"),
                Format::Json => serde_json::json!({ "error": e }).to_string() + "\n",
            };
            Outcome {
                status: ExitStatus::InputError,
                stdout: String::new(),
                stderr,
            }
        }
    }
}
