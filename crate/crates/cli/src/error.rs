//! Input errors with stable codes.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ErrorCode {
    #[serde(rename = "io_error")]
    Io,
    /// Not valid JSON.
    #[serde(rename = "parse_error")]
    Parse,
    /// Valid JSON that does not follow the config schema.
    #[serde(rename = "schema_violation")]
    SchemaViolation,
    #[serde(rename = "degenerate_lattice")]
    DegenerateLattice,
    #[serde(rename = "non_primitive_slope")]
    NonPrimitiveSlope,
    /// A command-line value or a computation the input makes impossible.
    #[serde(rename = "invalid_argument")]
    InvalidArgument,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::Io => "io_error",
            ErrorCode::Parse => "parse_error",
            ErrorCode::SchemaViolation => "schema_violation",
            ErrorCode::DegenerateLattice => "degenerate_lattice",
            ErrorCode::NonPrimitiveSlope => "non_primitive_slope",
            ErrorCode::InvalidArgument => "invalid_argument",
        }
    }
}

/// An error attributable to the input. Always exits with status 2.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputError {
    pub code: ErrorCode,
    pub message: String,
    /// Field path such as `cusps[1].translations`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

impl InputError {
    pub fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
            path: None,
            line: None,
            column: None,
        }
    }

    pub fn at(mut self, path: impl Into<String>) -> Self {
        self.path = Some(path.into());
        self
    }

    pub fn with_position(mut self, line: usize, column: usize) -> Self {
        self.line = Some(line);
        self.column = Some(column);
        self
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}]: {}", self.code.as_str(), self.message)?;
        if let Some(path) = &self.path {
            write!(f, " (field `{path}`)")?;
        }
        if let (Some(line), Some(col)) = (self.line, self.column) {
            write!(f, " at line {line}, column {col}")?;
        }
        Ok(())
    }
}

impl std::error::Error for InputError {}
