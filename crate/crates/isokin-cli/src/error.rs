//! Error type of the CLI with the stable exit-code contract:
//! 1 = I/O, 2 = validation, 3 = numeric/domain.

use isokin::{AlgebraError, ChainError, ConditioningError, GeometryError, IsotropyError};
use std::path::Path;

pub const EXIT_IO: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

/// A classified error: a stable machine-readable name, a human message, and
/// the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub name: &'static str,
    pub message: String,
    pub exit_code: i32,
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        let name = if source.kind() == std::io::ErrorKind::NotFound {
            "FileNotFound"
        } else {
            "IoError"
        };
        Self {
            name,
            message: format!("{}: {}", path.display(), source),
            exit_code: EXIT_IO,
        }
    }

    pub fn validation(name: &'static str, message: impl Into<String>) -> Self {
        Self {
            name,
            message: message.into(),
            exit_code: EXIT_VALIDATION,
        }
    }

    pub fn domain(name: &'static str, message: impl Into<String>) -> Self {
        Self {
            name,
            message: message.into(),
            exit_code: EXIT_DOMAIN,
        }
    }

    /// The machine-readable JSON object printed on stderr.
    pub fn to_json(&self) -> String {
        serde_json::json!({
            "error": self.name,
            "exit_code": self.exit_code,
            "message": self.message,
        })
        .to_string()
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        let name = match &e {
            GeometryError::EmptySet => "EmptySet",
            GeometryError::MixedUnits { .. } => "MixedUnits",
            GeometryError::NonFiniteCoordinate { .. } => "NonFiniteCoordinate",
        };
        CliError::validation(name, e.to_string())
    }
}

impl From<IsotropyError> for CliError {
    fn from(e: IsotropyError) -> Self {
        match e {
            IsotropyError::DegeneratePolygon { .. } => {
                CliError::validation("DegeneratePolygon", e.to_string())
            }
            IsotropyError::CentroidMismatch { .. } => {
                CliError::validation("CentroidMismatch", e.to_string())
            }
            IsotropyError::Geometry(inner) => inner.into(),
        }
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        match e {
            ChainError::DegenerateLink { .. } => CliError::domain("DegenerateLink", e.to_string()),
            ChainError::EnumerationTooLarge { .. } => {
                CliError::validation("EnumerationTooLarge", e.to_string())
            }
            ChainError::ArityMismatch { .. } => {
                CliError::validation("ArityMismatch", e.to_string())
            }
            ChainError::TooFewPoints { .. } => CliError::validation("TooFewPoints", e.to_string()),
            ChainError::InvalidOrdering { .. } => {
                CliError::validation("InvalidOrdering", e.to_string())
            }
            ChainError::InvalidLinkLength { .. } => {
                CliError::validation("InvalidLinkLength", e.to_string())
            }
            ChainError::Geometry(inner) => inner.into(),
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::ShapeMismatch(_) => CliError::validation("ShapeMismatch", e.to_string()),
            AlgebraError::NotIsotropic { .. } => CliError::domain("NotIsotropic", e.to_string()),
            AlgebraError::SingularMatrix(_) => CliError::domain("SingularMatrix", e.to_string()),
            AlgebraError::NotAModelSet(_) => CliError::domain("NotAModelSet", e.to_string()),
            AlgebraError::NonpositiveLength(_) => {
                CliError::validation("NonpositiveLength", e.to_string())
            }
            AlgebraError::AlreadyHomogeneous => {
                CliError::validation("AlreadyHomogeneous", e.to_string())
            }
            AlgebraError::Geometry(inner) => inner.into(),
        }
    }
}

impl From<ConditioningError> for CliError {
    fn from(e: ConditioningError) -> Self {
        match e {
            ConditioningError::ShapeMismatch { .. } => {
                CliError::validation("ShapeMismatch", e.to_string())
            }
            ConditioningError::DegenerateConfiguration => {
                CliError::domain("DegenerateConfiguration", e.to_string())
            }
            ConditioningError::NonpositiveAlignment { .. } => {
                CliError::domain("NonpositiveAlignment", e.to_string())
            }
            ConditioningError::NoValidPosture => CliError::domain("NoValidPosture", e.to_string()),
            ConditioningError::Chain(inner) => inner.into(),
            ConditioningError::Algebra(inner) => inner.into(),
        }
    }
}
