//! The JSON design-document format (version "1") and its parsing helpers.

use crate::error::CliError;
use isokin::chains::Ordering;
use isokin::planar_geometry::{PlanarPoint, PointSet, Unit};
use serde::{Deserialize, Serialize};
use std::path::Path;

pub const FORMAT_VERSION: &str = "1";

/// A point set plus optional orderings, chains, and analysis results.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DesignDocument {
    pub version: String,
    pub point_set: PointSetDoc,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub orderings: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chains: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub results: Vec<ResultRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PointSetDoc {
    pub unit: String,
    pub points: Vec<[f64; 2]>,
}

/// A stored analysis record.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResultRecord {
    Conditioning {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ordering: Option<Vec<usize>>,
        lambda: f64,
        conditioning_length: f64,
        residual_distance: f64,
        objective_z: f64,
    },
    CharacteristicLength {
        chain: Vec<f64>,
        characteristic_length: f64,
        best_posture: Vec<f64>,
        best_distance: f64,
        converged: bool,
        starts_used: usize,
    },
}

impl DesignDocument {
    pub fn from_point_set(set: &PointSet) -> Self {
        Self {
            version: FORMAT_VERSION.to_string(),
            point_set: PointSetDoc {
                unit: set.unit().to_string(),
                points: set.points().iter().map(|p| [p.x(), p.y()]).collect(),
            },
            orderings: Vec::new(),
            chains: Vec::new(),
            results: Vec::new(),
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let raw = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let doc: DesignDocument = serde_json::from_str(&raw).map_err(|e| {
            CliError::validation("InvalidDocument", format!("{}: {e}", path.display()))
        })?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("document serializes");
        text.push('\n');
        text
    }

    /// Version and cross-section arity checks.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.version != FORMAT_VERSION {
            return Err(CliError::validation(
                "UnsupportedVersion",
                format!(
                    "document version {:?} is not supported (expected {:?})",
                    self.version, FORMAT_VERSION
                ),
            ));
        }
        let n = self.point_set.points.len();
        for ordering in &self.orderings {
            if ordering.len() != n {
                return Err(CliError::validation(
                    "ArityMismatch",
                    format!("ordering {ordering:?} does not match the {n}-point set"),
                ));
            }
        }
        for chain in &self.chains {
            if chain.len() != n {
                return Err(CliError::validation(
                    "ArityMismatch",
                    format!(
                        "chain with {} links does not match the {n}-point set",
                        chain.len()
                    ),
                ));
            }
        }
        for record in &self.results {
            let arity_ok = match record {
                ResultRecord::Conditioning { ordering, .. } => {
                    ordering.as_ref().is_none_or(|o| o.len() == n)
                }
                ResultRecord::CharacteristicLength {
                    chain,
                    best_posture,
                    ..
                } => chain.len() == n && best_posture.len() == n,
            };
            if !arity_ok {
                return Err(CliError::validation(
                    "ArityMismatch",
                    "a result record does not match the point-set arity".to_string(),
                ));
            }
        }
        Ok(())
    }

    pub fn point_set(&self) -> Result<PointSet, CliError> {
        let unit = parse_unit(&self.point_set.unit)?;
        let points = self
            .point_set
            .points
            .iter()
            .map(|&[x, y]| PlanarPoint::new(x, y, unit))
            .collect();
        Ok(PointSet::new(points)?)
    }

    pub fn ordering_list(&self) -> Result<Vec<Ordering>, CliError> {
        self.orderings
            .iter()
            .map(|o| Ordering::from_one_based(o).map_err(CliError::from))
            .collect()
    }
}

pub fn parse_unit(text: &str) -> Result<Unit, CliError> {
    match text {
        "length" => Ok(Unit::Length),
        "dimensionless" => Ok(Unit::Dimensionless),
        other => Err(CliError::validation(
            "InvalidDocument",
            format!("unknown unit {other:?} (expected \"length\" or \"dimensionless\")"),
        )),
    }
}

/// Parses an angle with an optional `deg`/`rad` suffix; bare numbers are
/// radians.
pub fn parse_angle(text: &str) -> Result<f64, CliError> {
    let trimmed = text.trim();
    let (value, degrees) = if let Some(stripped) = trimmed.strip_suffix("deg") {
        (stripped, true)
    } else if let Some(stripped) = trimmed.strip_suffix("rad") {
        (stripped, false)
    } else {
        (trimmed, false)
    };
    let parsed: f64 = value.trim().parse().map_err(|_| {
        CliError::validation("InvalidAngle", format!("cannot parse angle {text:?}"))
    })?;
    Ok(if degrees { parsed.to_radians() } else { parsed })
}

/// Parses `x,y` into a point with the given unit.
pub fn parse_center(text: &str, unit: Unit) -> Result<PlanarPoint, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::validation(
            "InvalidCenter",
            format!("expected x,y, got {text:?}"),
        ));
    }
    let x: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| CliError::validation("InvalidCenter", format!("cannot parse {text:?}")))?;
    let y: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| CliError::validation("InvalidCenter", format!("cannot parse {text:?}")))?;
    Ok(PlanarPoint::new(x, y, unit))
}

/// Parses a one-based ordering like `1,3,2,4`.
pub fn parse_ordering(text: &str) -> Result<Ordering, CliError> {
    let indices: Result<Vec<usize>, _> = text
        .split(',')
        .map(|part| part.trim().parse::<usize>())
        .collect();
    let indices = indices.map_err(|_| {
        CliError::validation("InvalidOrdering", format!("cannot parse ordering {text:?}"))
    })?;
    Ok(Ordering::from_one_based(&indices)?)
}

/// Parses a comma-separated list of angles, each accepting `deg`/`rad`.
pub fn parse_angle_list(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',').map(parse_angle).collect()
}
