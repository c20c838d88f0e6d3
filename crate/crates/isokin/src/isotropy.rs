//! Isotropic point sets: verification, construction, and the rigid maps that
//! preserve isotropy.
//!
//! A set is isotropic when its second moment about the centroid is a positive
//! multiple of the 2×2 identity. The vertex set of any regular polygon is
//! isotropic, and isotropy survives unions of concentric isotropic sets,
//! rigid rotations about the centroid, and reflections about axes through the
//! centroid.

use crate::planar_geometry::{centroid, second_moment, GeometryError, PlanarPoint, PointSet};
use nalgebra::{Matrix2, Vector2};
use thiserror::Error;

/// Errors from isotropy constructions.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum IsotropyError {
    /// A regular polygon needs at least three vertices.
    #[error("DegeneratePolygon: a regular polygon needs n >= 3 vertices, got {n}")]
    DegeneratePolygon {
        /// Requested vertex count.
        n: usize,
    },
    /// Union requires both sets to share one centroid.
    #[error("CentroidMismatch: centroids differ by {separation} (tol {tol})")]
    CentroidMismatch {
        /// Euclidean distance between the two centroids.
        separation: f64,
        /// Tolerance in effect.
        tol: f64,
    },
    /// Underlying point-set error.
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Verdict of [`check_isotropic_set`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsotropyReport {
    /// True when the second moment is `σ²·1₂` within tolerance with `σ > 0`.
    pub is_isotropic: bool,
    /// `tr(M)/2`, the common eigenvalue of `M` when the set is isotropic.
    pub sigma_squared: f64,
    /// Distance of `M` from its nearest isotropic matrix `(tr(M)/2)·1₂`,
    /// measured in the column-normalized Frobenius norm and divided by
    /// `max(tr(M), 1)` so the figure is scale-independent.
    pub deviation: f64,
}

/// Tests whether the second moment of `set` is isotropic within `tol`.
///
/// Sets whose points all coincide with the centroid have `M = 0`; they are
/// reported non-isotropic because the common singular value must be strictly
/// positive.
pub fn check_isotropic_set(set: &PointSet, tol: f64) -> IsotropyReport {
    let m = second_moment(set);
    let sigma_squared = m.trace() / 2.0;
    let diff = m - Matrix2::identity() * sigma_squared;
    let norm = (diff.iter().map(|v| v * v).sum::<f64>() / 2.0).sqrt();
    let deviation = norm / m.trace().max(1.0);
    IsotropyReport {
        is_isotropic: deviation <= tol && sigma_squared > 0.0,
        sigma_squared,
        deviation,
    }
}

/// Vertices of a regular polygon: `center + R·(cos(phase + 2πk/n),
/// sin(phase + 2πk/n))` for `k = 0..n−1`.
///
/// The result is isotropic for every `n ≥ 3`, with `σ² = nR²/2`.
pub fn regular_polygon(
    n: usize,
    circumradius: f64,
    phase: f64,
    center: PlanarPoint,
) -> Result<PointSet, IsotropyError> {
    if n < 3 {
        return Err(IsotropyError::DegeneratePolygon { n });
    }
    let c = center.to_vector();
    let points = (0..n)
        .map(|k| {
            let angle = phase + 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            PlanarPoint::from_vector(
                c + circumradius * Vector2::new(angle.cos(), angle.sin()),
                center.unit(),
            )
        })
        .collect();
    Ok(PointSet::new(points)?)
}

/// Concatenates two sets sharing one centroid (within `tol`).
///
/// When both inputs are isotropic the union is isotropic as well. Duplicate
/// points are kept.
pub fn union_sets(s1: &PointSet, s2: &PointSet, tol: f64) -> Result<PointSet, IsotropyError> {
    let separation = (centroid(s1).to_vector() - centroid(s2).to_vector()).norm();
    if separation > tol {
        return Err(IsotropyError::CentroidMismatch { separation, tol });
    }
    let mut points = s1.points().to_vec();
    points.extend_from_slice(s2.points());
    Ok(PointSet::new(points)?)
}

/// Rotates the set rigidly about its centroid.
///
/// Preserves the isotropy verdict and `σ²`; the second moment transforms as
/// `R·M·Rᵀ`.
pub fn rotate_set(set: &PointSet, angle: f64) -> PointSet {
    let c = centroid(set).to_vector();
    let r = nalgebra::Rotation2::new(angle);
    set.map_vectors(|p| c + r * (p - c))
}

/// Reflects the set about the line through its centroid at `axis_angle`.
///
/// Like rotation, a reflection about the centroid preserves the isotropy
/// verdict.
pub fn reflect_set(set: &PointSet, axis_angle: f64) -> PointSet {
    let c = centroid(set).to_vector();
    let (s2, c2) = (2.0 * axis_angle).sin_cos();
    let h = Matrix2::new(c2, s2, s2, -c2);
    set.map_vectors(|p| c + h * (p - c))
}
