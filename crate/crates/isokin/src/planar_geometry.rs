//! Planar point sets and their moment quantities.
//!
//! A [`PointSet`] is an ordered list of planar points sharing one unit tag.
//! This module computes the quantities everything else is built on: the
//! centroid, the second moment about the centroid, the root-mean-square
//! distance to the centroid, and the geometric moment of inertia (the inertia
//! tensor of unit masses placed at the points, with the plane embedded at
//! `z = 0`).

use nalgebra::{Matrix2, Matrix3, Vector2, Vector3};
use thiserror::Error;

/// Default absolute tolerance for scalar comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Unit tag carried by points and point sets.
///
/// Tags are metadata checked at API boundaries; matrix-valued quantities are
/// unit-agnostic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Unit {
    /// Pure numbers, used for model sets.
    Dimensionless,
    /// Physical lengths, used for manipulator geometry.
    Length,
}

impl std::fmt::Display for Unit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Unit::Dimensionless => write!(f, "dimensionless"),
            Unit::Length => write!(f, "length"),
        }
    }
}

/// Errors from point-set construction and moment computations.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum GeometryError {
    /// A point set must contain at least one point.
    #[error("EmptySet: a point set must contain at least one point")]
    EmptySet,
    /// All points of a set must share one unit tag.
    #[error("MixedUnits: point {index} is {found} but the set is {expected}")]
    MixedUnits {
        /// Zero-based index of the offending point.
        index: usize,
        /// Unit of the first point.
        expected: Unit,
        /// Unit of the offending point.
        found: Unit,
    },
    /// Coordinates must be finite.
    #[error("NonFiniteCoordinate: point {index} has a NaN or infinite coordinate")]
    NonFiniteCoordinate {
        /// Zero-based index of the offending point.
        index: usize,
    },
}

/// A point of the plane with a unit tag.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanarPoint {
    x: f64,
    y: f64,
    unit: Unit,
}

impl PlanarPoint {
    /// New point with an explicit unit tag.
    pub fn new(x: f64, y: f64, unit: Unit) -> Self {
        Self { x, y, unit }
    }

    /// New length-valued point.
    pub fn length(x: f64, y: f64) -> Self {
        Self::new(x, y, Unit::Length)
    }

    /// New dimensionless point.
    pub fn dimensionless(x: f64, y: f64) -> Self {
        Self::new(x, y, Unit::Dimensionless)
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    /// Coordinates as a column vector, dropping the unit tag.
    pub fn to_vector(self) -> Vector2<f64> {
        Vector2::new(self.x, self.y)
    }

    /// Point from a column vector and a unit tag.
    pub fn from_vector(v: Vector2<f64>, unit: Unit) -> Self {
        Self::new(v.x, v.y, unit)
    }
}

/// An ordered, non-empty set of planar points sharing one unit tag.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    points: Vec<PlanarPoint>,
    unit: Unit,
}

impl PointSet {
    /// Builds a set, rejecting empty input, mixed unit tags, and non-finite
    /// coordinates.
    pub fn new(points: Vec<PlanarPoint>) -> Result<Self, GeometryError> {
        let first = points.first().ok_or(GeometryError::EmptySet)?;
        let unit = first.unit();
        for (index, p) in points.iter().enumerate() {
            if !(p.x().is_finite() && p.y().is_finite()) {
                return Err(GeometryError::NonFiniteCoordinate { index });
            }
            if p.unit() != unit {
                return Err(GeometryError::MixedUnits {
                    index,
                    expected: unit,
                    found: p.unit(),
                });
            }
        }
        Ok(Self { points, unit })
    }

    /// Set from raw coordinate pairs, all tagged with `unit`.
    pub fn from_coords(coords: &[(f64, f64)], unit: Unit) -> Result<Self, GeometryError> {
        Self::new(
            coords
                .iter()
                .map(|&(x, y)| PlanarPoint::new(x, y, unit))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        // construction guarantees non-emptiness
        false
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn points(&self) -> &[PlanarPoint] {
        &self.points
    }

    /// Coordinates as column vectors, in order.
    pub fn vectors(&self) -> Vec<Vector2<f64>> {
        self.points.iter().map(|p| p.to_vector()).collect()
    }

    /// Applies `f` to every coordinate vector, keeping order and unit tag.
    pub fn map_vectors(&self, mut f: impl FnMut(Vector2<f64>) -> Vector2<f64>) -> Self {
        Self {
            points: self
                .points
                .iter()
                .map(|p| PlanarPoint::from_vector(f(p.to_vector()), self.unit))
                .collect(),
            unit: self.unit,
        }
    }
}

/// Rotates a point by +90° about the origin: `(x, y) ↦ (−y, x)`.
///
/// This is the linear map used to build Jacobian columns; applying it four
/// times is the identity.
pub fn rotate90(p: &PlanarPoint) -> PlanarPoint {
    PlanarPoint::new(-p.y(), p.x(), p.unit())
}

/// `(x, y) ↦ (−y, x)` on raw vectors.
pub fn rotate90_vector(v: Vector2<f64>) -> Vector2<f64> {
    Vector2::new(-v.y, v.x)
}

/// Centroid of the set: the mean of the position vectors.
pub fn centroid(set: &PointSet) -> PlanarPoint {
    let n = set.len() as f64;
    let sum: Vector2<f64> = set.points().iter().map(|p| p.to_vector()).sum();
    PlanarPoint::from_vector(sum / n, set.unit())
}

/// Second moment of the set about its centroid:
/// `M = Σ (p_k − c)(p_k − c)ᵀ`.
///
/// Symmetric positive semidefinite by construction.
pub fn second_moment(set: &PointSet) -> Matrix2<f64> {
    let c = centroid(set).to_vector();
    let mut m = Matrix2::zeros();
    for p in set.points() {
        let u = p.to_vector() - c;
        m += u * u.transpose();
    }
    m
}

/// Root-mean-square distance of the points from their centroid,
/// `sqrt(tr(M)/n)`.
pub fn d_rms(set: &PointSet) -> f64 {
    (second_moment(set).trace() / set.len() as f64).sqrt()
}

/// Cross-product matrix of a 3-vector: the skew-symmetric `P` with
/// `P·w = v × w` for every `w`.
pub fn cross_product_matrix(v: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, v.x, 0.0)
}

/// Geometric moment of inertia of the set about its centroid, with the plane
/// embedded at `z = 0`:
/// `I = Σ [‖p_k − c‖²·1₃ − (p_k − c)(p_k − c)ᵀ]`.
///
/// Equals `tr(M₃)·1₃ − M₃` for the embedded second moment `M₃`, and
/// `−Σ P_k²` for the cross-product matrices `P_k` of `p_k − c`.
pub fn geometric_inertia(set: &PointSet) -> Matrix3<f64> {
    let c = centroid(set).to_vector();
    let mut i = Matrix3::zeros();
    for p in set.points() {
        let u = embed3(p.to_vector() - c);
        i += u.norm_squared() * Matrix3::identity() - u * u.transpose();
    }
    i
}

/// Embeds a planar vector at `z = 0`.
pub fn embed3(v: Vector2<f64>) -> Vector3<f64> {
    Vector3::new(v.x, v.y, 0.0)
}

/// Embeds a 2×2 matrix as the upper-left block of a 3×3 zero matrix.
pub fn embed_matrix2(m: &Matrix2<f64>) -> Matrix3<f64> {
    Matrix3::new(
        m[(0, 0)],
        m[(0, 1)],
        0.0,
        m[(1, 0)],
        m[(1, 1)],
        0.0,
        0.0,
        0.0,
        0.0,
    )
}
