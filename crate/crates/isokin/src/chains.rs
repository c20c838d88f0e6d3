//! Serial kinematic chains induced by ordered point sets.
//!
//! Numbering the `n` points of a set defines a planar chain of `n` revolute
//! joints: joint `i` sits on the `i`th ordered point, link `i` (for `i < n`)
//! joins joints `i` and `i+1`, and the last link carries the operation point,
//! placed at the centroid of the set. A set of `n` points therefore induces
//! `n!` chains, many of which coincide up to a rigid rotation of the whole
//! manipulator.

use crate::planar_geometry::{centroid, GeometryError, PlanarPoint, PointSet, Unit};
use itertools::Itertools;
use nalgebra::{Rotation2, Vector2};
use std::f64::consts::PI;
use thiserror::Error;

/// Default cap on the point count accepted by [`enumerate_chains`]
/// (`8! = 40320` permutations).
pub const DEFAULT_ENUMERATION_CAP: usize = 8;

/// Errors from chain construction and kinematics.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum ChainError {
    /// Two consecutive ordered points coincide, producing a zero-length link
    /// before the end-effector.
    #[error("DegenerateLink: link {link} has zero length")]
    DegenerateLink {
        /// One-based link index.
        link: usize,
    },
    /// Permutation count would exceed the enumeration cap.
    #[error("EnumerationTooLarge: n = {n} exceeds the cap of {cap} points")]
    EnumerationTooLarge {
        /// Point count of the set.
        n: usize,
        /// Cap in effect.
        cap: usize,
    },
    /// Mismatched lengths between two ordered collections.
    #[error("ArityMismatch: expected {expected} entries, got {got}")]
    ArityMismatch {
        /// Required length.
        expected: usize,
        /// Provided length.
        got: usize,
    },
    /// Chains need at least two points.
    #[error("TooFewPoints: need at least {min} points, got {n}")]
    TooFewPoints {
        /// Provided point count.
        n: usize,
        /// Minimum required.
        min: usize,
    },
    /// The index list is not a permutation of `1..n`.
    #[error("InvalidOrdering: indices are not a permutation of 1..={n}")]
    InvalidOrdering {
        /// Expected domain size.
        n: usize,
    },
    /// A link length is negative, non-finite, or zero where positivity is
    /// required.
    #[error("InvalidLinkLength: link {link} has invalid length {value}")]
    InvalidLinkLength {
        /// One-based link index.
        link: usize,
        /// Offending value.
        value: f64,
    },
    /// Underlying point-set error.
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Reduces an angle to the half-open interval `(−π, π]`.
pub fn wrap_angle(a: f64) -> f64 {
    let r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// A numbering of the points of a set, stored zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ordering(Vec<usize>);

impl Ordering {
    /// Validates that `indices` is a permutation of `0..n`.
    pub fn new(indices: Vec<usize>) -> Result<Self, ChainError> {
        let n = indices.len();
        let mut seen = vec![false; n];
        for &i in &indices {
            if i >= n || seen[i] {
                return Err(ChainError::InvalidOrdering { n });
            }
            seen[i] = true;
        }
        Ok(Self(indices))
    }

    /// Validates a one-based index list, the convention used in file formats
    /// and reports.
    pub fn from_one_based(indices: &[usize]) -> Result<Self, ChainError> {
        let n = indices.len();
        if indices.contains(&0) {
            return Err(ChainError::InvalidOrdering { n });
        }
        Self::new(indices.iter().map(|&i| i - 1).collect())
    }

    /// The identity ordering on `n` points.
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Zero-based indices.
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// One-based indices, for display.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i + 1).collect()
    }
}

impl std::fmt::Display for Ordering {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let one_based: Vec<String> = self.0.iter().map(|&i| (i + 1).to_string()).collect();
        write!(f, "({})", one_based.join(","))
    }
}

/// Link lengths `a_1..a_n` of an `n`-revolute serial chain.
///
/// Every link but the last must have positive length; the last link may be
/// zero (operation point on the last joint).
#[derive(Clone, Debug, PartialEq)]
pub struct KinematicChain {
    link_lengths: Vec<f64>,
}

impl KinematicChain {
    pub fn new(link_lengths: Vec<f64>) -> Result<Self, ChainError> {
        if link_lengths.is_empty() {
            return Err(ChainError::TooFewPoints { n: 0, min: 1 });
        }
        let last = link_lengths.len() - 1;
        for (i, &a) in link_lengths.iter().enumerate() {
            if !a.is_finite() || a < 0.0 {
                return Err(ChainError::InvalidLinkLength {
                    link: i + 1,
                    value: a,
                });
            }
            if a == 0.0 && i < last {
                return Err(ChainError::DegenerateLink { link: i + 1 });
            }
        }
        Ok(Self { link_lengths })
    }

    /// Joint count `n`.
    pub fn len(&self) -> usize {
        self.link_lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.link_lengths.is_empty()
    }

    pub fn link_lengths(&self) -> &[f64] {
        &self.link_lengths
    }
}

/// Joint angles `θ_1..θ_n`, reduced to `(−π, π]` on construction.
///
/// `θ_1` is the absolute direction of the first link; every later angle is
/// relative to the previous link.
#[derive(Clone, Debug, PartialEq)]
pub struct Posture {
    joint_angles: Vec<f64>,
}

impl Posture {
    pub fn new(joint_angles: Vec<f64>) -> Result<Self, ChainError> {
        for (i, &a) in joint_angles.iter().enumerate() {
            if !a.is_finite() {
                return Err(ChainError::InvalidLinkLength {
                    link: i + 1,
                    value: a,
                });
            }
        }
        Ok(Self {
            joint_angles: joint_angles.into_iter().map(wrap_angle).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.joint_angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.joint_angles.is_empty()
    }

    pub fn joint_angles(&self) -> &[f64] {
        &self.joint_angles
    }
}

/// A chain posed in the plane: joint centers, the operation point `P`, and
/// the vectors `r_i` from each joint center to `P`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainConfiguration {
    joint_centers: Vec<PlanarPoint>,
    operation_point: PlanarPoint,
    r_vectors: Vec<PlanarPoint>,
}

impl ChainConfiguration {
    /// Builds a configuration directly from joint centers and the operation
    /// point; `r_i` is derived.
    pub fn new(joint_centers: Vec<PlanarPoint>, operation_point: PlanarPoint) -> Self {
        let p = operation_point.to_vector();
        let r_vectors = joint_centers
            .iter()
            .map(|q| PlanarPoint::from_vector(p - q.to_vector(), operation_point.unit()))
            .collect();
        Self {
            joint_centers,
            operation_point,
            r_vectors,
        }
    }

    pub fn len(&self) -> usize {
        self.joint_centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.joint_centers.is_empty()
    }

    pub fn joint_centers(&self) -> &[PlanarPoint] {
        &self.joint_centers
    }

    pub fn operation_point(&self) -> PlanarPoint {
        self.operation_point
    }

    pub fn r_vectors(&self) -> &[PlanarPoint] {
        &self.r_vectors
    }

    /// `r_i` as raw column vectors.
    pub fn r_column_vectors(&self) -> Vec<Vector2<f64>> {
        self.r_vectors.iter().map(|p| p.to_vector()).collect()
    }
}

/// Link lengths of the chain induced by visiting the points in the given
/// order and ending on the centroid:
/// `a_i = ‖p_{ord(i+1)} − p_{ord(i)}‖` for `i < n`, `a_n = ‖c − p_{ord(n)}‖`.
pub fn chain_from_ordering(set: &PointSet, ord: &Ordering) -> Result<KinematicChain, ChainError> {
    let n = set.len();
    if n < 2 {
        return Err(ChainError::TooFewPoints { n, min: 2 });
    }
    if ord.len() != n {
        return Err(ChainError::ArityMismatch {
            expected: n,
            got: ord.len(),
        });
    }
    let points = set.vectors();
    let c = centroid(set).to_vector();
    let mut lengths = Vec::with_capacity(n);
    for i in 0..n - 1 {
        let a = (points[ord.indices()[i + 1]] - points[ord.indices()[i]]).norm();
        if a == 0.0 {
            return Err(ChainError::DegenerateLink { link: i + 1 });
        }
        lengths.push(a);
    }
    lengths.push((c - points[ord.indices()[n - 1]]).norm());
    KinematicChain::new(lengths)
}

/// All `n!` chains of a set, one per permutation, in lexicographic order of
/// the permutation.
pub fn enumerate_chains(set: &PointSet) -> Result<Vec<(Ordering, KinematicChain)>, ChainError> {
    enumerate_chains_capped(set, DEFAULT_ENUMERATION_CAP)
}

/// [`enumerate_chains`] with an explicit cap on the point count.
pub fn enumerate_chains_capped(
    set: &PointSet,
    cap: usize,
) -> Result<Vec<(Ordering, KinematicChain)>, ChainError> {
    let n = set.len();
    if n < 2 {
        return Err(ChainError::TooFewPoints { n, min: 2 });
    }
    if n > cap {
        return Err(ChainError::EnumerationTooLarge { n, cap });
    }
    (0..n)
        .permutations(n)
        .map(|perm| {
            let ord = Ordering(perm);
            let chain = chain_from_ordering(set, &ord)?;
            Ok((ord, chain))
        })
        .collect()
}

/// An equivalence class of orderings under rigid rotation about the centroid.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderingClass {
    /// Lexicographically smallest member.
    pub representative: Ordering,
    /// All members, lexicographically sorted.
    pub members: Vec<Ordering>,
}

impl OrderingClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Groups orderings that differ only by a rigid rotation of the manipulator:
/// two orderings are equivalent when some rotation about the centroid maps
/// one ordered point sequence onto the other, pointwise within `tol`.
///
/// Classes are returned sorted by representative, so the output is
/// independent of the input order.
pub fn dedup_orderings(
    set: &PointSet,
    orderings: &[Ordering],
    tol: f64,
) -> Result<Vec<OrderingClass>, ChainError> {
    let n = set.len();
    let points = set.vectors();
    let c = centroid(set).to_vector();

    let mut sorted: Vec<&Ordering> = orderings.iter().collect();
    sorted.sort();

    // centroid-relative point sequence of each ordering
    let sequence = |ord: &Ordering| -> Vec<Vector2<f64>> {
        ord.indices().iter().map(|&i| points[i] - c).collect()
    };

    let mut classes: Vec<(Vec<Vector2<f64>>, OrderingClass)> = Vec::new();
    for ord in sorted {
        if ord.len() != n {
            return Err(ChainError::ArityMismatch {
                expected: n,
                got: ord.len(),
            });
        }
        let seq = sequence(ord);
        match classes
            .iter_mut()
            .find(|(rep_seq, _)| sequences_rotation_equivalent(rep_seq, &seq, tol))
        {
            Some((_, class)) => class.members.push(ord.clone()),
            None => classes.push((
                seq,
                OrderingClass {
                    representative: ord.clone(),
                    members: vec![ord.clone()],
                },
            )),
        }
    }
    Ok(classes.into_iter().map(|(_, class)| class).collect())
}

/// True when a single rotation maps sequence `a` onto sequence `b` pointwise
/// within `tol`. Both sequences must be expressed relative to the centroid.
fn sequences_rotation_equivalent(a: &[Vector2<f64>], b: &[Vector2<f64>], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.iter()
        .zip(b)
        .any(|(u, v)| (u.norm() - v.norm()).abs() > tol)
    {
        return false;
    }
    // anchor on the first point that is not at the centroid; if there is
    // none, every point coincides with the centroid and any rotation works
    let Some(i0) = a.iter().position(|u| u.norm() > tol) else {
        return true;
    };
    let angle = b[i0].y.atan2(b[i0].x) - a[i0].y.atan2(a[i0].x);
    let r = Rotation2::new(angle);
    a.iter().zip(b).all(|(u, v)| (r * u - v).norm() <= tol)
}

/// Poses the chain at the given joint angles with joint 1 at the origin.
///
/// Cumulative angles `φ_i = θ_1 + … + θ_i` orient each link; joint `i+1`
/// sits at `joint_i + a_i·(cos φ_i, sin φ_i)` and the operation point
/// terminates the last link.
pub fn forward_kinematics(
    chain: &KinematicChain,
    posture: &Posture,
) -> Result<ChainConfiguration, ChainError> {
    let n = chain.len();
    if posture.len() != n {
        return Err(ChainError::ArityMismatch {
            expected: n,
            got: posture.len(),
        });
    }
    let mut joints = Vec::with_capacity(n);
    let mut current = Vector2::zeros();
    let mut phi = 0.0;
    joints.push(current);
    for i in 0..n {
        phi += posture.joint_angles()[i];
        let step = chain.link_lengths()[i] * Vector2::new(phi.cos(), phi.sin());
        current += step;
        if i + 1 < n {
            joints.push(current);
        }
    }
    let operation_point = current;
    Ok(ChainConfiguration::new(
        joints
            .into_iter()
            .map(|q| PlanarPoint::from_vector(q, Unit::Length))
            .collect(),
        PlanarPoint::from_vector(operation_point, Unit::Length),
    ))
}

/// Joint angles that pose the chain of an ordering so that the joint centers
/// coincide with the ordered points and the operation point with the
/// centroid (up to the translation that pins joint 1 at the origin).
pub fn posture_from_placement(set: &PointSet, ord: &Ordering) -> Result<Posture, ChainError> {
    // surfaces DegenerateLink and arity errors first
    chain_from_ordering(set, ord)?;
    let points = set.vectors();
    let c = centroid(set).to_vector();
    let n = set.len();
    let mut angles = Vec::with_capacity(n);
    let mut previous_phi = 0.0;
    for i in 0..n {
        let dir = if i + 1 < n {
            points[ord.indices()[i + 1]] - points[ord.indices()[i]]
        } else {
            c - points[ord.indices()[n - 1]]
        };
        let phi = dir.y.atan2(dir.x);
        angles.push(if i == 0 { phi } else { phi - previous_phi });
        previous_phi = phi;
    }
    Posture::new(angles)
}
