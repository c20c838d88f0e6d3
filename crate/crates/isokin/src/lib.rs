//! Isotropic point sets and the planar revolute manipulators they induce.
//!
//! The crate builds up in four layers:
//!
//! - [`planar_geometry`]: point sets, centroids, second moments, and the
//!   geometric moment of inertia.
//! - [`isotropy`]: checking isotropy, constructing regular polygons, and the
//!   unions, rotations, and reflections that preserve isotropy.
//! - [`chains`]: the `n!` kinematic chains of an ordered point set, their
//!   forward kinematics, and rotation-equivalence classes of orderings.
//! - [`jacobian_algebra`] and [`conditioning`]: dimensionally-homogeneous
//!   Jacobians, model matrices, Frobenius distances, condition numbers, the
//!   closed-form conditioning length of a posture, and the posture search
//!   behind the characteristic length.
//!
//! A worked guide lives in the `book/` directory of the repository; its code
//! snippets compile as doc-tests of the [`guide`] module.

pub mod chains;
pub mod conditioning;
pub mod guide;
pub mod isotropy;
pub mod jacobian_algebra;
pub mod planar_geometry;

pub use chains::{
    ChainConfiguration, ChainError, KinematicChain, Ordering, OrderingClass, Posture,
};
pub use conditioning::{
    CharacteristicLengthResult, ConditioningError, ConditioningResult, SearchParams,
};
pub use isotropy::{IsotropyError, IsotropyReport};
pub use jacobian_algebra::{
    AlgebraError, JacobianMatrix, MatrixIsotropy, ModelMatrix, ModelSetViolation,
};
pub use planar_geometry::{GeometryError, PlanarPoint, PointSet, Unit, DEFAULT_TOL};
