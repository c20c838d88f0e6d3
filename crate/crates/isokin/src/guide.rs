//! The chapters of the `book/` guide, re-exported so that every code snippet
//! in the book runs under `cargo test --doc`.

#[doc = include_str!("../../../book/src/point-sets.md")]
pub mod point_sets {}

#[doc = include_str!("../../../book/src/isotropic-sets.md")]
pub mod isotropic_sets {}

#[doc = include_str!("../../../book/src/kinematic-chains.md")]
pub mod kinematic_chains {}

#[doc = include_str!("../../../book/src/jacobians.md")]
pub mod jacobians {}

#[doc = include_str!("../../../book/src/conditioning-length.md")]
pub mod conditioning_length {}

#[doc = include_str!("../../../book/src/characteristic-length.md")]
pub mod characteristic_length {}
