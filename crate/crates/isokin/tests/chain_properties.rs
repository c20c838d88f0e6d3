//! Property tests for chains: class bookkeeping of the rotation dedup,
//! forward-kinematics invariants, and the isotropy of every placement
//! Jacobian of an isotropic set.

use isokin::chains::{
    chain_from_ordering, dedup_orderings, enumerate_chains, forward_kinematics,
    posture_from_placement, KinematicChain, Posture,
};
use isokin::conditioning::optimal_lambda;
use isokin::isotropy::regular_polygon;
use isokin::jacobian_algebra::{
    build_jacobian, condition_number_spectral, is_isotropic_matrix, model_matrix_for_ordering,
    normalize_jacobian,
};
use isokin::planar_geometry::PlanarPoint;
use proptest::prelude::*;
use std::f64::consts::PI;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dedup_classes_partition_the_permutations(
        n in 3usize..6,
        r in 0.5..3.0f64,
        phase in -PI..PI,
    ) {
        let set = regular_polygon(n, r, phase, PlanarPoint::length(0.0, 0.0)).unwrap();
        let orderings: Vec<_> = enumerate_chains(&set)
            .unwrap()
            .into_iter()
            .map(|(ord, _)| ord)
            .collect();
        let factorial: usize = (1..=n).product();
        prop_assert_eq!(orderings.len(), factorial);

        let classes = dedup_orderings(&set, &orderings, 1e-9).unwrap();
        prop_assert_eq!(classes.iter().map(|c| c.size()).sum::<usize>(), factorial);
        // a regular n-gon has an n-fold rotational symmetry
        prop_assert_eq!(classes.len(), factorial / n);
        prop_assert!(classes.iter().all(|c| c.size() == n));
    }

    #[test]
    fn trivial_symmetry_sets_have_singleton_classes(
        seed_x in 0.5..2.0f64,
        seed_y in 0.1..0.9f64,
    ) {
        // four points in generic position: no rotation about the centroid
        // maps the set onto itself
        let set = isokin::planar_geometry::PointSet::from_coords(
            &[
                (0.0, 0.0),
                (seed_x, 0.0),
                (0.0, 1.0 + seed_y),
                (2.0 * seed_x + 1.0, 3.0 * seed_y + 2.0),
            ],
            isokin::planar_geometry::Unit::Length,
        )
        .unwrap();
        let orderings: Vec<_> = enumerate_chains(&set)
            .unwrap()
            .into_iter()
            .map(|(ord, _)| ord)
            .collect();
        let classes = dedup_orderings(&set, &orderings, 1e-9).unwrap();
        prop_assert_eq!(classes.len(), 24);
        prop_assert!(classes.iter().all(|c| c.size() == 1));
    }

    #[test]
    fn forward_kinematics_respects_link_lengths(
        lengths in prop::collection::vec(0.1..3.0f64, 2..7),
        angle_seed in prop::collection::vec(-PI..PI, 7),
    ) {
        let n = lengths.len();
        let chain = KinematicChain::new(lengths).unwrap();
        let posture = Posture::new(angle_seed[..n].to_vec()).unwrap();
        let config = forward_kinematics(&chain, &posture).unwrap();

        for i in 0..n - 1 {
            let gap = (config.joint_centers()[i + 1].to_vector()
                - config.joint_centers()[i].to_vector())
            .norm();
            prop_assert!((gap - chain.link_lengths()[i]).abs() <= 1e-12 * gap.max(1.0));
        }
        let r_last = config.r_vectors()[n - 1].to_vector().norm();
        prop_assert!((r_last - chain.link_lengths()[n - 1]).abs() <= 1e-12 * r_last.max(1.0));
    }

    #[test]
    fn every_placement_jacobian_of_an_isotropic_set_is_isotropic(
        n in 3usize..6,
        r in 0.5..3.0f64,
        phase in -PI..PI,
    ) {
        let set = regular_polygon(n, r, phase, PlanarPoint::length(0.0, 0.0)).unwrap();
        for (ord, chain) in enumerate_chains(&set).unwrap() {
            let posture = posture_from_placement(&set, &ord).unwrap();
            let config = forward_kinematics(&chain, &posture).unwrap();
            let k = model_matrix_for_ordering(&set, &ord).unwrap();
            let best = optimal_lambda(&config, &k).unwrap();

            let jbar = normalize_jacobian(
                &build_jacobian(&config),
                best.conditioning_length,
            )
            .unwrap();
            let check = is_isotropic_matrix(jbar.matrix(), 1e-9).unwrap();
            prop_assert!(check.is_isotropic);
            let kappa = condition_number_spectral(jbar.matrix()).unwrap();
            prop_assert!((kappa - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn chain_lengths_are_invariant_under_set_rotation(
        n in 3usize..7,
        r in 0.5..3.0f64,
        phase in -PI..PI,
        angle in -PI..PI,
    ) {
        let set = regular_polygon(n, r, phase, PlanarPoint::length(1.0, -2.0)).unwrap();
        let rotated = isokin::isotropy::rotate_set(&set, angle);
        let ord = isokin::chains::Ordering::identity(n);
        let a = chain_from_ordering(&set, &ord).unwrap();
        let b = chain_from_ordering(&rotated, &ord).unwrap();
        for (x, y) in a.link_lengths().iter().zip(b.link_lengths()) {
            prop_assert!((x - y).abs() <= 1e-12 * x.max(1.0));
        }
    }
}
