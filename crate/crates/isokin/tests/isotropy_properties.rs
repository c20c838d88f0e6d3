//! Property tests for isotropy: polygon moments, the preserving operations,
//! scale covariance, and the transformation law of the second moment.

use isokin::isotropy::{check_isotropic_set, reflect_set, regular_polygon, rotate_set, union_sets};
use isokin::planar_geometry::{centroid, second_moment, PlanarPoint, PointSet, Unit};
use nalgebra::{Matrix2, Rotation2};
use proptest::prelude::*;
use std::f64::consts::PI;

const TOL: f64 = 1e-9;

fn polygon_params() -> impl Strategy<Value = (usize, f64, f64, f64, f64)> {
    (3usize..9, 0.1..10.0f64, -PI..PI, -5.0..5.0f64, -5.0..5.0f64)
}

fn polygon() -> impl Strategy<Value = PointSet> {
    polygon_params().prop_map(|(n, r, phase, cx, cy)| {
        regular_polygon(n, r, phase, PlanarPoint::length(cx, cy)).unwrap()
    })
}

proptest! {
    #[test]
    fn regular_polygons_have_isotropic_second_moment((n, r, phase, cx, cy) in polygon_params()) {
        let set = regular_polygon(n, r, phase, PlanarPoint::length(cx, cy)).unwrap();
        let m = second_moment(&set);
        let expected = Matrix2::identity() * (n as f64 * r * r / 2.0);
        prop_assert!((m - expected).amax() <= 1e-9 * expected.trace().max(1.0));
        prop_assert!(check_isotropic_set(&set, TOL).is_isotropic);
    }

    #[test]
    fn union_of_concentric_isotropic_sets_is_isotropic(
        (n1, r1, p1, cx, cy) in polygon_params(),
        (n2, r2, p2) in (3usize..9, 0.1..10.0f64, -PI..PI),
    ) {
        let center = PlanarPoint::length(cx, cy);
        let a = regular_polygon(n1, r1, p1, center).unwrap();
        let b = regular_polygon(n2, r2, p2, center).unwrap();
        let union = union_sets(&a, &b, TOL).unwrap();
        prop_assert_eq!(union.len(), n1 + n2);
        prop_assert!(check_isotropic_set(&union, TOL).is_isotropic);
    }

    #[test]
    fn rigid_maps_preserve_verdict_and_sigma(set in polygon(), angle in -PI..PI) {
        let before = check_isotropic_set(&set, TOL);
        for mapped in [rotate_set(&set, angle), reflect_set(&set, angle)] {
            let after = check_isotropic_set(&mapped, TOL);
            prop_assert_eq!(after.is_isotropic, before.is_isotropic);
            prop_assert!(
                (after.sigma_squared - before.sigma_squared).abs()
                    <= 1e-9 * before.sigma_squared.max(1.0)
            );
        }
    }

    #[test]
    fn second_moment_conjugates_under_rotation(set in polygon(), angle in -PI..PI) {
        let m = second_moment(&set);
        let rotated = rotate_set(&set, angle);
        let r = Rotation2::new(angle);
        let expected = r.matrix() * m * r.matrix().transpose();
        prop_assert!((second_moment(&rotated) - expected).amax() <= 1e-9 * m.trace().max(1.0));
    }

    #[test]
    fn isotropy_check_is_scale_covariant(set in polygon(), scale in 0.01..100.0f64) {
        let c = centroid(&set).to_vector();
        let scaled = set.map_vectors(|p| c + scale * (p - c));
        let before = check_isotropic_set(&set, TOL);
        let after = check_isotropic_set(&scaled, TOL);
        prop_assert_eq!(after.is_isotropic, before.is_isotropic);
        let expected = scale * scale * before.sigma_squared;
        prop_assert!((after.sigma_squared - expected).abs() <= 1e-9 * expected.max(1.0));
    }

    #[test]
    fn non_isotropic_pairs_stay_non_isotropic_under_rigid_maps(
        x in 0.1..10.0f64,
        angle in -PI..PI,
    ) {
        let pair = PointSet::from_coords(&[(x, 0.0), (-x, 0.0)], Unit::Length).unwrap();
        prop_assert!(!check_isotropic_set(&rotate_set(&pair, angle), TOL).is_isotropic);
        prop_assert!(!check_isotropic_set(&reflect_set(&pair, angle), TOL).is_isotropic);
    }
}
