//! Conditioning length and characteristic length.
//!
//! Dividing the two length-valued rows of a Jacobian by a length `l` makes it
//! dimensionally homogeneous. Working with `λ = 1/l`, the squared distance of
//! the normalized Jacobian to a model matrix `K` is quadratic in `λ` and the
//! minimizer has the closed form `λ = Σk_jᵀr_j / Σ‖r_j‖²`; its reciprocal is
//! the conditioning length of the posture. Minimizing the residual over
//! postures yields the characteristic length of the chain.
//!
//! The outer search has `n−1` effective variables: the first joint angle only
//! rotates the manipulator rigidly, and the best rigid orientation against a
//! fixed `K` is itself available in closed form, so it is eliminated
//! alongside `λ` at every evaluation.

use crate::chains::{
    forward_kinematics, wrap_angle, ChainConfiguration, ChainError, KinematicChain, Posture,
};
use crate::jacobian_algebra::{build_jacobian, AlgebraError, ModelMatrix};
use nalgebra::Vector2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use thiserror::Error;

/// Errors from conditioning-length computations.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum ConditioningError {
    /// Column counts of the configuration and the model disagree.
    #[error("ShapeMismatch: configuration has {config} joints, model has {model} columns")]
    ShapeMismatch {
        /// Joint count of the configuration.
        config: usize,
        /// Column count of the model.
        model: usize,
    },
    /// Every `r_j` vanishes, so no length scale exists.
    #[error("DegenerateConfiguration: all r-vectors are zero")]
    DegenerateConfiguration,
    /// `Σk_jᵀr_j ≤ 0`: the posture opposes the model and the conditioning
    /// length would not be positive.
    #[error("NonpositiveAlignment: Σ k_jᵀ r_j = {alignment}")]
    NonpositiveAlignment {
        /// The offending sum.
        alignment: f64,
    },
    /// No start of the posture search produced a valid conditioning length.
    #[error("NoValidPosture: every search start failed to align with the model")]
    NoValidPosture,
    /// Underlying chain error.
    #[error(transparent)]
    Chain(#[from] ChainError),
    /// Underlying algebra error.
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Optimal normalization of one posture.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConditioningResult {
    /// Optimal reciprocal length `λ`.
    pub lambda: f64,
    /// Conditioning length `1/λ`.
    pub conditioning_length: f64,
    /// Distance of the normalized Jacobian to the model at the optimum.
    pub residual_distance: f64,
    /// Objective value at the optimum; `residual_distance² = 2·objective_z`.
    pub objective_z: f64,
}

/// Outcome of the posture search.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacteristicLengthResult {
    /// Conditioning length at the best posture found.
    pub characteristic_length: f64,
    /// Best posture; its first angle carries the optimal rigid orientation.
    pub best_posture: Posture,
    /// Residual distance to the model at the best posture.
    pub best_distance: f64,
    /// True when the finite-difference gradient over the shape angles is
    /// below the tolerance, or the residual is numerically zero.
    pub converged: bool,
    /// Number of search starts attempted.
    pub starts_used: usize,
}

/// Parameters of the multi-start posture search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchParams {
    /// Grid resolution per shape angle (default 3).
    pub starts_per_dimension: usize,
    /// Total starts are capped at this count; past the cap a deterministic
    /// low-discrepancy sequence replaces the full grid (default 243).
    pub max_total_starts: usize,
    /// Convergence threshold on the finite-difference gradient norm of the
    /// residual (default 1e−6).
    pub gradient_tol: f64,
    /// Evaluation budget per start (default 10⁴).
    pub max_evaluations: usize,
    /// Initial coordinate-descent step (default π/8).
    pub initial_step: f64,
    /// Terminal coordinate-descent step (default 1e−10).
    pub min_step: f64,
    /// Draw starts uniformly at random instead of on the grid.
    pub randomized: bool,
    /// Seed for randomized starts; unused otherwise.
    pub seed: u64,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self {
            starts_per_dimension: 3,
            max_total_starts: 243,
            gradient_tol: 1e-6,
            max_evaluations: 10_000,
            initial_step: PI / 8.0,
            min_step: 1e-10,
            randomized: false,
            seed: 0,
        }
    }
}

fn check_shapes(config: &ChainConfiguration, k: &ModelMatrix) -> Result<(), ConditioningError> {
    if config.len() != k.ncols() {
        return Err(ConditioningError::ShapeMismatch {
            config: config.len(),
            model: k.ncols(),
        });
    }
    Ok(())
}

/// Half the squared normalized distance between the λ-scaled Jacobian and the
/// model: `z = tr[(J̄−K)(J̄−K)ᵀ]/(2n)`, with the length rows of `J̄` scaled
/// by `λ`. `λ = 0` is permitted for diagnostics.
pub fn objective_z(
    config: &ChainConfiguration,
    k: &ModelMatrix,
    lambda: f64,
) -> Result<f64, ConditioningError> {
    check_shapes(config, k)?;
    let jbar = scaled_jacobian(config, lambda);
    let diff = &jbar - k.matrix();
    let n = k.ncols() as f64;
    Ok(diff.iter().map(|v| v * v).sum::<f64>() / (2.0 * n))
}

/// The same objective evaluated through the expanded trace form
/// `z = tr(J̄·J̄ᵀ − 2K·J̄ᵀ + K·Kᵀ)/(2n)`; agrees with [`objective_z`] to
/// roundoff.
pub fn objective_z_expanded(
    config: &ChainConfiguration,
    k: &ModelMatrix,
    lambda: f64,
) -> Result<f64, ConditioningError> {
    check_shapes(config, k)?;
    let jbar = scaled_jacobian(config, lambda);
    let n = k.ncols() as f64;
    let jj = &jbar * jbar.transpose();
    let kj = k.matrix() * jbar.transpose();
    let kk = k.matrix() * k.matrix().transpose();
    Ok((jj.trace() - 2.0 * kj.trace() + kk.trace()) / (2.0 * n))
}

/// Residual of the normality condition, `λ·Σ‖r_j‖² − Σk_jᵀr_j`, which equals
/// `n·∂z/∂λ`.
pub fn normality_residual(
    config: &ChainConfiguration,
    k: &ModelMatrix,
    lambda: f64,
) -> Result<f64, ConditioningError> {
    check_shapes(config, k)?;
    let (s_rr, s_kr) = alignment_sums(&config.r_column_vectors(), &k.source_vectors());
    Ok(lambda * s_rr - s_kr)
}

/// Closed-form minimizer of the objective over `λ`:
/// `λ = Σk_jᵀr_j / Σ‖r_j‖²`, so the conditioning length is
/// `l = Σ‖r_j‖² / Σk_jᵀr_j = n·d_rms² / Σk_jᵀr_j` with `d_rms` the RMS of
/// the distances `‖r_j‖`.
pub fn optimal_lambda(
    config: &ChainConfiguration,
    k: &ModelMatrix,
) -> Result<ConditioningResult, ConditioningError> {
    check_shapes(config, k)?;
    let (s_rr, s_kr) = alignment_sums(&config.r_column_vectors(), &k.source_vectors());
    if s_rr == 0.0 {
        return Err(ConditioningError::DegenerateConfiguration);
    }
    if s_kr <= 0.0 {
        return Err(ConditioningError::NonpositiveAlignment { alignment: s_kr });
    }
    let lambda = s_kr / s_rr;
    let objective = objective_z(config, k, lambda)?;
    Ok(ConditioningResult {
        lambda,
        conditioning_length: 1.0 / lambda,
        residual_distance: (2.0 * objective).max(0.0).sqrt(),
        objective_z: objective,
    })
}

/// Multi-start search for the posture minimizing the residual distance to
/// the model, with `λ` and the rigid orientation eliminated in closed form
/// at every evaluation.
///
/// Returns the conditioning length at the best posture — the characteristic
/// length when the residual is numerically zero.
pub fn characteristic_length(
    chain: &KinematicChain,
    k: &ModelMatrix,
    search: &SearchParams,
) -> Result<CharacteristicLengthResult, ConditioningError> {
    let n = chain.len();
    if n != k.ncols() {
        return Err(ConditioningError::ShapeMismatch {
            config: n,
            model: k.ncols(),
        });
    }
    let model_vectors = k.source_vectors();
    let evaluate =
        |shape: &[f64]| -> Option<ShapeEvaluation> { evaluate_shape(chain, &model_vectors, shape) };

    let dims = n - 1;
    let starts = search_starts(dims, search);
    let starts_used = starts.len();

    let mut best: Option<(ShapeEvaluation, Vec<f64>)> = None;
    for start in starts {
        let Some((shape, eval)) = coordinate_descent(&evaluate, start, search) else {
            continue;
        };
        let replace = match &best {
            None => true,
            Some((incumbent, incumbent_shape)) => {
                better_result(&eval, &shape, incumbent, incumbent_shape)
            }
        };
        if replace {
            best = Some((eval, shape));
        }
    }
    let Some((eval, shape)) = best else {
        return Err(ConditioningError::NoValidPosture);
    };

    // re-derive the result exactly at the aligned posture
    let mut angles = Vec::with_capacity(n);
    angles.push(eval.alignment_angle);
    angles.extend_from_slice(&shape);
    let posture = Posture::new(angles)?;
    let config = forward_kinematics(chain, &posture)?;
    let conditioning = optimal_lambda(&config, k)?;

    let converged = conditioning.residual_distance < 1e-9
        || gradient_norm(&evaluate, &shape).is_some_and(|g| g < search.gradient_tol);

    Ok(CharacteristicLengthResult {
        characteristic_length: conditioning.conditioning_length,
        best_posture: posture,
        best_distance: conditioning.residual_distance,
        converged,
        starts_used,
    })
}

#[derive(Clone, Copy, Debug)]
struct ShapeEvaluation {
    objective: f64,
    conditioning_length: f64,
    alignment_angle: f64,
}

/// Closed-form inner solution at one shape: the rigid orientation maximizing
/// `Σk_jᵀr_j` is `atan2(b, a)` for `a = Σk_j·r̃_j`, `b = Σ(r̃_j × k_j)`, and
/// the optimal `λ` follows from the normality condition.
///
/// The objective is then evaluated through the difference form
/// `Σ‖λ·R(α)·r̃_j − k_j‖²/(2n)`, which stays accurate down to the machine
/// floor where the expanded trace form would cancel catastrophically.
fn evaluate_shape(
    chain: &KinematicChain,
    model_vectors: &[Vector2<f64>],
    shape: &[f64],
) -> Option<ShapeEvaluation> {
    let r = r_vectors_at_base_orientation(chain, shape);
    let s_rr: f64 = r.iter().map(|v| v.norm_squared()).sum();
    if s_rr == 0.0 {
        return None;
    }
    let mut a = 0.0;
    let mut b = 0.0;
    for (rv, kv) in r.iter().zip(model_vectors) {
        a += kv.dot(rv);
        b += rv.perp(kv);
    }
    let s_best = a.hypot(b);
    if s_best <= 0.0 {
        return None;
    }
    let alignment_angle = b.atan2(a);
    let rotation = nalgebra::Rotation2::new(alignment_angle);
    let lambda = s_best / s_rr;
    let n = chain.len() as f64;
    let objective = r
        .iter()
        .zip(model_vectors)
        .map(|(rv, kv)| (lambda * (rotation * rv) - kv).norm_squared())
        .sum::<f64>()
        / (2.0 * n);
    Some(ShapeEvaluation {
        objective,
        conditioning_length: s_rr / s_best,
        alignment_angle,
    })
}

/// `r_j` of the chain posed with the first link along +x and the given
/// relative angles for the remaining joints.
fn r_vectors_at_base_orientation(chain: &KinematicChain, shape: &[f64]) -> Vec<Vector2<f64>> {
    let n = chain.len();
    let mut joints = Vec::with_capacity(n);
    let mut current = Vector2::zeros();
    let mut phi = 0.0;
    joints.push(current);
    for i in 0..n {
        if i > 0 {
            phi += shape[i - 1];
        }
        current += chain.link_lengths()[i] * Vector2::new(phi.cos(), phi.sin());
        if i + 1 < n {
            joints.push(current);
        }
    }
    joints.iter().map(|q| current - q).collect()
}

/// Deterministic start set over `(−π, π]^dims`.
fn search_starts(dims: usize, search: &SearchParams) -> Vec<Vec<f64>> {
    if dims == 0 {
        return vec![Vec::new()];
    }
    if search.randomized {
        let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
        let count = search
            .starts_per_dimension
            .pow(dims.min(8) as u32)
            .min(search.max_total_starts)
            .max(1);
        return (0..count)
            .map(|_| (0..dims).map(|_| rng.random_range(-PI..PI)).collect())
            .collect();
    }
    let per_dim = search.starts_per_dimension.max(1);
    let total = per_dim.checked_pow(dims as u32);
    match total {
        Some(total) if total <= search.max_total_starts => {
            // full grid of cell centers, mixed-radix order
            let centers: Vec<f64> = (0..per_dim)
                .map(|i| -PI + 2.0 * PI * (i as f64 + 0.5) / per_dim as f64)
                .collect();
            let mut starts = Vec::with_capacity(total);
            let mut index = vec![0usize; dims];
            loop {
                starts.push(index.iter().map(|&i| centers[i]).collect());
                let mut d = 0;
                loop {
                    index[d] += 1;
                    if index[d] < per_dim {
                        break;
                    }
                    index[d] = 0;
                    d += 1;
                    if d == dims {
                        return starts;
                    }
                }
            }
        }
        _ => {
            // low-discrepancy fallback: Kronecker sequence built on the
            // generalized golden ratio for this dimension
            let mut phi = 2.0_f64;
            for _ in 0..64 {
                phi = (1.0 + phi).powf(1.0 / (dims as f64 + 1.0));
            }
            let alphas: Vec<f64> = (1..=dims)
                .map(|j| (1.0 / phi.powi(j as i32)).fract())
                .collect();
            (0..search.max_total_starts)
                .map(|k| {
                    alphas
                        .iter()
                        .map(|&alpha| {
                            let t = (0.5 + alpha * (k as f64 + 1.0)).fract();
                            wrap_angle(-PI + 2.0 * PI * t)
                        })
                        .collect()
                })
                .collect()
        }
    }
}

/// Derivative-free refinement: sweep the coordinates with a shrinking step.
fn coordinate_descent(
    evaluate: &impl Fn(&[f64]) -> Option<ShapeEvaluation>,
    start: Vec<f64>,
    search: &SearchParams,
) -> Option<(Vec<f64>, ShapeEvaluation)> {
    let mut shape = start;
    let mut evals = 1usize;
    let mut best = evaluate(&shape)?;
    let mut step = search.initial_step;
    while step >= search.min_step && evals < search.max_evaluations {
        let mut improved = false;
        for d in 0..shape.len() {
            for sign in [1.0, -1.0] {
                if evals >= search.max_evaluations {
                    break;
                }
                let saved = shape[d];
                shape[d] = wrap_angle(saved + sign * step);
                evals += 1;
                match evaluate(&shape) {
                    Some(eval) if eval.objective < best.objective => {
                        best = eval;
                        improved = true;
                        break;
                    }
                    _ => shape[d] = saved,
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Some((shape, best))
}

/// Total order across starts: smaller objective wins; residual ties within
/// 1e−12 fall back to the smaller conditioning length, then to the
/// lexicographically smaller posture.
fn better_result(
    candidate: &ShapeEvaluation,
    candidate_shape: &[f64],
    incumbent: &ShapeEvaluation,
    incumbent_shape: &[f64],
) -> bool {
    let res_c = (2.0 * candidate.objective).max(0.0).sqrt();
    let res_i = (2.0 * incumbent.objective).max(0.0).sqrt();
    if (res_c - res_i).abs() > 1e-12 {
        return res_c < res_i;
    }
    if candidate.conditioning_length != incumbent.conditioning_length {
        return candidate.conditioning_length < incumbent.conditioning_length;
    }
    candidate_shape < incumbent_shape
}

/// Central-difference gradient norm of the residual over the shape angles.
fn gradient_norm(
    evaluate: &impl Fn(&[f64]) -> Option<ShapeEvaluation>,
    shape: &[f64],
) -> Option<f64> {
    let h = 1e-5;
    let residual = |s: &[f64]| evaluate(s).map(|e| (2.0 * e.objective).max(0.0).sqrt());
    let mut sum_sq = 0.0;
    let mut probe = shape.to_vec();
    for d in 0..shape.len() {
        let saved = probe[d];
        probe[d] = saved + h;
        let plus = residual(&probe)?;
        probe[d] = saved - h;
        let minus = residual(&probe)?;
        probe[d] = saved;
        let g = (plus - minus) / (2.0 * h);
        sum_sq += g * g;
    }
    Some(sum_sq.sqrt())
}

fn alignment_sums(r: &[Vector2<f64>], k: &[Vector2<f64>]) -> (f64, f64) {
    let s_rr = r.iter().map(|v| v.norm_squared()).sum();
    let s_kr = r.iter().zip(k).map(|(rv, kv)| kv.dot(rv)).sum();
    (s_rr, s_kr)
}

fn scaled_jacobian(config: &ChainConfiguration, lambda: f64) -> nalgebra::Matrix3xX<f64> {
    let mut m = build_jacobian(config).matrix().clone();
    for mut row in m.row_iter_mut().skip(1) {
        row *= lambda;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobian_algebra::{model_matrix, model_matrix_for_ordering};
    use crate::planar_geometry::{PlanarPoint, PointSet, Unit};
    use approx::assert_relative_eq;

    fn square_model() -> ModelMatrix {
        let set = PointSet::from_coords(
            &[(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)],
            Unit::Dimensionless,
        )
        .unwrap();
        model_matrix(&set).unwrap()
    }

    fn config_with_r(scale: f64, k: &ModelMatrix) -> ChainConfiguration {
        ChainConfiguration::new(
            k.source_vectors()
                .iter()
                .map(|v| PlanarPoint::from_vector(-scale * v, Unit::Length))
                .collect(),
            PlanarPoint::length(0.0, 0.0),
        )
    }

    #[test]
    fn objective_examples() {
        let k = square_model();
        let config = config_with_r(0.5, &k);
        assert_relative_eq!(objective_z(&config, &k, 2.0).unwrap(), 0.0, epsilon = 1e-15);
        assert_relative_eq!(objective_z(&config, &k, 0.0).unwrap(), 1.0, epsilon = 1e-15);

        let rigid = config_with_r(1.0, &k);
        assert_relative_eq!(objective_z(&rigid, &k, 1.0).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn objective_forms_agree() {
        let k = square_model();
        let config = config_with_r(0.37, &k);
        for lambda in [0.0, 0.3, 1.0, 2.7] {
            let direct = objective_z(&config, &k, lambda).unwrap();
            let expanded = objective_z_expanded(&config, &k, lambda).unwrap();
            assert_relative_eq!(direct, expanded, epsilon = 1e-12);
        }
    }

    #[test]
    fn normality_examples() {
        let k = square_model();
        let config = config_with_r(0.5, &k);
        assert_relative_eq!(
            normality_residual(&config, &k, 2.0).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        assert_relative_eq!(
            normality_residual(&config, &k, 0.0).unwrap(),
            -4.0,
            epsilon = 1e-15
        );

        let degenerate = ChainConfiguration::new(
            vec![PlanarPoint::length(0.0, 0.0); 4],
            PlanarPoint::length(0.0, 0.0),
        );
        for lambda in [0.0, 1.0, 5.0] {
            assert_eq!(normality_residual(&degenerate, &k, lambda).unwrap(), 0.0);
        }
    }

    #[test]
    fn normality_matches_finite_differences_of_z() {
        let k = square_model();
        let config = config_with_r(0.8, &k);
        let n = 4.0;
        let h = 1e-6;
        for lambda in [0.3, 1.0, 3.0] {
            let fd = (objective_z(&config, &k, lambda + h).unwrap()
                - objective_z(&config, &k, lambda - h).unwrap())
                / (2.0 * h);
            let analytic = normality_residual(&config, &k, lambda).unwrap() / n;
            assert_relative_eq!(fd, analytic, max_relative = 1e-6);
        }
    }

    #[test]
    fn optimal_lambda_on_the_half_scaled_square() {
        let k = square_model();
        let config = config_with_r(0.5, &k);
        let result = optimal_lambda(&config, &k).unwrap();
        assert_relative_eq!(result.lambda, 2.0, epsilon = 1e-12);
        assert_relative_eq!(result.conditioning_length, 0.5, epsilon = 1e-12);
        assert!(result.residual_distance < 1e-12);
        assert_relative_eq!(
            result.conditioning_length * result.lambda,
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn residual_is_the_distance_to_the_model() {
        use crate::jacobian_algebra::{build_jacobian, distance, normalize_jacobian};
        let k = square_model();
        let config = config_with_r(0.5, &k);
        let result = optimal_lambda(&config, &k).unwrap();
        let jbar =
            normalize_jacobian(&build_jacobian(&config), result.conditioning_length).unwrap();
        let d = distance(jbar.matrix(), k.matrix()).unwrap();
        assert!(d < 1e-15);
        assert_relative_eq!(d, result.residual_distance, epsilon = 1e-15);
    }

    #[test]
    fn optimal_lambda_recovers_any_scale() {
        let k = square_model();
        for c in [0.1, 0.5, 1.0, 3.7] {
            let config = config_with_r(c, &k);
            let result = optimal_lambda(&config, &k).unwrap();
            assert_relative_eq!(result.conditioning_length, c, epsilon = 1e-12);
            assert!(result.residual_distance < 1e-12);

            // grid oracle over λ: the closed form must not lose to any sample
            let z_star = result.objective_z;
            for i in 1..=1000 {
                let lambda = 4.0 * result.lambda * i as f64 / 1000.0;
                assert!(z_star <= objective_z(&config, &k, lambda).unwrap() + 1e-12);
            }
        }
    }

    #[test]
    fn straight_arm_against_a_segment_target() {
        // non-isotropic two-point target, built unchecked for diagnostics
        let segment =
            PointSet::from_coords(&[(1.0, 0.0), (-1.0, 0.0)], Unit::Dimensionless).unwrap();
        let k = ModelMatrix::from_set_unchecked(&segment);
        let config = ChainConfiguration::new(
            vec![
                PlanarPoint::length(-2.0, 0.0),
                PlanarPoint::length(-1.0, 0.0),
            ],
            PlanarPoint::length(0.0, 0.0),
        );
        let result = optimal_lambda(&config, &k).unwrap();
        assert_relative_eq!(result.lambda, 0.2, epsilon = 1e-12);
        assert!(result.residual_distance > 0.0);

        // dense λ-grid oracle
        let mut grid_best = f64::INFINITY;
        for i in 1..=10_000 {
            let lambda = 1.0 * i as f64 / 10_000.0;
            grid_best = grid_best.min(objective_z(&config, &k, lambda).unwrap());
        }
        assert!(result.objective_z <= grid_best + 1e-12);
        assert_relative_eq!(result.objective_z, grid_best, epsilon = 1e-9);
    }

    #[test]
    fn degenerate_and_opposed_configurations_error() {
        let k = square_model();
        let zeros = ChainConfiguration::new(
            vec![PlanarPoint::length(0.0, 0.0); 4],
            PlanarPoint::length(0.0, 0.0),
        );
        assert_eq!(
            optimal_lambda(&zeros, &k).unwrap_err(),
            ConditioningError::DegenerateConfiguration
        );

        let opposed = config_with_r(-0.5, &k);
        assert!(matches!(
            optimal_lambda(&opposed, &k).unwrap_err(),
            ConditioningError::NonpositiveAlignment { .. }
        ));
    }

    #[test]
    fn scale_equivariance() {
        let set = PointSet::from_coords(
            &[(0.5, 0.5), (-0.5, 0.5), (-0.5, -0.5), (0.5, -0.5)],
            Unit::Length,
        )
        .unwrap();
        let ord = crate::chains::Ordering::from_one_based(&[2, 4, 1, 3]).unwrap();
        let k = model_matrix_for_ordering(&set, &ord).unwrap();
        let chain = crate::chains::chain_from_ordering(&set, &ord).unwrap();
        // perturbing the placement posture keeps the alignment positive
        let placement = crate::chains::posture_from_placement(&set, &ord).unwrap();
        let posture = Posture::new(
            placement
                .joint_angles()
                .iter()
                .enumerate()
                .map(|(i, &a)| a + 0.05 * (i as f64 + 1.0))
                .collect(),
        )
        .unwrap();
        let config = forward_kinematics(&chain, &posture).unwrap();
        let base = optimal_lambda(&config, &k).unwrap();
        assert!(base.residual_distance > 0.0);

        for s in [0.25, 2.0, 13.0] {
            let scaled = ChainConfiguration::new(
                config
                    .joint_centers()
                    .iter()
                    .map(|p| PlanarPoint::from_vector(s * p.to_vector(), Unit::Length))
                    .collect(),
                PlanarPoint::from_vector(s * config.operation_point().to_vector(), Unit::Length),
            );
            let result = optimal_lambda(&scaled, &k).unwrap();
            assert_relative_eq!(
                result.conditioning_length,
                s * base.conditioning_length,
                epsilon = 1e-12
            );
            assert_relative_eq!(
                result.residual_distance,
                base.residual_distance,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn characteristic_length_of_the_first_family() {
        let chain = KinematicChain::new(vec![1.0, 1.0, 1.0, 2.0_f64.sqrt() / 2.0]).unwrap();
        let k = square_model();
        let result = characteristic_length(&chain, &k, &SearchParams::default()).unwrap();
        assert!((result.characteristic_length - 0.5).abs() < 1e-4);
        assert!(result.best_distance < 1e-6);
        assert!(result.converged);
        assert_eq!(result.starts_used, 27);
    }

    #[test]
    fn two_link_arm_against_the_segment_target() {
        let segment =
            PointSet::from_coords(&[(1.0, 0.0), (-1.0, 0.0)], Unit::Dimensionless).unwrap();
        let k = ModelMatrix::from_set_unchecked(&segment);
        let chain = KinematicChain::new(vec![1.0, 1.0]).unwrap();
        let result = characteristic_length(&chain, &k, &SearchParams::default()).unwrap();

        // dense one-dimensional grid oracle over the only shape angle
        let model_vectors = k.source_vectors();
        let mut oracle = f64::INFINITY;
        for i in 0..200_000 {
            let theta = -PI + 2.0 * PI * (i as f64 + 0.5) / 200_000.0;
            if let Some(eval) = evaluate_shape(&chain, &model_vectors, &[theta]) {
                oracle = oracle.min((2.0 * eval.objective).max(0.0).sqrt());
            }
        }
        assert!(result.best_distance > 0.0);
        assert!(result.best_distance <= oracle + 1e-9);
        assert_relative_eq!(result.best_distance, oracle, epsilon = 1e-4);
        // hand value: the folded arm minimizes the residual at sqrt(1/2)
        assert_relative_eq!(result.best_distance, 0.5_f64.sqrt(), epsilon = 1e-6);
    }

    #[test]
    fn all_zero_model_yields_no_valid_posture() {
        let zero_set =
            PointSet::from_coords(&[(0.0, 0.0), (0.0, 0.0)], Unit::Dimensionless).unwrap();
        let k = ModelMatrix::from_set_unchecked(&zero_set);
        let chain = KinematicChain::new(vec![1.0, 1.0]).unwrap();
        assert_eq!(
            characteristic_length(&chain, &k, &SearchParams::default()).unwrap_err(),
            ConditioningError::NoValidPosture
        );
    }

    #[test]
    fn column_permutation_covariance() {
        let k = square_model();
        let config = ChainConfiguration::new(
            vec![
                PlanarPoint::length(0.3, -0.4),
                PlanarPoint::length(-1.0, 0.2),
                PlanarPoint::length(0.8, 1.1),
                PlanarPoint::length(-0.2, -0.9),
            ],
            PlanarPoint::length(0.1, 0.2),
        );
        let base = optimal_lambda(&config, &k).unwrap();

        let perm = [2usize, 0, 3, 1];
        let permuted_set = PointSet::new(
            perm.iter()
                .map(|&i| PlanarPoint::from_vector(k.source_vectors()[i], Unit::Dimensionless))
                .collect(),
        )
        .unwrap();
        let permuted_k = model_matrix(&permuted_set).unwrap();
        let permuted_config = ChainConfiguration::new(
            perm.iter().map(|&i| config.joint_centers()[i]).collect(),
            config.operation_point(),
        );
        let permuted = optimal_lambda(&permuted_config, &permuted_k).unwrap();
        assert_relative_eq!(base.lambda, permuted.lambda, epsilon = 1e-12);
        assert_relative_eq!(
            base.conditioning_length,
            permuted.conditioning_length,
            epsilon = 1e-12
        );
        assert_relative_eq!(base.objective_z, permuted.objective_z, epsilon = 1e-12);
    }

    #[test]
    fn placement_postures_recover_the_construction_scale() {
        let model = square_model();
        for c in [0.5, 1.0, 2.5] {
            let scaled = PointSet::new(
                model
                    .source_vectors()
                    .iter()
                    .map(|v| PlanarPoint::from_vector(c * v, Unit::Length))
                    .collect(),
            )
            .unwrap();
            for (ord, chain) in crate::chains::enumerate_chains(&scaled).unwrap() {
                let k = model_matrix_for_ordering(&scaled, &ord).unwrap();
                let posture = crate::chains::posture_from_placement(&scaled, &ord).unwrap();
                let config = forward_kinematics(&chain, &posture).unwrap();
                let result = optimal_lambda(&config, &k).unwrap();
                assert_relative_eq!(result.conditioning_length, c, epsilon = 1e-9);
                assert!(result.residual_distance < 1e-9);
            }
        }
    }
}
