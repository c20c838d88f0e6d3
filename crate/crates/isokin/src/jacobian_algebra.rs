//! Jacobians of planar revolute chains, model matrices, and the matrix
//! algebra used to compare them.
//!
//! The Jacobian of an `n`-revolute planar chain has a dimensionless first row
//! of ones (block `A`) and two length-valued rows holding each `r_i` rotated
//! by +90° (block `B`). Distances between matrices use the column-normalized
//! Frobenius norm `‖M‖ = sqrt(tr(M·Mᵀ)/n)`; a matrix is isotropic when
//! `C·Cᵀ = σ²·1` with `σ > 0`, in which case its generalized inverse is
//! exactly `Cᵀ/σ²`.
//!
//! Singular values are obtained from explicit symmetric 2×2 and 3×3
//! eigendecompositions; every shape in this crate has at most three rows.

use crate::chains::{ChainConfiguration, Ordering};
use crate::isotropy::check_isotropic_set;
use crate::planar_geometry::{
    centroid, rotate90_vector, GeometryError, PlanarPoint, PointSet, Unit, DEFAULT_TOL,
};
use nalgebra::allocator::Allocator;
use nalgebra::{
    DMatrix, DefaultAllocator, Dim, Matrix, Matrix2, Matrix3, Matrix3xX, OMatrix, RawStorage,
    Storage, Vector2, Vector3,
};
use thiserror::Error;

/// Relative pivot / singular-value floor below which a matrix is treated as
/// singular.
pub const SINGULARITY_TOL: f64 = 1e-12;

/// Which of the model-set requirements failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModelSetViolation {
    /// The position vectors do not sum to zero.
    pub nonzero_first_moment: bool,
    /// The set is not isotropic.
    pub not_isotropic: bool,
    /// `Σ‖k_i‖²` differs from `2n`, so `K·Kᵀ` cannot equal `n·1₃`.
    pub wrong_scale: bool,
    /// The set is not dimensionless.
    pub wrong_unit: bool,
}

impl std::fmt::Display for ModelSetViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.nonzero_first_moment {
            parts.push("Σk_i ≠ 0");
        }
        if self.not_isotropic {
            parts.push("set is not isotropic");
        }
        if self.wrong_scale {
            parts.push("Σ‖k_i‖² ≠ 2n");
        }
        if self.wrong_unit {
            parts.push("set is not dimensionless");
        }
        write!(f, "{}", parts.join(", "))
    }
}

/// Errors from Jacobian and matrix-algebra operations.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum AlgebraError {
    /// Operand shapes are incompatible.
    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),
    /// `C·Cᵀ` deviates from `σ²·1` by more than the tolerance.
    #[error("NotIsotropic: C·Cᵀ deviates from σ²·1 by {deviation}")]
    NotIsotropic {
        /// Largest entrywise deviation.
        deviation: f64,
    },
    /// The matrix is numerically singular or rank-deficient.
    #[error("SingularMatrix: {0}")]
    SingularMatrix(String),
    /// The point set does not qualify as a model set.
    #[error("NotAModelSet: {0}")]
    NotAModelSet(ModelSetViolation),
    /// Normalizing lengths must be positive.
    #[error("NonpositiveLength: normalizing length must be positive, got {0}")]
    NonpositiveLength(f64),
    /// The Jacobian rows were already divided by a length.
    #[error("AlreadyHomogeneous: the Jacobian is already dimensionally homogeneous")]
    AlreadyHomogeneous,
    /// Underlying point-set error.
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// The 3×n Jacobian of a planar revolute chain: column `i` is
/// `(1, E·r_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobianMatrix {
    matrix: Matrix3xX<f64>,
    unit_homogeneous: bool,
}

impl JacobianMatrix {
    pub fn matrix(&self) -> &Matrix3xX<f64> {
        &self.matrix
    }

    /// Column count `n`.
    pub fn ncols(&self) -> usize {
        self.matrix.ncols()
    }

    /// True once the length-valued rows have been divided by a length.
    pub fn unit_homogeneous(&self) -> bool {
        self.unit_homogeneous
    }
}

/// The dimensionless 3×n model matrix generated by an isotropic set with
/// `Σk_i = 0` and `Σk_i·k_iᵀ = n·1₂`, so that `K·Kᵀ = n·1₃`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelMatrix {
    matrix: Matrix3xX<f64>,
    source_set: PointSet,
}

impl ModelMatrix {
    /// Builds `K = [1 … 1; E·k_1 … E·k_n]` without checking the model-set
    /// requirements. Intended for diagnosing how far a non-isotropic target
    /// is from attainable; validated construction is [`model_matrix`].
    pub fn from_set_unchecked(set: &PointSet) -> Self {
        Self {
            matrix: stack_model_columns(&set.vectors()),
            source_set: set.clone(),
        }
    }

    pub fn matrix(&self) -> &Matrix3xX<f64> {
        &self.matrix
    }

    pub fn ncols(&self) -> usize {
        self.matrix.ncols()
    }

    /// The generating set `{k_i}`.
    pub fn source_set(&self) -> &PointSet {
        &self.source_set
    }

    /// The `k_i` as column vectors.
    pub fn source_vectors(&self) -> Vec<Vector2<f64>> {
        self.source_set.vectors()
    }
}

fn stack_model_columns(vectors: &[Vector2<f64>]) -> Matrix3xX<f64> {
    let columns: Vec<Vector3<f64>> = vectors
        .iter()
        .map(|k| {
            let ek = rotate90_vector(*k);
            Vector3::new(1.0, ek.x, ek.y)
        })
        .collect();
    Matrix3xX::from_columns(&columns)
}

/// Assembles the Jacobian of a posed chain: one column `(1, E·r_i)` per
/// joint. The result is not yet dimensionally homogeneous.
pub fn build_jacobian(config: &ChainConfiguration) -> JacobianMatrix {
    JacobianMatrix {
        matrix: stack_model_columns(&config.r_column_vectors()),
        unit_homogeneous: false,
    }
}

/// Divides the two length-valued rows by `l`, making the Jacobian
/// dimensionally homogeneous.
pub fn normalize_jacobian(j: &JacobianMatrix, l: f64) -> Result<JacobianMatrix, AlgebraError> {
    if j.unit_homogeneous {
        return Err(AlgebraError::AlreadyHomogeneous);
    }
    if l <= 0.0 || !l.is_finite() {
        return Err(AlgebraError::NonpositiveLength(l));
    }
    let mut matrix = j.matrix.clone();
    for mut row in matrix.row_iter_mut().skip(1) {
        row /= l;
    }
    Ok(JacobianMatrix {
        matrix,
        unit_homogeneous: true,
    })
}

/// Validated model matrix from a dimensionless isotropic set with zero first
/// moment and `Σ‖k_i‖² = 2n`, using the default tolerance.
pub fn model_matrix(set: &PointSet) -> Result<ModelMatrix, AlgebraError> {
    model_matrix_with_tol(set, DEFAULT_TOL)
}

/// [`model_matrix`] with an explicit tolerance.
pub fn model_matrix_with_tol(set: &PointSet, tol: f64) -> Result<ModelMatrix, AlgebraError> {
    let n = set.len() as f64;
    let vectors = set.vectors();
    let first_moment: Vector2<f64> = vectors.iter().sum();
    let sum_sq: f64 = vectors.iter().map(|k| k.norm_squared()).sum();
    let scale = sum_sq.max(1.0);

    let violation = ModelSetViolation {
        nonzero_first_moment: first_moment.norm() > tol * scale.sqrt(),
        not_isotropic: !check_isotropic_set(set, tol).is_isotropic,
        wrong_scale: (sum_sq - 2.0 * n).abs() > tol * scale,
        wrong_unit: set.unit() != Unit::Dimensionless,
    };
    if violation.nonzero_first_moment
        || violation.not_isotropic
        || violation.wrong_scale
        || violation.wrong_unit
    {
        return Err(AlgebraError::NotAModelSet(violation));
    }
    Ok(ModelMatrix::from_set_unchecked(set))
}

/// Model matrix induced by an ordering of an isotropic set: the `j`th source
/// point is the vector from the `j`th ordered point to the centroid, scaled
/// so that `Σ‖k_j‖² = 2n`.
///
/// At the placement posture of the same ordering the chain's `r_j` are
/// positive multiples of these `k_j`, so the normalized Jacobian attains the
/// model exactly.
pub fn model_matrix_for_ordering(
    set: &PointSet,
    ord: &Ordering,
) -> Result<ModelMatrix, AlgebraError> {
    let n = set.len();
    if ord.len() != n {
        return Err(AlgebraError::ShapeMismatch(format!(
            "ordering has {} entries for a set of {} points",
            ord.len(),
            n
        )));
    }
    let points = set.vectors();
    let c = centroid(set).to_vector();
    let sum_sq: f64 = points.iter().map(|p| (p - c).norm_squared()).sum();
    if sum_sq == 0.0 {
        return Err(AlgebraError::NotAModelSet(ModelSetViolation {
            nonzero_first_moment: false,
            not_isotropic: true,
            wrong_scale: true,
            wrong_unit: false,
        }));
    }
    let s = (2.0 * n as f64 / sum_sq).sqrt();
    let source = PointSet::new(
        ord.indices()
            .iter()
            .map(|&i| PlanarPoint::from_vector(s * (c - points[i]), Unit::Dimensionless))
            .collect(),
    )?;
    model_matrix(&source)
}

/// Column-normalized Frobenius norm `sqrt(tr(M·Mᵀ)/n)`, `n` the column
/// count.
pub fn frobenius_norm<R, C, S>(m: &Matrix<f64, R, C, S>) -> f64
where
    R: Dim,
    C: Dim,
    S: RawStorage<f64, R, C>,
{
    (m.iter().map(|v| v * v).sum::<f64>() / m.ncols() as f64).sqrt()
}

/// Distance between two equally-shaped matrices: the column-normalized
/// Frobenius norm of their difference.
pub fn distance<R1, C1, S1, R2, C2, S2>(
    a: &Matrix<f64, R1, C1, S1>,
    b: &Matrix<f64, R2, C2, S2>,
) -> Result<f64, AlgebraError>
where
    R1: Dim,
    C1: Dim,
    S1: RawStorage<f64, R1, C1>,
    R2: Dim,
    C2: Dim,
    S2: RawStorage<f64, R2, C2>,
{
    if a.shape() != b.shape() {
        return Err(AlgebraError::ShapeMismatch(format!(
            "{:?} vs {:?}",
            a.shape(),
            b.shape()
        )));
    }
    let sum_sq: f64 = a.iter().zip(b.iter()).map(|(x, y)| (x - y) * (x - y)).sum();
    Ok((sum_sq / a.ncols() as f64).sqrt())
}

/// Verdict of [`is_isotropic_matrix`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatrixIsotropy {
    /// True when `C·Cᵀ = σ²·1` within tolerance with `σ > 0`.
    pub is_isotropic: bool,
    /// `sqrt(tr(C·Cᵀ)/m)`, the common singular value when isotropic.
    pub sigma: f64,
}

/// Tests whether an `m×n` matrix (`m ≤ n`) has a single positive singular
/// value of multiplicity `m`, i.e. `C·Cᵀ = σ²·1` entrywise within `tol`.
pub fn is_isotropic_matrix<R, C, S>(
    c: &Matrix<f64, R, C, S>,
    tol: f64,
) -> Result<MatrixIsotropy, AlgebraError>
where
    R: Dim,
    C: Dim,
    S: RawStorage<f64, R, C>,
{
    let (m, n) = c.shape();
    if m > n {
        return Err(AlgebraError::ShapeMismatch(format!(
            "isotropy needs m <= n, got {m}x{n}"
        )));
    }
    let gram = gram_matrix(c);
    let sigma_squared = gram.trace() / m as f64;
    let mut deviation: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            let target = if i == j { sigma_squared } else { 0.0 };
            deviation = deviation.max((gram[(i, j)] - target).abs());
        }
    }
    Ok(MatrixIsotropy {
        is_isotropic: deviation <= tol && sigma_squared > 0.0,
        sigma: sigma_squared.max(0.0).sqrt(),
    })
}

/// Generalized inverse of an isotropic matrix, computed without
/// roundoff-prone factorizations: `(C·Cᵀ)⁻¹·Cᵀ = Cᵀ/σ²`.
pub fn generalized_inverse_isotropic<R, C, S>(
    c: &Matrix<f64, R, C, S>,
    tol: f64,
) -> Result<OMatrix<f64, C, R>, AlgebraError>
where
    R: Dim,
    C: Dim,
    S: Storage<f64, R, C>,
    DefaultAllocator: Allocator<C, R>,
{
    let check = is_isotropic_matrix(c, tol)?;
    if !check.is_isotropic {
        let gram = gram_matrix(c);
        let m = c.nrows();
        let sigma_squared = gram.trace() / m as f64;
        let deviation = (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .map(|(i, j)| (gram[(i, j)] - if i == j { sigma_squared } else { 0.0 }).abs())
            .fold(0.0, f64::max);
        return Err(AlgebraError::NotIsotropic { deviation });
    }
    Ok(c.transpose() / (check.sigma * check.sigma))
}

/// Condition number of a square matrix in the Frobenius norm,
/// `κ(A) = ‖A‖·‖A⁻¹‖ ≥ 1`.
///
/// The inverse comes from Gauss–Jordan elimination with partial pivoting; a
/// relative pivot below `1e−12` reports the matrix as singular.
pub fn condition_number_frobenius<R, C, S>(a: &Matrix<f64, R, C, S>) -> Result<f64, AlgebraError>
where
    R: Dim,
    C: Dim,
    S: RawStorage<f64, R, C>,
{
    let (m, n) = a.shape();
    if m != n {
        return Err(AlgebraError::ShapeMismatch(format!(
            "condition number needs a square matrix, got {m}x{n}"
        )));
    }
    let entries: Vec<f64> = (0..m)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| a[(i, j)])
        .collect();
    let inverse = invert_dense(&entries, n)?;
    let norm_a = frobenius_norm(a);
    let norm_inv = (inverse.iter().map(|v| v * v).sum::<f64>() / n as f64).sqrt();
    Ok(norm_a * norm_inv)
}

/// Ratio of the largest to the smallest singular value of an `m×n` matrix
/// with `m ≤ n ≤` any width and `m ≤ 3`.
///
/// Equals 1 exactly when the matrix is isotropic. Rank-deficient input
/// (smallest singular value below `1e−12` of the largest) is an error.
pub fn condition_number_spectral<R, C, S>(a: &Matrix<f64, R, C, S>) -> Result<f64, AlgebraError>
where
    R: Dim,
    C: Dim,
    S: RawStorage<f64, R, C>,
{
    let (m, n) = a.shape();
    if m > n {
        return Err(AlgebraError::ShapeMismatch(format!(
            "spectral condition number needs m <= n, got {m}x{n}"
        )));
    }
    if m > 3 {
        return Err(AlgebraError::ShapeMismatch(format!(
            "only up to three rows are supported, got {m}"
        )));
    }
    let gram = gram_matrix(a);
    let eigenvalues = match m {
        1 => vec![gram[(0, 0)]],
        2 => symmetric_eigenvalues2(&Matrix2::new(
            gram[(0, 0)],
            gram[(0, 1)],
            gram[(1, 0)],
            gram[(1, 1)],
        ))
        .to_vec(),
        _ => symmetric_eigenvalues3(&Matrix3::from_fn(|i, j| gram[(i, j)])).to_vec(),
    };
    let sigma_max = eigenvalues.last().copied().unwrap_or(0.0).max(0.0).sqrt();
    let sigma_min = eigenvalues.first().copied().unwrap_or(0.0).max(0.0).sqrt();
    if sigma_min <= SINGULARITY_TOL * sigma_max || sigma_max == 0.0 {
        return Err(AlgebraError::SingularMatrix(format!(
            "smallest singular value {sigma_min} vs largest {sigma_max}"
        )));
    }
    Ok(sigma_max / sigma_min)
}

/// Eigenvalues of a symmetric 2×2 matrix, ascending.
pub fn symmetric_eigenvalues2(m: &Matrix2<f64>) -> [f64; 2] {
    let (a, b, d) = (m[(0, 0)], m[(0, 1)], m[(1, 1)]);
    let mid = 0.5 * (a + d);
    let radius = (0.25 * (a - d) * (a - d) + b * b).sqrt();
    [mid - radius, mid + radius]
}

/// Eigenvalues of a symmetric 3×3 matrix by the trigonometric form of the
/// cubic characteristic equation, ascending.
pub fn symmetric_eigenvalues3(m: &Matrix3<f64>) -> [f64; 3] {
    let p1 = m[(0, 1)] * m[(0, 1)] + m[(0, 2)] * m[(0, 2)] + m[(1, 2)] * m[(1, 2)];
    let q = m.trace() / 3.0;
    if p1 == 0.0 {
        let mut diag = [m[(0, 0)], m[(1, 1)], m[(2, 2)]];
        diag.sort_by(|a, b| a.partial_cmp(b).unwrap());
        return diag;
    }
    let p2 = (m[(0, 0)] - q).powi(2) + (m[(1, 1)] - q).powi(2) + (m[(2, 2)] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    let b = (m - Matrix3::identity() * q) / p;
    let r = (b.determinant() / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let high = q + 2.0 * p * phi.cos();
    let low = q + 2.0 * p * (phi + 2.0 * std::f64::consts::FRAC_PI_3).cos();
    let mid = 3.0 * q - high - low;
    let mut eigenvalues = [low, mid, high];
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eigenvalues
}

/// `C·Cᵀ` of any real matrix as a dynamically-sized matrix.
fn gram_matrix<R, C, S>(c: &Matrix<f64, R, C, S>) -> DMatrix<f64>
where
    R: Dim,
    C: Dim,
    S: RawStorage<f64, R, C>,
{
    let (m, n) = c.shape();
    DMatrix::from_fn(m, m, |i, j| (0..n).map(|k| c[(i, k)] * c[(j, k)]).sum())
}

/// Gauss–Jordan inverse of a dense row-major `n×n` matrix with partial
/// pivoting.
fn invert_dense(entries: &[f64], n: usize) -> Result<Vec<f64>, AlgebraError> {
    let scale = entries.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    if scale == 0.0 {
        return Err(AlgebraError::SingularMatrix("zero matrix".into()));
    }
    let mut work = entries.to_vec();
    let mut inv = vec![0.0; n * n];
    for i in 0..n {
        inv[i * n + i] = 1.0;
    }
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&a, &b| {
                work[a * n + col]
                    .abs()
                    .partial_cmp(&work[b * n + col].abs())
                    .unwrap()
            })
            .expect("non-empty pivot range");
        let pivot = work[pivot_row * n + col];
        if pivot.abs() <= SINGULARITY_TOL * scale {
            return Err(AlgebraError::SingularMatrix(format!(
                "relative pivot {} at column {col}",
                pivot.abs() / scale
            )));
        }
        if pivot_row != col {
            for j in 0..n {
                work.swap(col * n + j, pivot_row * n + j);
                inv.swap(col * n + j, pivot_row * n + j);
            }
        }
        let inv_pivot = 1.0 / pivot;
        for j in 0..n {
            work[col * n + j] *= inv_pivot;
            inv[col * n + j] *= inv_pivot;
        }
        for row in 0..n {
            if row == col {
                continue;
            }
            let factor = work[row * n + col];
            if factor != 0.0 {
                for j in 0..n {
                    work[row * n + j] -= factor * work[col * n + j];
                    inv[row * n + j] -= factor * inv[col * n + j];
                }
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::ChainConfiguration;
    use approx::assert_relative_eq;

    fn square_model_set() -> PointSet {
        PointSet::from_coords(
            &[(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)],
            Unit::Dimensionless,
        )
        .unwrap()
    }

    /// The model matrix of the square in canonical order.
    fn square_model() -> ModelMatrix {
        model_matrix(&square_model_set()).unwrap()
    }

    fn config_from_r(r: &[(f64, f64)]) -> ChainConfiguration {
        // joints at −r with the operation point at the origin give exactly
        // these r-vectors
        ChainConfiguration::new(
            r.iter()
                .map(|&(x, y)| PlanarPoint::length(-x, -y))
                .collect(),
            PlanarPoint::length(0.0, 0.0),
        )
    }

    #[test]
    fn jacobian_of_a_straight_arm() {
        let config = config_from_r(&[(2.0, 0.0), (1.0, 0.0)]);
        let j = build_jacobian(&config);
        let expected = Matrix3xX::from_column_slice(&[1.0, 0.0, 2.0, 1.0, 0.0, 1.0]);
        assert_eq!(j.matrix(), &expected);
        assert!(!j.unit_homogeneous());
    }

    #[test]
    fn jacobian_of_a_single_joint_at_p() {
        let config = config_from_r(&[(0.0, 0.0)]);
        let j = build_jacobian(&config);
        assert_eq!(j.matrix(), &Matrix3xX::from_column_slice(&[1.0, 0.0, 0.0]));
    }

    #[test]
    fn half_scaled_square_attains_the_model() {
        // r_i = 0.5·k_i; scaling the length rows by λ = 2 gives K exactly
        let k = square_model();
        let r: Vec<(f64, f64)> = k
            .source_vectors()
            .iter()
            .map(|v| (0.5 * v.x, 0.5 * v.y))
            .collect();
        let j = build_jacobian(&config_from_r(&r));
        let jbar = normalize_jacobian(&j, 0.5).unwrap();
        assert_relative_eq!(jbar.matrix(), k.matrix(), epsilon = 1e-15);
        assert!(jbar.unit_homogeneous());
    }

    #[test]
    fn normalize_examples() {
        let j = build_jacobian(&config_from_r(&[(2.0, 0.0), (1.0, 0.0)]));
        let same = normalize_jacobian(&j, 1.0).unwrap();
        assert_eq!(same.matrix(), j.matrix());

        let halved = normalize_jacobian(&j, 2.0).unwrap();
        assert_eq!(halved.matrix()[(2, 0)], 1.0);
        assert_eq!(halved.matrix()[(0, 0)], 1.0);

        assert_eq!(
            normalize_jacobian(&j, 0.0).unwrap_err(),
            AlgebraError::NonpositiveLength(0.0)
        );
        assert_eq!(
            normalize_jacobian(&halved, 1.0).unwrap_err(),
            AlgebraError::AlreadyHomogeneous
        );
    }

    #[test]
    fn square_model_matrix_is_the_known_matrix() {
        let k = square_model();
        #[rustfmt::skip]
        let expected = Matrix3xX::from_row_slice(&[
            1.0,  1.0,  1.0, 1.0,
           -1.0, -1.0,  1.0, 1.0,
            1.0, -1.0, -1.0, 1.0,
        ]);
        assert_eq!(k.matrix(), &expected);

        let gram = k.matrix() * k.matrix().transpose();
        assert_relative_eq!(gram, Matrix3::identity() * 4.0, epsilon = 1e-15);
    }

    #[test]
    fn scaled_square_is_not_a_model_set() {
        let doubled = square_model_set().map_vectors(|v| 2.0 * v);
        match model_matrix(&doubled).unwrap_err() {
            AlgebraError::NotAModelSet(v) => {
                assert!(v.wrong_scale);
                assert!(!v.nonzero_first_moment);
                assert!(!v.not_isotropic);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn hexagon_with_circumradius_sqrt2_is_a_model_set() {
        let hex = crate::isotropy::regular_polygon(
            6,
            2.0_f64.sqrt(),
            0.0,
            PlanarPoint::dimensionless(0.0, 0.0),
        )
        .unwrap();
        let k = model_matrix(&hex).unwrap();
        let gram = k.matrix() * k.matrix().transpose();
        assert_relative_eq!(gram, Matrix3::identity() * 6.0, epsilon = 1e-9);
    }

    #[test]
    fn length_tagged_set_is_rejected_as_model() {
        let set = PointSet::from_coords(
            &[(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)],
            Unit::Length,
        )
        .unwrap();
        match model_matrix(&set).unwrap_err() {
            AlgebraError::NotAModelSet(v) => assert!(v.wrong_unit),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn frobenius_norm_examples() {
        assert_relative_eq!(frobenius_norm(&Matrix3::<f64>::identity()), 1.0);
        assert_relative_eq!(
            frobenius_norm(&square_model().matrix().clone()),
            3.0_f64.sqrt()
        );
        assert_eq!(frobenius_norm(&Matrix2::<f64>::zeros()), 0.0);
    }

    #[test]
    fn distance_examples() {
        let k = square_model();
        assert_eq!(distance(k.matrix(), k.matrix()).unwrap(), 0.0);

        let one = nalgebra::Matrix1::new(1.0);
        let zero = nalgebra::Matrix1::new(0.0);
        assert_eq!(distance(&one, &zero).unwrap(), 1.0);

        let err = distance(&Matrix2::<f64>::zeros(), &Matrix3::<f64>::zeros()).unwrap_err();
        assert!(matches!(err, AlgebraError::ShapeMismatch(_)));
    }

    #[test]
    fn distance_is_symmetric() {
        let a = Matrix2::new(1.0, 2.0, 3.0, 4.0);
        let b = Matrix2::new(0.5, -1.0, 2.0, 0.0);
        assert_eq!(distance(&a, &b).unwrap(), distance(&b, &a).unwrap());
    }

    #[test]
    fn isotropy_of_the_square_model() {
        let k = square_model();
        let check = is_isotropic_matrix(k.matrix(), 1e-9).unwrap();
        assert!(check.is_isotropic);
        assert_relative_eq!(check.sigma, 2.0);
    }

    #[test]
    fn non_isotropic_matrices() {
        let check = is_isotropic_matrix(&Matrix2::new(1.0, 0.0, 0.0, 2.0), 1e-9).unwrap();
        assert!(!check.is_isotropic);

        let check = is_isotropic_matrix(&Matrix2::<f64>::zeros(), 1e-9).unwrap();
        assert!(!check.is_isotropic, "σ must be positive");

        let tall = nalgebra::Matrix3x2::<f64>::zeros();
        assert!(is_isotropic_matrix(&tall, 1e-9).is_err());
    }

    #[test]
    fn ones_row_has_singular_value_sqrt_n() {
        for n in 1..=8 {
            let row = nalgebra::RowDVector::from_element(n, 1.0);
            let check = is_isotropic_matrix(&row, 1e-12).unwrap();
            assert!(check.is_isotropic);
            assert_relative_eq!(check.sigma, (n as f64).sqrt(), epsilon = 1e-15);
        }
    }

    #[test]
    fn generalized_inverse_examples() {
        let k = square_model();
        let inv = generalized_inverse_isotropic(k.matrix(), 1e-9).unwrap();
        assert_relative_eq!(inv, k.matrix().transpose() / 4.0, epsilon = 1e-15);
        let product = k.matrix() * inv;
        assert_relative_eq!(product, Matrix3::identity(), epsilon = 1e-12);

        let id3 = Matrix3::<f64>::identity();
        assert_relative_eq!(generalized_inverse_isotropic(&id3, 1e-9).unwrap(), id3);

        let twice = Matrix2::<f64>::identity() * 2.0;
        assert_relative_eq!(
            generalized_inverse_isotropic(&twice, 1e-9).unwrap(),
            Matrix2::identity() * 0.5
        );

        let err =
            generalized_inverse_isotropic(&Matrix2::new(1.0, 0.0, 0.0, 2.0), 1e-9).unwrap_err();
        assert!(matches!(err, AlgebraError::NotIsotropic { .. }));
    }

    #[test]
    fn condition_number_frobenius_examples() {
        assert_relative_eq!(
            condition_number_frobenius(&Matrix3::<f64>::identity()).unwrap(),
            1.0
        );

        // ‖A‖ = sqrt(2.5), ‖A⁻¹‖ = sqrt(0.625)
        let diag = Matrix2::new(1.0, 0.0, 0.0, 2.0);
        assert_relative_eq!(
            condition_number_frobenius(&diag).unwrap(),
            1.25,
            epsilon = 1e-15
        );

        // isotropic square: σ·(orthogonal)
        let c = Matrix2::new(0.6, -0.8, 0.8, 0.6) * 3.0;
        assert_relative_eq!(
            condition_number_frobenius(&c).unwrap(),
            1.0,
            epsilon = 1e-12
        );

        let singular = Matrix2::new(1.0, 2.0, 2.0, 4.0);
        assert!(matches!(
            condition_number_frobenius(&singular).unwrap_err(),
            AlgebraError::SingularMatrix(_)
        ));
    }

    #[test]
    fn condition_number_spectral_examples() {
        let k = square_model();
        assert_relative_eq!(
            condition_number_spectral(k.matrix()).unwrap(),
            1.0,
            epsilon = 1e-12
        );

        let diag = Matrix2::new(1.0, 0.0, 0.0, 2.0);
        assert_relative_eq!(
            condition_number_spectral(&diag).unwrap(),
            2.0,
            epsilon = 1e-12
        );

        #[rustfmt::skip]
        let rank_one = Matrix3xX::from_row_slice(&[
            1.0, 1.0, 1.0, 1.0,
            0.0, 0.0, 0.0, 0.0,
            1.0, 1.0, 1.0, 1.0,
        ]);
        assert!(matches!(
            condition_number_spectral(&rank_one).unwrap_err(),
            AlgebraError::SingularMatrix(_)
        ));
    }

    #[test]
    fn symmetric_eigenvalues_agree_with_hand_values() {
        let m = Matrix2::new(2.0, 1.0, 1.0, 2.0);
        let [low, high] = symmetric_eigenvalues2(&m);
        assert_relative_eq!(low, 1.0, epsilon = 1e-14);
        assert_relative_eq!(high, 3.0, epsilon = 1e-14);

        let m = Matrix3::new(2.0, 0.0, 0.0, 0.0, 3.0, 4.0, 0.0, 4.0, 9.0);
        let [a, b, c] = symmetric_eigenvalues3(&m);
        assert_relative_eq!(a, 1.0, epsilon = 1e-12);
        assert_relative_eq!(b, 2.0, epsilon = 1e-12);
        assert_relative_eq!(c, 11.0, epsilon = 1e-12);

        let diag = Matrix3::from_diagonal(&Vector3::new(5.0, -1.0, 2.0));
        assert_eq!(symmetric_eigenvalues3(&diag), [-1.0, 2.0, 5.0]);
    }
}
