//! Invariant geometry of homogeneous spaces G/H from Lie-algebra data.
//!
//! Matrices act on coordinate columns in the 𝔪-basis: column `j` of an
//! operator is the image of `u_j`.

mod algebra;
mod nomizu;

pub use algebra::{Decomposition, LieAlgebraSpec};
pub use nomizu::{
    alg_curvature, alg_ricci, alg_scalar, alg_symmetry_classify, curvature_tensor, invariant_derive,
    invariant_metric_space, isotropy_invariant, isotropy_representation, nomizu_map, same_family, signature,
    AlgebraicCurvature, HomSymmetry, InvariantMetricFamily, NomizuOperator, Signature,
};

use crate::algebra::{AlgebraError, RationalFunction};

pub type Matrix = Vec<Vec<RationalFunction>>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HomError {
    #[error("bracket [{0},{1}] given twice with inconsistent values")]
    Antisymmetry(String, String),
    #[error("bracket [{0},{0}] must vanish")]
    SelfBracket(String),
    #[error("Jacobi identity fails for ({0}, {1}, {2})")]
    Jacobi(String, String, String),
    #[error("decomposition vectors do not form a basis of the algebra")]
    NotABasis,
    #[error("isotropy part is not a subalgebra: [{0},{1}] leaves it")]
    NotSubalgebra(String, String),
    #[error("invariant metric is degenerate")]
    Degenerate,
    #[error("only the zero form is invariant")]
    NoInvariantMetric,
    #[error("metric is not invariant under {0}")]
    NotInvariant(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub(crate) fn zero_matrix(n: usize) -> Matrix {
    vec![vec![RationalFunction::zero(); n]; n]
}

pub(crate) fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = zero_matrix(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
                }
            }
        }
    }
    out
}

pub(crate) fn mat_add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub(crate) fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

pub(crate) fn mat_scale(a: &Matrix, f: &RationalFunction) -> Matrix {
    a.iter()
        .map(|r| r.iter().map(|x| if x.is_zero() { x.clone() } else { x * f }).collect())
        .collect()
}

pub(crate) fn transpose(a: &Matrix) -> Matrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].clone()).collect()).collect()
}

pub(crate) fn is_zero_matrix(a: &Matrix) -> bool {
    a.iter().all(|r| r.iter().all(RationalFunction::is_zero))
}

pub(crate) fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    mat_sub(&mat_mul(a, b), &mat_mul(b, a))
}
