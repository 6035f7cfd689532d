//! Geometric properties as exact conditions on the parameters.

mod conditions;
mod curvature;
mod homogeneous;
mod soliton;

pub use conditions::{condition_ideal, ConditionSet};
pub use curvature::{
    check_parallel_null, class_a_conditions, class_b_conditions, conformally_flat_conditions, curvature_derivatives,
    einstein_conditions, ricci_flat_conditions, symmetry_degree, ParallelNull, SymmetryDegree,
};
pub use homogeneous::{ambrose_singer_residuals, modified_connection_checks, AmbroseSinger, ModifiedChecks};
pub use soliton::{
    soliton_residual, solve_gradient_soliton, solve_soliton_ansatz, GradientSolitonFamily, SolitonFamily, SolitonKind,
};

use crate::algebra::AlgebraError;
use crate::chart::ChartError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PropError {
    #[error("component {index:?} has denominator {den} depending on the coordinates that cannot be shown nonzero")]
    UnprovenDenominator { index: Vec<usize>, den: String },
    #[error("{what} is not polynomial in the coordinates")]
    NotPolynomial { what: String },
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
