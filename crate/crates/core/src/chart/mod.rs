//! Tensor calculus in a single coordinate chart.

mod calculus;
mod tensor;

use std::sync::Arc;

pub use calculus::{
    christoffel, covariant_derivative, curvature, hessian, lie_derivative_metric, lower_first, ricci, riemann,
    scalar_curvature, weyl, Connection, Curvature,
};
pub use tensor::{ScalarField, TensorField, VectorField};

use crate::algebra::{AlgebraError, Context, MultiPoly, RationalFunction, SymbolKind, Var};

/// Soft cap on the chart dimension; dense storage grows as n^rank.
pub const MAX_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChartError {
    #[error("chart dimension {0} outside the supported range 2..={MAX_DIM}")]
    Dimension(usize),
    #[error("symbol `{0}` must be declared as a coordinate")]
    NotCoordinate(String),
    #[error("metric is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("metric determinant vanishes identically")]
    Degenerate,
    #[error("operation requires dimension {expected}, chart has {actual}")]
    WrongDimension { expected: usize, actual: usize },
    #[error("component count {got} does not match chart dimension {dim}")]
    Shape { dim: usize, got: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Local coordinates plus the free parameters of a metric family.
#[derive(Clone, Debug)]
pub struct Chart {
    ctx: Arc<Context>,
    coords: Vec<Var>,
    params: Vec<Var>,
    assumptions: Vec<MultiPoly>,
}

impl Chart {
    pub fn new(ctx: Arc<Context>, coords: Vec<Var>, params: Vec<Var>) -> Result<Self, ChartError> {
        if coords.len() < 2 || coords.len() > MAX_DIM {
            return Err(ChartError::Dimension(coords.len()));
        }
        for &c in &coords {
            if c.kind() != SymbolKind::Coordinate {
                return Err(ChartError::NotCoordinate(ctx.name(c)));
            }
        }
        Ok(Chart {
            ctx,
            coords,
            params,
            assumptions: Vec::new(),
        })
    }

    /// Interns `names` as coordinates and `params` as parameters.
    pub fn with_names(ctx: Arc<Context>, names: &[&str], params: &[&str]) -> Result<Self, ChartError> {
        let coords = names
            .iter()
            .map(|n| ctx.intern(n, SymbolKind::Coordinate))
            .collect::<Result<Vec<_>, _>>()?;
        let params = params
            .iter()
            .map(|n| ctx.intern(n, SymbolKind::Parameter))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ctx, coords, params)
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Var] {
        &self.coords
    }

    pub fn params(&self) -> &[Var] {
        &self.params
    }

    pub fn assumptions(&self) -> &[MultiPoly] {
        &self.assumptions
    }

    /// Declares `p` nonzero. Stored primitive and without duplicates.
    pub fn assume_nonzero(&mut self, p: &MultiPoly) {
        if p.is_zero() || p.is_constant() {
            return;
        }
        let prim = p.primitive();
        if !self.assumptions.contains(&prim) {
            self.assumptions.push(prim);
        }
    }

    pub fn coord(&self, i: usize) -> Var {
        self.coords[i]
    }

    pub fn coord_fn(&self, i: usize) -> RationalFunction {
        RationalFunction::var(self.coords[i])
    }
}

/// Symmetric nondegenerate metric with its inverse.
#[derive(Clone, Debug)]
pub struct MetricField {
    chart: Chart,
    g: TensorField,
    inverse: TensorField,
    det: RationalFunction,
}

impl MetricField {
    /// Validates symmetry, inverts, and records the determinant's numerator and
    /// denominator factors as nonzero assumptions on the chart.
    pub fn new(mut chart: Chart, comps: Vec<Vec<RationalFunction>>) -> Result<Self, ChartError> {
        let n = chart.dim();
        if comps.len() != n || comps.iter().any(|r| r.len() != n) {
            return Err(ChartError::Shape {
                dim: n,
                got: comps.iter().map(Vec::len).sum(),
            });
        }
        for i in 0..n {
            for j in i + 1..n {
                if comps[i][j] != comps[j][i] {
                    return Err(ChartError::Asymmetric(i + 1, j + 1));
                }
            }
        }
        let (inv, det) = invert(&comps).ok_or(ChartError::Degenerate)?;
        for p in [det.numer(), det.denom()] {
            let params_only = p.vars().iter().all(|v| v.kind() != SymbolKind::Coordinate);
            if params_only {
                chart.assume_nonzero(p);
            }
        }
        Ok(MetricField {
            g: TensorField::from_matrix(&comps, 0),
            inverse: TensorField::from_matrix(&inv, 2),
            det,
            chart,
        })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn tensor(&self) -> &TensorField {
        &self.g
    }

    pub fn inverse(&self) -> &TensorField {
        &self.inverse
    }

    pub fn det(&self) -> &RationalFunction {
        &self.det
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFunction {
        self.g.get(&[i, j])
    }

    pub fn inv(&self, i: usize, j: usize) -> &RationalFunction {
        self.inverse.get(&[i, j])
    }

    /// g(U, V) for vector fields on this chart.
    pub fn pair(&self, u: &VectorField, v: &VectorField) -> RationalFunction {
        let n = self.dim();
        let mut acc = RationalFunction::zero();
        for i in 0..n {
            if u.comps[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v.comps[j].is_zero() || self.get(i, j).is_zero() {
                    continue;
                }
                acc = &acc + &(&(&u.comps[i] * &v.comps[j]) * self.get(i, j));
            }
        }
        acc
    }

    /// Applies a parameter substitution to every component, rebuilding the
    /// inverse.
    pub fn substitute(&self, v: Var, value: &RationalFunction) -> Result<Self, ChartError> {
        let comps = self.g.substitute(v, value)?.to_matrix();
        let mut chart = self.chart.clone();
        chart.assumptions.clear();
        Self::new(chart, comps)
    }
}

/// Gauss–Jordan inversion over the rational-function field. Returns `None` for
/// a singular matrix; otherwise the inverse and the determinant.
pub fn invert(m: &[Vec<RationalFunction>]) -> Option<(Vec<Vec<RationalFunction>>, RationalFunction)> {
    let n = m.len();
    let mut a: Vec<Vec<RationalFunction>> = m.to_vec();
    let mut inv: Vec<Vec<RationalFunction>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        RationalFunction::one()
                    } else {
                        RationalFunction::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut det = RationalFunction::one();
    for col in 0..n {
        // cheapest nonzero pivot
        let pr = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| (!a[r][col].is_constant(), a[r][col].numer().num_terms()))?;
        if pr != col {
            a.swap(pr, col);
            inv.swap(pr, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det = &det * &p;
        let pinv = p.recip().ok()?;
        for j in 0..n {
            if !a[col][j].is_zero() {
                a[col][j] = &a[col][j] * &pinv;
            }
            if !inv[col][j].is_zero() {
                inv[col][j] = &inv[col][j] * &pinv;
            }
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                if !a[col][j].is_zero() {
                    a[r][j] = &a[r][j] - &(&f * &a[col][j]);
                }
                if !inv[col][j].is_zero() {
                    inv[r][j] = &inv[r][j] - &(&f * &inv[col][j]);
                }
            }
        }
    }
    Some((inv, det))
}
