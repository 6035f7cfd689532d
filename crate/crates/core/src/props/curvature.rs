use super::{condition_ideal, ConditionSet, PropError};
use crate::algebra::RationalFunction;
use crate::chart::{
    covariant_derivative, curvature, weyl, Connection, Curvature, MetricField, TensorField, VectorField,
};

/// `ρ − (τ/n) g = 0` together with `dτ = 0`.
pub fn einstein_conditions(g: &MetricField, curv: &Curvature) -> Result<ConditionSet, PropError> {
    let n = g.dim();
    let chart = g.chart();
    let trace_part = curv.scalar.checked_div(&RationalFunction::from_int(n as i64))?;
    let traceless = curv.ricci.sub(&g.tensor().scale(&trace_part));
    let mut dtau = TensorField::zeros(n, 0, 1);
    for i in 0..n {
        dtau.set(&[i], curv.scalar.diff(chart.coord(i)));
    }
    Ok(condition_ideal(&traceless, chart)?.and(&condition_ideal(&dtau, chart)?))
}

pub fn ricci_flat_conditions(g: &MetricField, curv: &Curvature) -> Result<ConditionSet, PropError> {
    condition_ideal(&curv.ricci, g.chart())
}

pub fn conformally_flat_conditions(g: &MetricField, curv: &Curvature) -> Result<ConditionSet, PropError> {
    let w = weyl(g, &curv.riemann_lowered, &curv.ricci, &curv.scalar)?;
    condition_ideal(&w, g.chart())
}

/// `dρ[i][j][m] = (∇_m ρ)_{ij}`.
fn ricci_derivative(g: &MetricField, curv: &Curvature) -> TensorField {
    covariant_derivative(g.chart(), &curv.ricci, &curv.connection)
}

/// Class A: the full symmetrization of `∇ρ` vanishes, i.e. `(∇_X ρ)(X, X) = 0`.
/// Since ρ is symmetric it suffices to take the cyclic sum over the slots.
pub fn class_a_conditions(g: &MetricField, curv: &Curvature) -> Result<ConditionSet, PropError> {
    let n = g.dim();
    let d = ricci_derivative(g, curv);
    let mut c = TensorField::zeros(n, 0, 3);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                // (∇_x ρ)(y,z) + (∇_y ρ)(z,x) + (∇_z ρ)(x,y)
                let v = &(d.get(&[y, z, x]) + d.get(&[z, x, y])) + d.get(&[x, y, z]);
                c.set(&[x, y, z], v);
            }
        }
    }
    condition_ideal(&c, g.chart())
}

/// Class B: `(∇_X ρ)(Y, Z) = (∇_Y ρ)(X, Z)` (ρ is a Codazzi tensor).
pub fn class_b_conditions(g: &MetricField, curv: &Curvature) -> Result<ConditionSet, PropError> {
    let n = g.dim();
    let d = ricci_derivative(g, curv);
    let mut c = TensorField::zeros(n, 0, 3);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                c.set(&[x, y, z], d.get(&[y, z, x]) - d.get(&[x, z, y]));
            }
        }
    }
    condition_ideal(&c, g.chart())
}

#[derive(Clone, Debug, PartialEq)]
pub enum SymmetryDegree {
    /// `∇^k R = 0` and, for `k ≥ 1`, a nonzero component of `∇^{k−1} R`.
    Exact {
        k: usize,
        witness: Option<(Vec<usize>, RationalFunction)>,
    },
    ExceedsKmax {
        kmax: usize,
    },
}

impl SymmetryDegree {
    pub fn k(&self) -> Option<usize> {
        match self {
            SymmetryDegree::Exact { k, .. } => Some(*k),
            SymmetryDegree::ExceedsKmax { .. } => None,
        }
    }
}

/// Iterated covariant derivatives `R, ∇R, ∇²R, …` up to `∇^kmax R`.
pub fn curvature_derivatives(g: &MetricField, curv: &Curvature, kmax: usize) -> Vec<TensorField> {
    let mut out = vec![curv.riemann.clone()];
    for _ in 0..kmax {
        let next = {
            let last = out.last().expect("nonempty");
            if last.is_zero() {
                TensorField::zeros(last.dim(), last.upper(), last.lower() + 1)
            } else {
                covariant_derivative(g.chart(), last, &curv.connection)
            }
        };
        out.push(next);
    }
    out
}

/// Smallest `k ≤ kmax` with `∇^k R = 0`; flat metrics give `k = 0`.
pub fn symmetry_degree(g: &MetricField, kmax: usize) -> SymmetryDegree {
    let curv = curvature(g);
    let mut current = curv.riemann.clone();
    for k in 0..=kmax {
        if current.is_zero() {
            return SymmetryDegree::Exact { k, witness: None };
        }
        if k == kmax {
            break;
        }
        let next = covariant_derivative(g.chart(), &current, &curv.connection);
        if next.is_zero() {
            let witness = current.first_nonzero().map(|(i, c)| (i, c.clone()));
            return SymmetryDegree::Exact { k: k + 1, witness };
        }
        current = next;
    }
    SymmetryDegree::ExceedsKmax { kmax }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParallelNull {
    pub parallel: bool,
    pub null: bool,
}

pub fn check_parallel_null(g: &MetricField, conn: &Connection, v: &VectorField) -> ParallelNull {
    let dv = covariant_derivative(g.chart(), &v.as_tensor(), conn);
    ParallelNull {
        parallel: dv.is_zero(),
        null: g.pair(v, v).is_zero(),
    }
}
