//! Homogeneous structures `T` and the Ambrose–Singer equations.
//!
//! `T` is stored as a (1,2) tensor `T^k_{ij}` with `T_{∂i} ∂j = T^k_{ij} ∂k`,
//! the same layout as [`Connection`]. Every residual carries the differentiation
//! direction in its last slot.

use crate::chart::{covariant_derivative, Connection, Curvature, MetricField, TensorField};

#[derive(Clone, Debug, PartialEq)]
pub struct AmbroseSinger {
    /// `g(T_X Y, Z) + g(Y, T_X Z)` at `[Y, Z, X]`.
    pub as1: TensorField,
    /// `∇_X R − [T_X, R] + R(T_X ·, ·) + R(·, T_X ·)` at `[i, Y, Z, W, X]`.
    pub as2: TensorField,
    /// `∇_X T − [T_X, T] + T_{T_X ·}` at `[k, Y, Z, X]`.
    pub as3: TensorField,
}

impl AmbroseSinger {
    pub fn all_zero(&self) -> bool {
        self.as1.is_zero() && self.as2.is_zero() && self.as3.is_zero()
    }
}

pub fn ambrose_singer_residuals(g: &MetricField, curv: &Curvature, t: &TensorField) -> AmbroseSinger {
    let n = g.dim();
    let chart = g.chart();
    let tn: Vec<(usize, usize, usize, _)> = t
        .nonzero()
        .map(|(idx, c)| (idx[0], idx[1], idx[2], c.clone()))
        .collect();

    // AS1[j, l, m] = T^p_{mj} g_pl + T^p_{ml} g_jp
    let mut as1 = TensorField::zeros(n, 0, 3);
    for (p, m, j, tv) in &tn {
        for l in 0..n {
            let gpl = g.get(*p, l);
            if gpl.is_zero() {
                continue;
            }
            let v = tv * gpl;
            as1.add_at(&[*j, l, *m], &v);
            as1.add_at(&[l, *j, *m], &v);
        }
    }

    // AS2 = ∇R − (T_m · R) with T_m acting as a derivation
    let r = &curv.riemann;
    let mut as2 = covariant_derivative(chart, r, &curv.connection);
    let rn: Vec<(Vec<usize>, _)> = r.nonzero().map(|(i, c)| (i, c.clone())).collect();
    for (idx, rv) in &rn {
        let (i0, j0, k0, l0) = (idx[0], idx[1], idx[2], idx[3]);
        for (a, m, b, tv) in &tn {
            let prod = tv * rv;
            // + T^a_{m i0} R^{i0}_{j k l} lands on upper slot a
            if *b == i0 {
                as2.add_at(&[*a, j0, k0, l0, *m], &-prod.clone());
            }
            // − R^i_{p k l} T^p_{m j}: lower slot p = a, becomes j = b
            if *a == j0 {
                as2.add_at(&[i0, *b, k0, l0, *m], &prod);
            }
            if *a == k0 {
                as2.add_at(&[i0, j0, *b, l0, *m], &prod);
            }
            if *a == l0 {
                as2.add_at(&[i0, j0, k0, *b, *m], &prod);
            }
        }
    }

    // AS3 = ∇T − (T_m · T)
    let mut as3 = covariant_derivative(chart, t, &curv.connection);
    for (k0, i0, j0, tv) in &tn {
        for (a, m, b, sv) in &tn {
            let prod = sv * tv;
            if *b == *k0 {
                as3.add_at(&[*a, *i0, *j0, *m], &-prod.clone());
            }
            if *a == *i0 {
                as3.add_at(&[*k0, *b, *j0, *m], &prod);
            }
            if *a == *j0 {
                as3.add_at(&[*k0, *i0, *b, *m], &prod);
            }
        }
    }

    AmbroseSinger { as1, as2, as3 }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModifiedChecks {
    pub connection: Connection,
    pub dg: TensorField,
    pub dr: TensorField,
    pub dt: TensorField,
}

impl ModifiedChecks {
    pub fn all_zero(&self) -> bool {
        self.dg.is_zero() && self.dr.is_zero() && self.dt.is_zero()
    }
}

/// Parallelism of `g`, `R` and `T` under `∇̃ = ∇ − T`, computed directly.
pub fn modified_connection_checks(g: &MetricField, curv: &Curvature, t: &TensorField) -> ModifiedChecks {
    let chart = g.chart();
    let connection = curv.connection.minus(t);
    ModifiedChecks {
        dg: covariant_derivative(chart, g.tensor(), &connection),
        dr: covariant_derivative(chart, &curv.riemann, &connection),
        dt: covariant_derivative(chart, t, &connection),
        connection,
    }
}
