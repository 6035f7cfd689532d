use super::{Chart, ChartError, MetricField, ScalarField, TensorField, VectorField};
use crate::algebra::RationalFunction;

/// Affine connection with components `Γ^k_{mj}` stored at `[k, m, j]`, where
/// `∇_{∂m} ∂j = Γ^k_{mj} ∂k` (the middle index is the direction).
#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    gamma: TensorField,
}

impl Connection {
    pub fn from_tensor(gamma: TensorField) -> Self {
        assert_eq!((gamma.upper(), gamma.lower()), (1, 2));
        Connection { gamma }
    }

    pub fn flat(dim: usize) -> Self {
        Connection {
            gamma: TensorField::zeros(dim, 1, 2),
        }
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    /// `Γ^k_{ij}`.
    pub fn get(&self, k: usize, i: usize, j: usize) -> &RationalFunction {
        self.gamma.get(&[k, i, j])
    }

    pub fn tensor(&self) -> &TensorField {
        &self.gamma
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|k| (0..n).all(|i| (i + 1..n).all(|j| self.get(k, i, j) == self.get(k, j, i))))
    }

    /// `∇ − T` for a (1,2) tensor stored as `T^k_{ij}` with `T_{∂i}∂j = T^k_{ij}∂k`.
    pub fn minus(&self, t: &TensorField) -> Connection {
        Connection {
            gamma: self.gamma.sub(t),
        }
    }

    /// Nonzero `(k, m, j, Γ)` entries, used to skip structural zeros.
    fn entries(&self) -> Vec<(usize, usize, usize, &RationalFunction)> {
        self.gamma
            .nonzero()
            .map(|(idx, c)| (idx[0], idx[1], idx[2], c))
            .collect()
    }
}

/// Levi-Civita connection from the Koszul formula
/// `Γ^k_ij = ½ g^{kl}(∂_i g_jl + ∂_j g_il − ∂_l g_ij)`.
pub fn christoffel(g: &MetricField) -> Connection {
    let n = g.dim();
    let chart = g.chart();
    // dg[l][i][j] = ∂_l g_ij
    let dg: Vec<Vec<Vec<RationalFunction>>> = (0..n)
        .map(|l| {
            let x = chart.coord(l);
            (0..n).map(|i| (0..n).map(|j| g.get(i, j).diff(x)).collect()).collect()
        })
        .collect();
    let half = RationalFunction::from_ratio(1, 2);
    let mut gamma = TensorField::zeros(n, 1, 2);
    for i in 0..n {
        for j in i..n {
            // first kind: [ij, l]
            let first: Vec<RationalFunction> = (0..n).map(|l| &(&dg[i][j][l] + &dg[j][i][l]) - &dg[l][i][j]).collect();
            for k in 0..n {
                let mut acc = RationalFunction::zero();
                for (l, f) in first.iter().enumerate() {
                    let ginv = g.inv(k, l);
                    if f.is_zero() || ginv.is_zero() {
                        continue;
                    }
                    acc = &acc + &(ginv * f);
                }
                if acc.is_zero() {
                    continue;
                }
                let v = &acc * &half;
                gamma.set(&[k, i, j], v.clone());
                gamma.set(&[k, j, i], v);
            }
        }
    }
    Connection { gamma }
}

/// `R^i_{jkl}` with `R(∂k, ∂l)∂j = R^i_{jkl} ∂i`, `R(X,Y) = [∇X, ∇Y] − ∇[X,Y]`.
pub fn riemann(chart: &Chart, conn: &Connection) -> TensorField {
    let n = conn.dim();
    let entries = conn.entries();
    // dgamma[k] = ∂_k Γ
    let dgamma: Vec<TensorField> = (0..n)
        .map(|k| {
            let x = chart.coord(k);
            conn.gamma.map(|c| c.diff(x))
        })
        .collect();
    let mut r = TensorField::zeros(n, 1, 3);
    for k in 0..n {
        for l in k + 1..n {
            // Γ^i_{km} Γ^m_{lj} − Γ^i_{lm} Γ^m_{kj}
            let mut quad = TensorField::zeros(n, 1, 1);
            for &(i, dir, m, gi) in &entries {
                if dir == k {
                    for j in 0..n {
                        let gm = conn.get(m, l, j);
                        if !gm.is_zero() {
                            quad.add_at(&[i, j], &(gi * gm));
                        }
                    }
                } else if dir == l {
                    for j in 0..n {
                        let gm = conn.get(m, k, j);
                        if !gm.is_zero() {
                            quad.add_at(&[i, j], &-(gi * gm));
                        }
                    }
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let v = &(&(dgamma[k].get(&[i, l, j]) - dgamma[l].get(&[i, k, j])) + quad.get(&[i, j]));
                    if v.is_zero() {
                        continue;
                    }
                    r.set(&[i, j, l, k], -v.clone());
                    r.set(&[i, j, k, l], v.clone());
                }
            }
        }
    }
    r
}

/// `R_{ijkl} = g_{ip} R^p_{jkl}`.
pub fn lower_first(g: &MetricField, r: &TensorField) -> TensorField {
    let n = g.dim();
    let mut out = TensorField::zeros(n, 0, 4);
    for (idx, c) in r.nonzero() {
        let p = idx[0];
        for i in 0..n {
            let gip = g.get(i, p);
            if !gip.is_zero() {
                out.add_at(&[i, idx[1], idx[2], idx[3]], &(gip * c));
            }
        }
    }
    out
}

/// `ρ_{jl} = R^i_{jil}` (contraction of the first and third slots).
pub fn ricci(r: &TensorField) -> TensorField {
    let n = r.dim();
    let mut rho = TensorField::zeros(n, 0, 2);
    for (idx, c) in r.nonzero() {
        if idx[0] == idx[2] {
            rho.add_at(&[idx[1], idx[3]], c);
        }
    }
    rho
}

/// `τ = g^{ij} ρ_{ij}`.
pub fn scalar_curvature(g: &MetricField, rho: &TensorField) -> RationalFunction {
    let mut tau = RationalFunction::zero();
    for (idx, c) in rho.nonzero() {
        let gi = g.inv(idx[0], idx[1]);
        if !gi.is_zero() {
            tau = &tau + &(gi * c);
        }
    }
    tau
}

/// Four-dimensional Weyl tensor
/// `W = R − ½(g⊙ρ terms) + (τ/6)(g_ik g_jh − g_ih g_jk)`, slots `[i, j, k, h]`.
pub fn weyl(
    g: &MetricField,
    r_flat: &TensorField,
    rho: &TensorField,
    tau: &RationalFunction,
) -> Result<TensorField, ChartError> {
    if g.dim() != 4 {
        return Err(ChartError::WrongDimension {
            expected: 4,
            actual: g.dim(),
        });
    }
    let half = RationalFunction::from_ratio(1, 2);
    let t6 = tau * &RationalFunction::from_ratio(1, 6);
    let gg = |a: usize, b: usize| g.get(a, b);
    let rr = |a: usize, b: usize| rho.get(&[a, b]);
    let mut w = TensorField::zeros(4, 0, 4);
    for idx in TensorField::indices(4, 4) {
        let (i, j, k, h) = (idx[0], idx[1], idx[2], idx[3]);
        let ricci_part =
            &(&(&(gg(i, k) * rr(j, h)) + &(gg(j, h) * rr(i, k))) - &(gg(i, h) * rr(j, k))) - &(gg(j, k) * rr(i, h));
        let metric_part = &(gg(i, k) * gg(j, h)) - &(gg(i, h) * gg(j, k));
        let v = &(r_flat.get(&idx) - &(&ricci_part * &half)) + &(&t6 * &metric_part);
        w.set(&idx, v);
    }
    Ok(w)
}

/// Covariant derivative with respect to an arbitrary connection; the new
/// covariant slot is appended last. Uses `∇_{∂m} ∂j = Γ^k_{mj} ∂k`.
pub fn covariant_derivative(chart: &Chart, t: &TensorField, conn: &Connection) -> TensorField {
    let n = t.dim();
    let (up, lo) = (t.upper(), t.lower());
    let rank = up + lo;
    let mut out = TensorField::zeros(n, up, lo + 1);
    let with_dir = |idx: &[usize], m: usize| -> Vec<usize> {
        let mut v = Vec::with_capacity(rank + 1);
        v.extend_from_slice(idx);
        v.push(m);
        v
    };
    let entries = conn.entries();
    for (idx, c) in t.nonzero() {
        for m in 0..n {
            let d = c.diff(chart.coord(m));
            if !d.is_zero() {
                let o = with_dir(&idx, m);
                out.add_at(&o, &d);
            }
        }
        for &(k, m, j, gam) in &entries {
            for s in 0..rank {
                if s < up {
                    // upper slot holding j contributes Γ^k_{mj} t^{..j..} to slot value k
                    if idx[s] != j {
                        continue;
                    }
                    let mut o = with_dir(&idx, m);
                    o[s] = k;
                    out.add_at(&o, &(gam * c));
                } else {
                    // lower slot holding k contributes −Γ^k_{mj} t_{..k..} to slot value j
                    if idx[s] != k {
                        continue;
                    }
                    let mut o = with_dir(&idx, m);
                    o[s] = j;
                    out.add_at(&o, &-(gam * c));
                }
            }
        }
    }
    out
}

/// `(L_V g)_ij = V^k ∂_k g_ij + g_kj ∂_i V^k + g_ik ∂_j V^k`.
pub fn lie_derivative_metric(g: &MetricField, v: &VectorField) -> TensorField {
    let n = g.dim();
    let chart = g.chart();
    // dv[i][k] = ∂_i V^k
    let dv: Vec<Vec<RationalFunction>> = (0..n)
        .map(|i| v.comps.iter().map(|vk| vk.diff(chart.coord(i))).collect())
        .collect();
    let mut out = TensorField::zeros(n, 0, 2);
    for i in 0..n {
        for j in i..n {
            let mut acc = RationalFunction::zero();
            for k in 0..n {
                if !v.comps[k].is_zero() {
                    let dg = g.get(i, j).diff(chart.coord(k));
                    if !dg.is_zero() {
                        acc = &acc + &(&v.comps[k] * &dg);
                    }
                }
                if !dv[i][k].is_zero() && !g.get(k, j).is_zero() {
                    acc = &acc + &(g.get(k, j) * &dv[i][k]);
                }
                if !dv[j][k].is_zero() && !g.get(i, k).is_zero() {
                    acc = &acc + &(g.get(i, k) * &dv[j][k]);
                }
            }
            out.set(&[j, i], acc.clone());
            out.set(&[i, j], acc);
        }
    }
    out
}

/// `(Hes f)_ij = ∂_i ∂_j f − Γ^k_ij ∂_k f`.
pub fn hessian(chart: &Chart, f: &ScalarField, conn: &Connection) -> TensorField {
    let n = chart.dim();
    let df: Vec<RationalFunction> = (0..n).map(|k| f.0.diff(chart.coord(k))).collect();
    let mut out = TensorField::zeros(n, 0, 2);
    for i in 0..n {
        for j in 0..n {
            let mut acc = df[j].diff(chart.coord(i));
            for (k, dk) in df.iter().enumerate() {
                let gam = conn.get(k, i, j);
                if !dk.is_zero() && !gam.is_zero() {
                    acc = &acc - &(gam * dk);
                }
            }
            out.set(&[i, j], acc);
        }
    }
    out
}

/// The standard curvature dossier of a metric.
#[derive(Clone, Debug)]
pub struct Curvature {
    pub connection: Connection,
    pub riemann: TensorField,
    pub riemann_lowered: TensorField,
    pub ricci: TensorField,
    pub scalar: RationalFunction,
}

pub fn curvature(g: &MetricField) -> Curvature {
    let connection = christoffel(g);
    let r = riemann(g.chart(), &connection);
    let lowered = lower_first(g, &r);
    let rho = ricci(&r);
    let scalar = scalar_curvature(g, &rho);
    Curvature {
        connection,
        riemann: r,
        riemann_lowered: lowered,
        ricci: rho,
        scalar,
    }
}
