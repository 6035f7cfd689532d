use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::{
    commutator, is_zero_matrix, mat_add, mat_mul, mat_scale, mat_sub, transpose, zero_matrix, Decomposition, HomError,
    Matrix,
};
use crate::algebra::{
    canonical_affine, linear_solve, rref, Context, LinearSystem, MultiPoly, Rational, RationalFunction, Solution,
    SymbolKind, Var,
};
use crate::chart::{invert, TensorField};
use crate::props::ConditionSet;

/// `ψ(h_a)(u_j) = [h_a, u_j]_𝔪`, one matrix per 𝔥-basis element.
pub fn isotropy_representation(dec: &Decomposition) -> Vec<Matrix> {
    let r = dec.isotropy_dim();
    let n = dec.m_dim();
    (0..r)
        .map(|a| {
            let mut m = zero_matrix(n);
            for j in 0..n {
                let (_, mp) = dec.split_bracket(a, r + j);
                for (i, c) in mp.into_iter().enumerate() {
                    m[i][j] = c;
                }
            }
            m
        })
        .collect()
}

/// General invariant symmetric form, linear in fresh parameters.
#[derive(Clone, Debug)]
pub struct InvariantMetricFamily {
    pub metric: Matrix,
    pub params: Vec<Var>,
    /// One symmetric matrix per parameter (the coefficient of that parameter).
    pub basis: Vec<Matrix>,
}

fn upper_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

fn metric_from_vector(n: usize, v: &[RationalFunction]) -> Matrix {
    let mut g = zero_matrix(n);
    for (&(i, j), c) in upper_pairs(n).iter().zip(v) {
        g[i][j] = c.clone();
        g[j][i] = c.clone();
    }
    g
}

fn fresh_param(ctx: &Context, preferred: &str) -> Var {
    match ctx.lookup(preferred) {
        None => ctx.intern(preferred, SymbolKind::Parameter).expect("fresh"),
        Some(_) => ctx.fresh(&format!("{preferred}_"), SymbolKind::Parameter),
    }
}

/// Solves `ᵗψ g + g ψ = 0` over symmetric `g`. Parameters are named after
/// `names` in order (falling back to fresh variants when taken).
pub fn invariant_metric_space(
    ctx: &Context,
    psi: &[Matrix],
    n: usize,
    names: &[&str],
) -> Result<InvariantMetricFamily, HomError> {
    let pairs = upper_pairs(n);
    let unknowns: Vec<Var> = pairs.iter().map(|_| ctx.fresh("gm", SymbolKind::Unknown)).collect();
    let mut rows = Vec::new();
    for p in psi {
        let pt = transpose(p);
        for a in 0..n {
            for b in a..n {
                // (ᵗψ g + g ψ)_{ab} as a linear form in the upper-triangle entries
                let mut row = vec![RationalFunction::zero(); pairs.len()];
                for (col, &(i, j)) in pairs.iter().enumerate() {
                    let e = |x: usize, y: usize| -> bool { (x == i && y == j) || (x == j && y == i) };
                    let mut acc = RationalFunction::zero();
                    for k in 0..n {
                        if e(k, b) && !pt[a][k].is_zero() {
                            acc = &acc + &pt[a][k];
                        }
                        if e(a, k) && !p[k][b].is_zero() {
                            acc = &acc + &p[k][b];
                        }
                    }
                    row[col] = acc;
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let nullspace = if rows.is_empty() {
        (0..pairs.len())
            .map(|k| {
                (0..pairs.len())
                    .map(|c| {
                        if c == k {
                            RationalFunction::one()
                        } else {
                            RationalFunction::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    } else {
        match linear_solve(&LinearSystem::homogeneous(rows, unknowns))? {
            Solution::Consistent { nullspace, .. } => nullspace,
            Solution::Inconsistent { .. } => unreachable!("homogeneous systems are consistent"),
        }
    };
    if nullspace.is_empty() {
        return Err(HomError::NoInvariantMetric);
    }
    let (_, basis) = canonical_affine(&vec![RationalFunction::zero(); pairs.len()], &nullspace);
    let params: Vec<Var> = (0..basis.len())
        .map(|k| {
            let stem = names.get(k).map(|s| s.to_string()).unwrap_or(format!("g{}", k + 1));
            fresh_param(ctx, &stem)
        })
        .collect();
    let mut v = vec![RationalFunction::zero(); pairs.len()];
    for (row, &p) in basis.iter().zip(&params) {
        let pv = RationalFunction::var(p);
        for (e, b) in v.iter_mut().zip(row) {
            if !b.is_zero() {
                *e = &*e + &(&pv * b);
            }
        }
    }
    Ok(InvariantMetricFamily {
        metric: metric_from_vector(n, &v),
        params,
        basis: basis.iter().map(|b| metric_from_vector(n, b)).collect(),
    })
}

/// Whether two metric families linear in their parameters span the same space
/// of symmetric matrices.
pub fn same_family(g1: &Matrix, params1: &[Var], g2: &Matrix, params2: &[Var]) -> bool {
    let span = |g: &Matrix, params: &[Var]| -> Option<Vec<Vec<RationalFunction>>> {
        let n = g.len();
        let set: BTreeSet<Var> = params.iter().copied().collect();
        let mut rows: Vec<Vec<RationalFunction>> = params
            .iter()
            .map(|_| vec![RationalFunction::zero(); n * (n + 1) / 2])
            .collect();
        for (col, &(i, j)) in upper_pairs(n).iter().enumerate() {
            let e = &g[i][j];
            if !e.denom().is_constant() {
                return None;
            }
            for (m, c) in e.numer().collect_coefficients(&set) {
                match m.pairs() {
                    [] => return None,
                    [(v, 1)] => {
                        let k = params.iter().position(|p| p == v)?;
                        rows[k][col] = RationalFunction::from_poly(c).scale(&e.denom().constant_value()?.recip());
                    }
                    _ => return None,
                }
            }
        }
        Some(rref(&rows))
    };
    match (span(g1, params1), span(g2, params2)) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    }
}

/// Λ for every adapted basis element: `ψ(h_a)` on 𝔥 and
/// `Λ(u_i) u_j = ½[u_i,u_j]_𝔪 + v(u_i,u_j)` on 𝔪.
#[derive(Clone, Debug, PartialEq)]
pub struct NomizuOperator {
    /// Λ(h_1..h_r)
    pub isotropy: Vec<Matrix>,
    /// Λ(u_1..u_n)
    pub m: Vec<Matrix>,
}

impl NomizuOperator {
    /// Λ of a vector given by (𝔥-coordinates, 𝔪-coordinates), by linearity.
    pub fn apply(&self, h: &[RationalFunction], m: &[RationalFunction]) -> Matrix {
        let n = self.m.len();
        let mut out = zero_matrix(n);
        for (c, mat) in h.iter().zip(&self.isotropy).chain(m.iter().zip(&self.m)) {
            if !c.is_zero() {
                out = mat_add(&out, &mat_scale(mat, c));
            }
        }
        out
    }
}

fn bilinear(g: &Matrix, x: &[RationalFunction], y: &[RationalFunction]) -> RationalFunction {
    let mut acc = RationalFunction::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if !yj.is_zero() && !g[i][j].is_zero() {
                acc = &acc + &(&(xi * yj) * &g[i][j]);
            }
        }
    }
    acc
}

fn unit(n: usize, i: usize) -> Vec<RationalFunction> {
    let mut v = vec![RationalFunction::zero(); n];
    v[i] = RationalFunction::one();
    v
}

pub fn nomizu_map(ctx: &Context, dec: &Decomposition, g: &Matrix) -> Result<NomizuOperator, HomError> {
    let r = dec.isotropy_dim();
    let n = dec.m_dim();
    if g.len() != n {
        return Err(HomError::Dimension(format!(
            "metric is {}x{}, 𝔪 has dimension {n}",
            g.len(),
            g.len()
        )));
    }
    let psi = isotropy_representation(dec);
    for (a, p) in psi.iter().enumerate() {
        let inv = mat_add(&mat_mul(&transpose(p), g), &mat_mul(g, p));
        if !is_zero_matrix(&inv) {
            return Err(HomError::NotInvariant(dec.h_names()[a].clone()));
        }
    }
    let half = RationalFunction::from_ratio(1, 2);
    let unknowns: Vec<Var> = (0..n).map(|_| ctx.fresh("v", SymbolKind::Unknown)).collect();
    let mbr = |i: usize, j: usize| dec.split_bracket(r + i, r + j).1;
    let mut m = Vec::with_capacity(n);
    for i in 0..n {
        let mut lam = zero_matrix(n);
        for j in 0..n {
            // 2 g(v, u_z) = g(u_i, [u_z, u_j]_𝔪) + g(u_j, [u_z, u_i]_𝔪)
            let rhs: Vec<RationalFunction> = (0..n)
                .map(|z| {
                    let s = &bilinear(g, &unit(n, i), &mbr(z, j)) + &bilinear(g, &unit(n, j), &mbr(z, i));
                    &s * &half
                })
                .collect();
            let sys = LinearSystem::new(g.clone(), rhs, unknowns.clone())?;
            let v = match linear_solve(&sys)? {
                Solution::Consistent {
                    particular, nullspace, ..
                } if nullspace.is_empty() => particular,
                _ => return Err(HomError::Degenerate),
            };
            let b = mbr(i, j);
            for k in 0..n {
                lam[k][j] = &(&b[k] * &half) + &v[k];
            }
        }
        m.push(lam);
    }
    Ok(NomizuOperator { isotropy: psi, m })
}

/// `R_ij = [Λ(u_i), Λ(u_j)] − Λ([u_i, u_j])` for every ordered pair.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicCurvature {
    pub r: Vec<Vec<Matrix>>,
}

impl AlgebraicCurvature {
    pub fn get(&self, i: usize, j: usize) -> &Matrix {
        &self.r[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.r.iter().flatten().all(is_zero_matrix)
    }
}

pub fn alg_curvature(dec: &Decomposition, lam: &NomizuOperator) -> AlgebraicCurvature {
    let r0 = dec.isotropy_dim();
    let n = dec.m_dim();
    let mut r = vec![vec![zero_matrix(n); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let (h, m) = dec.split_bracket(r0 + i, r0 + j);
            let rij = mat_sub(&commutator(&lam.m[i], &lam.m[j]), &lam.apply(&h, &m));
            r[j][i] = mat_scale(&rij, &RationalFunction::from_int(-1));
            r[i][j] = rij;
        }
    }
    AlgebraicCurvature { r }
}

/// `ρ_ij = Σ_r (u_r-component of R(u_r, u_i) u_j)`.
pub fn alg_ricci(curv: &AlgebraicCurvature) -> Matrix {
    let n = curv.r.len();
    let mut rho = zero_matrix(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = RationalFunction::zero();
            for r in 0..n {
                acc = &acc + &curv.r[r][i][r][j];
            }
            rho[i][j] = acc;
        }
    }
    rho
}

pub fn alg_scalar(g: &Matrix, rho: &Matrix) -> Result<RationalFunction, HomError> {
    let (ginv, _) = invert(g).ok_or(HomError::Degenerate)?;
    let n = g.len();
    let mut acc = RationalFunction::zero();
    for i in 0..n {
        for j in 0..n {
            if !ginv[i][j].is_zero() && !rho[i][j].is_zero() {
                acc = &acc + &(&ginv[i][j] * &rho[i][j]);
            }
        }
    }
    Ok(acc)
}

/// Curvature as a (1,3) tensor on 𝔪: `R^a_{bij} = (R(u_i, u_j) u_b)^a`.
pub fn curvature_tensor(curv: &AlgebraicCurvature) -> TensorField {
    let n = curv.r.len();
    let mut t = TensorField::zeros(n, 1, 3);
    for i in 0..n {
        for j in 0..n {
            for a in 0..n {
                for b in 0..n {
                    let c = &curv.r[i][j][a][b];
                    if !c.is_zero() {
                        t.set(&[a, b, i, j], c.clone());
                    }
                }
            }
        }
    }
    t
}

/// Derivation action of a matrix `A` on a tensor over 𝔪:
/// `(A·t)^{a..}_{b..} = Σ_upper A^a_p t^{p..} − Σ_lower t_{..p..} A^p_b`.
fn derivation(a: &Matrix, t: &TensorField) -> TensorField {
    let n = t.dim();
    let up = t.upper();
    let mut out = TensorField::zeros(n, up, t.lower());
    for (idx, c) in t.nonzero() {
        for s in 0..idx.len() {
            let q = idx[s];
            for p in 0..n {
                let mut o = idx.clone();
                o[s] = p;
                if s < up {
                    let f = &a[p][q];
                    if !f.is_zero() {
                        out.add_at(&o, &(f * c));
                    }
                } else {
                    let f = &a[q][p];
                    if !f.is_zero() {
                        out.add_at(&o, &-(f * c));
                    }
                }
            }
        }
    }
    out
}

/// `(∇t)(…, u_k) = Λ(u_k)·t`, the new slot appended last.
pub fn invariant_derive(lam: &NomizuOperator, t: &TensorField) -> TensorField {
    let n = t.dim();
    let mut out = TensorField::zeros(n, t.upper(), t.lower() + 1);
    for (k, a) in lam.m.iter().enumerate() {
        if is_zero_matrix(a) {
            continue;
        }
        let d = derivation(a, t);
        for (idx, c) in d.nonzero() {
            let mut o = idx;
            o.push(k);
            out.set(&o, c.clone());
        }
    }
    out
}

/// Isotropy invariance of a tensor: `ψ(h)·t = 0` for every 𝔥-generator.
pub fn isotropy_invariant(lam: &NomizuOperator, t: &TensorField) -> bool {
    lam.isotropy.iter().all(|p| derivation(p, t).is_zero())
}

#[derive(Clone, Debug)]
pub struct HomSymmetry {
    /// `derivatives[k]` is `∇^k R`.
    pub derivatives: Vec<TensorField>,
    /// `conditions[k-1]`: parameter conditions for `∇^k R = 0`.
    pub conditions: Vec<ConditionSet>,
    /// Smallest k with `∇^k R` identically zero, if within kmax.
    pub degree: Option<usize>,
}

impl HomSymmetry {
    pub fn locally_symmetric(&self) -> bool {
        self.degree.is_some_and(|k| k <= 1)
    }
}

fn tensor_conditions(t: &TensorField, assumptions: &[MultiPoly]) -> ConditionSet {
    let mut assumptions = assumptions.to_vec();
    let mut raw = Vec::new();
    for (_, c) in t.nonzero() {
        if !c.denom().is_constant() {
            let d = c.denom().primitive();
            if !assumptions.contains(&d) {
                assumptions.push(d);
            }
        }
        raw.push(c.numer().clone());
    }
    ConditionSet::from_raw(raw, &assumptions)
}

/// `∇R, …, ∇^kmax R` in the invariant picture, with parameter conditions for
/// each to vanish.
pub fn alg_symmetry_classify(lam: &NomizuOperator, curv: &AlgebraicCurvature, g: &Matrix, kmax: usize) -> HomSymmetry {
    let mut assumptions = Vec::new();
    if let Some((_, det)) = invert(g) {
        for p in [det.numer(), det.denom()] {
            if !p.is_constant() {
                assumptions.push(p.primitive());
            }
        }
    }
    let r = curvature_tensor(curv);
    let mut degree = if r.is_zero() { Some(0) } else { None };
    let mut derivatives = vec![r];
    let mut conditions = Vec::new();
    for k in 1..=kmax {
        let d = invariant_derive(lam, derivatives.last().expect("nonempty"));
        if degree.is_none() && d.is_zero() {
            degree = Some(k);
        }
        conditions.push(tensor_conditions(&d, &assumptions));
        derivatives.push(d);
    }
    HomSymmetry {
        derivatives,
        conditions,
        degree,
    }
}

/// Inertia of a symmetric rational matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn is_lorentzian(&self) -> bool {
        self.zero == 0 && self.negative == 1 || self.zero == 0 && self.positive == 1 && self.negative > 1
    }
}

/// Congruence diagonalization over the rationals.
pub fn signature(m: &[Vec<Rational>]) -> Signature {
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let n = a.len();
    let mut diag = Vec::with_capacity(n);
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // replace e_k by e_k + e_j, making the diagonal 2 a_kj ≠ 0
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for row in a.iter_mut() {
                    let v = row[j].clone();
                    row[k] += v;
                }
            } else {
                diag.push(Rational::zero());
                k += 1;
                continue;
            }
        }
        let p = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for row in a.iter_mut().skip(k) {
                let v = &f * &row[k];
                row[i] -= v;
            }
        }
        diag.push(p);
        k += 1;
    }
    Signature {
        positive: diag.iter().filter(|d| d.is_positive()).count(),
        negative: diag.iter().filter(|d| d.is_negative()).count(),
        zero: diag.iter().filter(|d| d.is_zero()).count(),
    }
}
