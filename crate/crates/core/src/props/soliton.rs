//! Ricci solitons `L_V g + ρ = λ g` and gradient solitons `2 Hes f + ρ = λ g`,
//! solved by polynomial ansatz in the chart coordinates.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{Signed, Zero};

use super::PropError;
use crate::algebra::{
    canonical_affine, linear_solve, reduce_against, AlgebraError, Context, LinearSystem, Monomial, MultiPoly, Rational,
    RationalFunction, Solution, SymbolKind, Var,
};
use crate::chart::{
    hessian, lie_derivative_metric, Chart, Curvature, MetricField, ScalarField, TensorField, VectorField,
};

/// `L_V g + ρ − λ g`.
pub fn soliton_residual(g: &MetricField, curv: &Curvature, v: &VectorField, lambda: &RationalFunction) -> TensorField {
    lie_derivative_metric(g, v)
        .add(&curv.ricci)
        .sub(&g.tensor().scale(lambda))
}

fn gradient_residual(g: &MetricField, curv: &Curvature, f: &ScalarField, lambda: &RationalFunction) -> TensorField {
    hessian(g.chart(), f, &curv.connection)
        .scale(&RationalFunction::from_int(2))
        .add(&curv.ricci)
        .sub(&g.tensor().scale(lambda))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolitonKind {
    Shrinking,
    Steady,
    Expanding,
}

impl SolitonKind {
    /// Sign classification of a numeric λ.
    pub fn of(lambda: &Rational) -> Self {
        if lambda.is_zero() {
            SolitonKind::Steady
        } else if lambda.is_positive() {
            SolitonKind::Shrinking
        } else {
            SolitonKind::Expanding
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SolitonKind::Shrinking => "shrinking",
            SolitonKind::Steady => "steady",
            SolitonKind::Expanding => "expanding",
        }
    }
}

/// Affine solution space of an ansatz, in canonical form. Column 0 is λ;
/// the remaining columns follow `monomials` for each unknown function.
#[derive(Clone, Debug)]
struct AnsatzSpace {
    monomials: Vec<Monomial>,
    functions: usize,
    particular: Vec<RationalFunction>,
    basis: Vec<Vec<RationalFunction>>,
    constants: Vec<Var>,
    assumptions: Vec<MultiPoly>,
}

impl AnsatzSpace {
    fn column(&self, function: usize, mono: usize) -> usize {
        1 + function * self.monomials.len() + mono
    }

    /// Member with every free constant left symbolic.
    fn general_member(&self) -> Vec<RationalFunction> {
        let mut x = self.particular.clone();
        for (row, &c) in self.basis.iter().zip(&self.constants) {
            let c = RationalFunction::var(c);
            for (e, b) in x.iter_mut().zip(row) {
                if !b.is_zero() {
                    *e = &*e + &(&c * b);
                }
            }
        }
        x
    }

    fn function(&self, x: &[RationalFunction], function: usize) -> RationalFunction {
        self.monomials
            .iter()
            .enumerate()
            .filter(|(k, _)| !x[self.column(function, *k)].is_zero())
            .map(|(k, m)| {
                &x[self.column(function, k)]
                    * &RationalFunction::from_poly(MultiPoly::monomial(m.clone(), Rational::from_integer(1.into())))
            })
            .sum()
    }

    /// Coordinates of a candidate `(λ, functions…)` in the ansatz, or `None` if
    /// it is not polynomial of the ansatz degree.
    fn coordinates(
        &self,
        coords: &BTreeSet<Var>,
        lambda: &RationalFunction,
        functions: &[RationalFunction],
    ) -> Option<Vec<RationalFunction>> {
        let mut x = vec![RationalFunction::zero(); 1 + self.functions * self.monomials.len()];
        if lambda.vars().iter().any(|v| coords.contains(v)) {
            return None;
        }
        x[0] = lambda.clone();
        for (fi, f) in functions.iter().enumerate() {
            for (mono, c) in coord_coefficients(f, coords)? {
                let k = self.monomials.iter().position(|m| *m == mono)?;
                x[self.column(fi, k)] = c;
            }
        }
        Some(x)
    }

    fn contains(&self, x: &[RationalFunction]) -> bool {
        let diff: Vec<RationalFunction> = x.iter().zip(&self.particular).map(|(a, b)| a - b).collect();
        reduce_against(&diff, &self.basis).iter().all(RationalFunction::is_zero)
    }
}

/// Splits a rational function polynomial in `coords` into coordinate-monomial
/// coefficients. `None` if a coordinate occurs in the denominator.
pub(crate) fn coord_coefficients(
    f: &RationalFunction,
    coords: &BTreeSet<Var>,
) -> Option<BTreeMap<Monomial, RationalFunction>> {
    if f.denom().vars().iter().any(|v| coords.contains(v)) {
        return None;
    }
    let den = RationalFunction::from_poly(f.denom().clone());
    Some(
        f.numer()
            .collect_coefficients(coords)
            .into_iter()
            .map(|(m, c)| (m, RationalFunction::from_poly(c).checked_div(&den).expect("nonzero")))
            .collect(),
    )
}

/// All monomials of degree ≤ d in `vars`, highest degree first.
fn monomials_up_to(vars: &[Var], d: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    for _ in 0..d {
        let mut next: BTreeSet<Monomial> = out.iter().cloned().collect();
        for m in &out {
            for &v in vars {
                next.insert(m.mul(&Monomial::var(v)));
            }
        }
        out = next.into_iter().collect();
    }
    out.sort();
    out.reverse();
    out
}

fn fresh_constants(ctx: &Context, count: usize) -> Vec<Var> {
    let mut out = Vec::with_capacity(count);
    let mut k = 1;
    while out.len() < count {
        let name = format!("c{k}");
        if ctx.lookup(&name).is_none() {
            out.push(ctx.intern(&name, SymbolKind::Parameter).expect("fresh name"));
        }
        k += 1;
    }
    out
}

/// Builds and solves the linear system "every coordinate coefficient of every
/// residual component vanishes" for unknown ansatz coefficients.
fn solve_ansatz(
    chart: &Chart,
    functions: usize,
    degree: u32,
    residual: impl Fn(&RationalFunction, &[RationalFunction]) -> TensorField,
) -> Result<Option<AnsatzSpace>, PropError> {
    let ctx: &Arc<Context> = chart.ctx();
    let coords: BTreeSet<Var> = chart.coords().iter().copied().collect();
    let monomials = monomials_up_to(chart.coords(), degree);
    let lambda = ctx.fresh("lambda", SymbolKind::Unknown);
    let mut unknowns = vec![lambda];
    let mut funcs = Vec::with_capacity(functions);
    for _ in 0..functions {
        let mut f = MultiPoly::zero();
        for m in &monomials {
            let u = ctx.fresh("k", SymbolKind::Unknown);
            unknowns.push(u);
            f = &f + &MultiPoly::var(u).mul_monomial(m, &Rational::from_integer(1.into()));
        }
        funcs.push(RationalFunction::from_poly(f));
    }
    let column: BTreeMap<Var, usize> = unknowns.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let unknown_set: BTreeSet<Var> = unknowns.iter().copied().collect();

    let res = residual(&RationalFunction::var(lambda), &funcs);
    let mut matrix = Vec::new();
    let mut rhs = Vec::new();
    for (_, c) in res.nonzero() {
        for coeff in c.numer().collect_coefficients(&coords).into_values() {
            let mut row = vec![RationalFunction::zero(); unknowns.len()];
            let mut b = RationalFunction::zero();
            for (m, p) in coeff.collect_coefficients(&unknown_set) {
                match m.pairs() {
                    [] => b = -RationalFunction::from_poly(p),
                    [(u, 1)] => row[column[u]] = RationalFunction::from_poly(p),
                    _ => return Err(AlgebraError::Internal("ansatz residual is not linear".into()).into()),
                }
            }
            matrix.push(row);
            rhs.push(b);
        }
    }
    let sys = LinearSystem::new(matrix, rhs, unknowns)?;
    let (particular, nullspace, assumptions) = match linear_solve(&sys)? {
        Solution::Inconsistent { .. } => return Ok(None),
        Solution::Consistent {
            particular,
            nullspace,
            assumptions,
        } => (particular, nullspace, assumptions),
    };
    let (particular, basis) = canonical_affine(&particular, &nullspace);
    let constants = fresh_constants(ctx, basis.len());
    let mut assumptions = assumptions;
    for a in chart.assumptions() {
        if !assumptions.contains(a) {
            assumptions.push(a.clone());
        }
    }
    Ok(Some(AnsatzSpace {
        monomials,
        functions,
        particular,
        basis,
        constants,
        assumptions,
    }))
}

/// All polynomial Ricci solitons with `deg V^i ≤ d`.
#[derive(Clone, Debug)]
pub struct SolitonFamily {
    pub vector: VectorField,
    pub lambda: RationalFunction,
    pub constants: Vec<Var>,
    pub assumptions: Vec<MultiPoly>,
    space: AnsatzSpace,
    coords: BTreeSet<Var>,
}

impl SolitonFamily {
    /// Whether `(V, λ)` is a member for some value of the free constants.
    pub fn contains(&self, v: &VectorField, lambda: &RationalFunction) -> bool {
        self.space
            .coordinates(&self.coords, lambda, &v.comps)
            .is_some_and(|x| self.space.contains(&x))
    }

    pub fn dimension(&self) -> usize {
        self.constants.len()
    }
}

pub fn solve_soliton_ansatz(
    g: &MetricField,
    curv: &Curvature,
    degree: u32,
) -> Result<Option<SolitonFamily>, PropError> {
    let chart = g.chart();
    let n = chart.dim();
    let space = solve_ansatz(chart, n, degree, |lambda, funcs| {
        soliton_residual(g, curv, &VectorField::new(funcs.to_vec()), lambda)
    })?;
    let Some(space) = space else { return Ok(None) };
    let x = space.general_member();
    let vector = VectorField::new((0..n).map(|i| space.function(&x, i)).collect());
    let lambda = x[0].clone();
    if !soliton_residual(g, curv, &vector, &lambda).is_zero() {
        return Err(AlgebraError::Internal("soliton family fails its equation".into()).into());
    }
    Ok(Some(SolitonFamily {
        vector,
        lambda,
        constants: space.constants.clone(),
        assumptions: space.assumptions.clone(),
        coords: chart.coords().iter().copied().collect(),
        space,
    }))
}

/// All polynomial gradient solitons with `deg f ≤ d`.
#[derive(Clone, Debug)]
pub struct GradientSolitonFamily {
    pub potential: ScalarField,
    pub lambda: RationalFunction,
    pub constants: Vec<Var>,
    pub assumptions: Vec<MultiPoly>,
    space: AnsatzSpace,
    coords: BTreeSet<Var>,
}

impl GradientSolitonFamily {
    pub fn contains(&self, f: &ScalarField, lambda: &RationalFunction) -> bool {
        self.space
            .coordinates(&self.coords, lambda, std::slice::from_ref(&f.0))
            .is_some_and(|x| self.space.contains(&x))
    }

    pub fn dimension(&self) -> usize {
        self.constants.len()
    }
}

pub fn solve_gradient_soliton(
    g: &MetricField,
    curv: &Curvature,
    degree: u32,
) -> Result<Option<GradientSolitonFamily>, PropError> {
    let chart = g.chart();
    let space = solve_ansatz(chart, 1, degree, |lambda, funcs| {
        gradient_residual(g, curv, &ScalarField(funcs[0].clone()), lambda)
    })?;
    let Some(space) = space else { return Ok(None) };
    let x = space.general_member();
    let potential = ScalarField(space.function(&x, 0));
    let lambda = x[0].clone();
    if !gradient_residual(g, curv, &potential, &lambda).is_zero() {
        return Err(AlgebraError::Internal("gradient family fails its equation".into()).into());
    }
    Ok(Some(GradientSolitonFamily {
        potential,
        lambda,
        constants: space.constants.clone(),
        assumptions: space.assumptions.clone(),
        coords: chart.coords().iter().copied().collect(),
        space,
    }))
}
