//! Command pipelines shared by the CLI, the tests and the browser demo.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{builtin, parse_with, two_sym_n, GeometryFile, GeometryKind, InputError, Item, Report};
use crate::algebra::{Rational, RationalFunction, SymbolKind, Var};
use crate::chart::{curvature, invert, weyl, Curvature, MetricField};
use crate::homog::{
    alg_curvature, alg_ricci, alg_scalar, alg_symmetry_classify, invariant_metric_space, isotropy_representation,
    nomizu_map, same_family, signature,
};
use crate::props::{
    ambrose_singer_residuals, check_parallel_null, class_a_conditions, class_b_conditions, conformally_flat_conditions,
    einstein_conditions, modified_connection_checks, ricci_flat_conditions, soliton_residual, solve_gradient_soliton,
    solve_soliton_ansatz, symmetry_degree, ConditionSet, PropError, SolitonKind, SymmetryDegree,
};

#[derive(Clone, Debug, PartialEq)]
pub enum Property {
    Einstein,
    RicciFlat,
    ConformallyFlat,
    ClassA,
    ClassB,
    TwoSymmetric,
    ParallelNull { vector: String },
    Soliton { vector: String, lambda: String },
    AmbroseSinger { structure: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveTarget {
    Soliton,
    GradientSoliton,
}

/// A report plus the verdict used for the exit status.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub holds: bool,
}

fn conditions_item(
    report: &mut Report,
    name: &str,
    c: Result<ConditionSet, PropError>,
    g: &MetricField,
) -> Option<ConditionSet> {
    let ctx = g.chart().ctx();
    match c {
        Ok(c) => {
            report.push(name, Item::conditions(&c, ctx));
            Some(c)
        }
        Err(e) => {
            report.push(name, Item::text(format!("undetermined: {e}")));
            None
        }
    }
}

fn symmetry_item(report: &mut Report, g: &MetricField, kmax: usize) -> Option<usize> {
    let ctx = g.chart().ctx();
    match symmetry_degree(g, kmax) {
        SymmetryDegree::Exact { k, witness } => {
            report.push("symmetry degree", Item::Integer { value: k as i64 });
            if let Some((idx, c)) = witness {
                let idx: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
                report.push(
                    "nonzero lower derivative",
                    Item::text(format!("[{}] = {}", idx.join(","), c.display(ctx))),
                );
            }
            Some(k)
        }
        SymmetryDegree::ExceedsKmax { kmax } => {
            report.push("symmetry degree", Item::text(format!("exceeds {kmax}")));
            None
        }
    }
}

/// Numeric spot check of the symbolic results: at random rational points the
/// evaluated scalar curvature must equal the trace of the evaluated Ricci
/// tensor against the numerically inverted metric, and the first Bianchi sum
/// must vanish.
fn oracle(g: &MetricField, curv: &Curvature, seed: u64, points: usize) -> Result<usize, String> {
    let chart = g.chart();
    let n = g.dim();
    let mut vars: Vec<Var> = chart.coords().to_vec();
    vars.extend(
        g.tensor()
            .components()
            .iter()
            .flat_map(|c| c.vars())
            .filter(|v| v.kind() == SymbolKind::Parameter),
    );
    vars.sort();
    vars.dedup();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut ok = 0;
    let mut attempts = 0;
    while ok < points && attempts < points * 20 {
        attempts += 1;
        let point: BTreeMap<Var, Rational> = vars
            .iter()
            .map(|&v| {
                (
                    v,
                    Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into()),
                )
            })
            .collect();
        let eval = |f: &RationalFunction| f.eval(&point).ok();
        let Some(gm) = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| eval(g.get(i, j)).map(RationalFunction::constant))
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        let Some((ginv, _)) = invert(&gm) else { continue };
        let Some(rho) = curv.ricci.eval(&point).ok() else {
            continue;
        };
        let Some(tau) = eval(&curv.scalar) else { continue };
        let mut trace = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                trace += ginv[i][j].constant_value().expect("constant") * &rho[i * n + j];
            }
        }
        if trace != tau {
            return Err(format!("scalar curvature disagrees at {point:?}"));
        }
        let Some(r) = curv.riemann.eval(&point).ok() else {
            continue;
        };
        let at = |i: usize, j: usize, k: usize, l: usize| &r[((i * n + j) * n + k) * n + l];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        if !(at(i, j, k, l) + at(i, k, l, j) + at(i, l, j, k)).is_zero() {
                            return Err("first Bianchi identity fails numerically".into());
                        }
                    }
                }
            }
        }
        ok += 1;
    }
    Ok(ok)
}

/// Full curvature dossier of a chart metric, or the invariant dossier of a
/// Lie algebra file.
pub fn analyze(text: &str, kmax: usize, seed: Option<u64>) -> Result<Report, InputError> {
    let file = GeometryFile::parse(text)?;
    if file.kind == GeometryKind::LieAlgebra {
        return hom(text, &[], kmax);
    }
    let g = file.metric_field()?;
    let ctx = g.chart().ctx().clone();
    let mut report = Report::new("analyze", text);
    let curv = curvature(&g);
    report.assume(g.chart().assumptions(), &ctx);
    report.push("dimension", Item::Integer { value: g.dim() as i64 });
    report.push("metric", Item::tensor(g.tensor(), &ctx));
    report.push("inverse metric", Item::tensor(g.inverse(), &ctx));
    report.push("determinant", Item::expression(g.det(), &ctx));
    report.push("connection", Item::tensor(curv.connection.tensor(), &ctx));
    report.push("riemann", Item::tensor(&curv.riemann, &ctx));
    report.push("ricci", Item::tensor(&curv.ricci, &ctx));
    report.push("scalar curvature", Item::expression(&curv.scalar, &ctx));
    if g.dim() == 4 {
        let w = weyl(&g, &curv.riemann_lowered, &curv.ricci, &curv.scalar)?;
        report.push("weyl", Item::tensor(&w, &ctx));
    }
    symmetry_item(&mut report, &g, kmax);
    conditions_item(&mut report, "einstein", einstein_conditions(&g, &curv), &g);
    conditions_item(&mut report, "ricci-flat", ricci_flat_conditions(&g, &curv), &g);
    if g.dim() == 4 {
        conditions_item(
            &mut report,
            "conformally-flat",
            conformally_flat_conditions(&g, &curv),
            &g,
        );
    }
    conditions_item(&mut report, "class-a", class_a_conditions(&g, &curv), &g);
    conditions_item(&mut report, "class-b", class_b_conditions(&g, &curv), &g);
    for (name, _) in &file.vectors {
        let v = file.vector(name)?;
        let pn = check_parallel_null(&g, &curv.connection, &v);
        report.push(format!("vector {name} parallel"), Item::Flag { value: pn.parallel });
        report.push(format!("vector {name} null"), Item::Flag { value: pn.null });
    }
    if let Some(seed) = seed {
        const POINTS: usize = 25;
        match oracle(&g, &curv, seed, POINTS) {
            Ok(k) => report.push(
                "numeric oracle",
                Item::text(format!("{k} of {POINTS} random points agree")),
            ),
            Err(e) => report.push("numeric oracle", Item::text(format!("FAILED: {e}"))),
        }
    }
    Ok(report)
}

fn chart_file(text: &str) -> Result<(GeometryFile, MetricField), InputError> {
    let file = GeometryFile::parse(text)?;
    if file.kind != GeometryKind::ChartMetric {
        return Err(InputError::Invalid("this command needs a chart metric file".into()));
    }
    let g = file.metric_field()?;
    Ok((file, g))
}

pub fn check(text: &str, property: &Property, kmax: usize) -> Result<Outcome, InputError> {
    let (file, g) = chart_file(text)?;
    let ctx = g.chart().ctx().clone();
    let curv = curvature(&g);
    let mut report = Report::new("check", text);
    report.assume(g.chart().assumptions(), &ctx);
    let cond = |report: &mut Report, name: &str, c: Result<ConditionSet, PropError>| -> Result<bool, InputError> {
        let c = c?;
        report.push(name, Item::conditions(&c, &ctx));
        Ok(c.holds_identically())
    };
    let holds = match property {
        Property::Einstein => cond(&mut report, "einstein", einstein_conditions(&g, &curv))?,
        Property::RicciFlat => cond(&mut report, "ricci-flat", ricci_flat_conditions(&g, &curv))?,
        Property::ConformallyFlat => cond(&mut report, "conformally-flat", conformally_flat_conditions(&g, &curv))?,
        Property::ClassA => cond(&mut report, "class-a", class_a_conditions(&g, &curv))?,
        Property::ClassB => cond(&mut report, "class-b", class_b_conditions(&g, &curv))?,
        Property::TwoSymmetric => {
            let k = symmetry_item(&mut report, &g, kmax);
            let two = k == Some(2);
            report.push("two-symmetric", Item::Flag { value: two });
            two
        }
        Property::ParallelNull { vector } => {
            let v = file.vector(vector)?;
            let pn = check_parallel_null(&g, &curv.connection, &v);
            report.push("parallel", Item::Flag { value: pn.parallel });
            report.push("null", Item::Flag { value: pn.null });
            pn.parallel && pn.null
        }
        Property::Soliton { vector, lambda } => {
            let v = file.vector(vector)?;
            let lam = parse_with(
                lambda,
                &|n: &str| ctx.lookup(n).filter(|v| v.kind() != SymbolKind::Unknown),
                1,
                1,
            )?;
            let r = soliton_residual(&g, &curv, &v, &lam);
            report.push("lambda", Item::expression(&lam, &ctx));
            report.push("residual", Item::tensor(&r, &ctx));
            if let Some(l) = lam.constant_value() {
                report.push("type", Item::text(SolitonKind::of(&l).as_str()));
            }
            r.is_zero()
        }
        Property::AmbroseSinger { structure } => {
            let t = file.structure(structure)?;
            let a = ambrose_singer_residuals(&g, &curv, &t);
            let m = modified_connection_checks(&g, &curv, &t);
            report.push("AS1 residual", Item::tensor(&a.as1, &ctx));
            report.push("AS2 residual", Item::tensor(&a.as2, &ctx));
            report.push("AS3 residual", Item::tensor(&a.as3, &ctx));
            report.push("modified connection: g parallel", Item::Flag { value: m.dg.is_zero() });
            report.push("modified connection: R parallel", Item::Flag { value: m.dr.is_zero() });
            report.push("modified connection: T parallel", Item::Flag { value: m.dt.is_zero() });
            if a.all_zero() != m.all_zero() {
                return Err(InputError::Invalid(
                    "Ambrose-Singer residuals and the modified connection disagree".into(),
                ));
            }
            a.all_zero()
        }
    };
    report.push("holds", Item::Flag { value: holds });
    Ok(Outcome { report, holds })
}

pub fn solve(text: &str, target: SolveTarget, degree: u32) -> Result<Outcome, InputError> {
    let (_, g) = chart_file(text)?;
    let ctx = g.chart().ctx().clone();
    let curv = curvature(&g);
    let mut report = Report::new("solve", text);
    report.assume(g.chart().assumptions(), &ctx);
    report.push("ansatz degree", Item::Integer { value: degree as i64 });
    let names = |vs: &[Var]| Item::List {
        values: vs.iter().map(|v| ctx.name(*v)).collect(),
    };
    let found = match target {
        SolveTarget::Soliton => match solve_soliton_ansatz(&g, &curv, degree)? {
            None => false,
            Some(fam) => {
                report.assume(&fam.assumptions, &ctx);
                report.push("vector field", Item::tensor(&fam.vector.as_tensor(), &ctx));
                report.push("lambda", Item::expression(&fam.lambda, &ctx));
                report.push("free constants", names(&fam.constants));
                if let Some(l) = fam.lambda.constant_value() {
                    report.push("type", Item::text(SolitonKind::of(&l).as_str()));
                }
                true
            }
        },
        SolveTarget::GradientSoliton => match solve_gradient_soliton(&g, &curv, degree)? {
            None => false,
            Some(fam) => {
                report.assume(&fam.assumptions, &ctx);
                report.push("potential", Item::expression(&fam.potential.0, &ctx));
                report.push("lambda", Item::expression(&fam.lambda, &ctx));
                report.push("free constants", names(&fam.constants));
                if let Some(l) = fam.lambda.constant_value() {
                    report.push("type", Item::text(SolitonKind::of(&l).as_str()));
                }
                true
            }
        },
    };
    if !found {
        report.push("result", Item::text("no solution within the ansatz"));
    }
    Ok(Outcome { report, holds: found })
}

/// Invariant geometry of a Lie algebra file. `overrides` substitute values for
/// parameters after the file's own substitutions (e.g. numeric metric
/// constants for a signature check).
pub fn hom(text: &str, overrides: &[(String, String)], kmax: usize) -> Result<Report, InputError> {
    let file = GeometryFile::parse(text)?;
    if file.kind != GeometryKind::LieAlgebra {
        return Err(InputError::Invalid("this command needs a Lie algebra file".into()));
    }
    let ctx = file.ctx().clone();
    let mut report = Report::new("hom", text);
    let assumed: Vec<_> = file.assumptions.iter().map(|a| a.numer().primitive()).collect();
    report.assume(&assumed, &ctx);
    let dec_raw = file.decomposition_raw()?;
    report.push("jacobi", Item::text("ok"));
    report.push(
        "reductive",
        Item::Flag {
            value: dec_raw.is_reductive(),
        },
    );
    let psi_raw = isotropy_representation(&dec_raw);
    let n = dec_raw.m_dim();
    let family = invariant_metric_space(&ctx, &psi_raw, n, &[])?;
    report.push("invariant metric family", Item::matrix(&family.metric, &ctx));
    report.push(
        "family parameters",
        Item::List {
            values: family.params.iter().map(|v| ctx.name(*v)).collect(),
        },
    );
    if let Some(declared) = file.hom_metric_raw() {
        let same = same_family(&declared, &file.metric_params(), &family.metric, &family.params);
        report.push(
            "declared metric is the general invariant metric",
            Item::Flag { value: same },
        );
    }

    let mut subs: Vec<(Var, RationalFunction)> = Vec::new();
    for (name, value) in overrides {
        let v = ctx
            .lookup(name)
            .filter(|v| v.kind() == SymbolKind::Parameter)
            .ok_or_else(|| InputError::Invalid(format!("`{name}` is not a parameter")))?;
        let e = parse_with(
            value,
            &|n: &str| ctx.lookup(n).filter(|v| v.kind() == SymbolKind::Parameter),
            1,
            1,
        )?;
        subs.push((v, e));
    }
    let mut dec = file.decomposition()?;
    let mut g = match file.hom_metric()? {
        Some(g) => g,
        None => family.metric.clone(),
    };
    for (v, e) in &subs {
        dec = dec.substitute(*v, e)?;
        for row in g.iter_mut() {
            for c in row.iter_mut() {
                *c = c.substitute(*v, e)?;
            }
        }
    }
    let psi = isotropy_representation(&dec);
    for (h, p) in dec.h_names().iter().zip(&psi) {
        report.push(format!("isotropy {h}"), Item::matrix(p, &ctx));
    }
    report.push("metric", Item::matrix(&g, &ctx));
    let (_, det) = invert(&g).ok_or(crate::homog::HomError::Degenerate)?;
    report.push("determinant", Item::expression(&det, &ctx));
    let numeric: Option<Vec<Vec<Rational>>> = g
        .iter()
        .map(|r| r.iter().map(RationalFunction::constant_value).collect())
        .collect();
    match numeric {
        Some(m) => {
            let s = signature(&m);
            report.push("signature", Item::text(format!("({}, {})", s.positive, s.negative)));
        }
        None => report.push("signature", Item::text("symbolic; pass numeric values to decide")),
    }
    let lam = nomizu_map(&ctx, &dec, &g)?;
    for (i, m) in lam.m.iter().enumerate() {
        report.push(format!("Lambda[{}]", i + 1), Item::matrix(m, &ctx));
    }
    let curv = alg_curvature(&dec, &lam);
    for i in 0..n {
        for j in i + 1..n {
            let r = curv.get(i, j);
            if r.iter().flatten().any(|c| !c.is_zero()) {
                report.push(format!("R{}{}", i + 1, j + 1), Item::matrix(r, &ctx));
            }
        }
    }
    let rho = alg_ricci(&curv);
    report.push("ricci", Item::matrix(&rho, &ctx));
    report.push("scalar curvature", Item::expression(&alg_scalar(&g, &rho)?, &ctx));
    let sym = alg_symmetry_classify(&lam, &curv, &g, kmax);
    for (k, c) in sym.conditions.iter().enumerate() {
        let name = if k == 0 {
            "nabla R = 0".to_string()
        } else {
            format!("nabla^{} R = 0", k + 1)
        };
        report.push(name, Item::conditions(c, &ctx));
    }
    match sym.degree {
        Some(k) => report.push("symmetry degree", Item::Integer { value: k as i64 }),
        None => report.push(
            "symmetry degree",
            Item::text(format!("exceeds {kmax} for generic parameters")),
        ),
    }
    report.push(
        "locally symmetric",
        Item::Flag {
            value: sym.locally_symmetric(),
        },
    );
    Ok(report)
}

/// Runs a registered case with its default computation.
pub fn run_builtin(
    name: &str,
    kmax: usize,
    h: Option<&[String]>,
    f: Option<&[Vec<String>]>,
) -> Result<Outcome, InputError> {
    let b = builtin(name).ok_or_else(|| InputError::Invalid(format!("unknown built-in `{name}`")))?;
    let text = match b.source {
        Some(src) => src.to_string(),
        None => {
            let h = h
                .map(<[String]>::to_vec)
                .unwrap_or_else(|| vec!["a".into(), "b".into()]);
            let f = f
                .map(<[Vec<String>]>::to_vec)
                .unwrap_or_else(|| vec![vec!["p".into(), "q".into()], vec!["q".into(), "s".into()]]);
            two_sym_n(&h, &f)?
        }
    };
    let mut outcome = match name {
        "as-case1" => check(&text, &Property::AmbroseSinger { structure: "T".into() }, kmax)?,
        _ => Outcome {
            report: analyze(&text, kmax, None)?,
            holds: true,
        },
    };
    outcome.report.computation = format!("builtin {name}");
    Ok(outcome)
}
