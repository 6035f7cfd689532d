//! Acceptance suite. Every expected value below is typed in independently of
//! the engine; all comparisons are exact. Prints one line per criterion.

use std::collections::BTreeMap;
use std::time::Instant;

use geomcas::algebra::{Context, MultiPoly, RationalFunction, Var};
use geomcas::chart::{
    covariant_derivative, curvature, lie_derivative_metric, lower_first, weyl, Curvature, MetricField, TensorField,
    VectorField,
};
use geomcas::homog::{
    alg_curvature, alg_ricci, alg_scalar, alg_symmetry_classify, curvature_tensor, invariant_derive,
    invariant_metric_space, isotropy_representation, nomizu_map, same_family, signature, Matrix,
};
use geomcas::io::{builtin, parse_expression, two_sym_n, GeometryFile};
use geomcas::props::{
    ambrose_singer_residuals, check_parallel_null, class_a_conditions, class_b_conditions, conformally_flat_conditions,
    curvature_derivatives, einstein_conditions, modified_connection_checks, ricci_flat_conditions, soliton_residual,
    solve_gradient_soliton, solve_soliton_ansatz, symmetry_degree, ConditionSet, SymmetryDegree,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Rational = BigRational;
type Outcome = Result<Vec<String>, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ex(ctx: &Context, s: &str) -> RationalFunction {
    parse_expression(s, ctx).unwrap_or_else(|e| panic!("`{s}`: {e}"))
}

fn mat(ctx: &Context, rows: &[&[&str]]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|s| ex(ctx, s)).collect()).collect()
}

fn show(m: &Matrix, ctx: &Context) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| r.iter().map(|c| c.display(ctx)).collect::<Vec<_>>().join(", "))
        .collect();
    format!("[{}]", rows.join("; "))
}

fn same_matrix(label: &str, got: &Matrix, want: &Matrix, ctx: &Context) -> Result<(), String> {
    ensure(got == want, || {
        format!("{label}: got {} expected {}", show(got, ctx), show(want, ctx))
    })
}

fn builtin_file(name: &str) -> GeometryFile {
    GeometryFile::parse(builtin(name).and_then(|b| b.source).expect("bundled")).expect("parses")
}

fn poly(ctx: &Context, s: &str) -> MultiPoly {
    ex(ctx, s).numer().clone()
}

fn expect_conditions(label: &str, got: &ConditionSet, want: &[&str], ctx: &Context) -> Result<(), String> {
    let want = ConditionSet::from_raw(want.iter().map(|s| poly(ctx, s)).collect(), &got.assumptions);
    ensure(got.equivalent(&want), || {
        format!("{label}: got {:?} expected {:?}", got.display(ctx), want.display(ctx))
    })
}

/// Sets `t[idx]` and every image under the listed index permutations with signs.
fn set_sym(t: &mut TensorField, idx: [usize; 4], v: &RationalFunction, images: &[([usize; 4], i64)]) {
    for (perm, sign) in images {
        let target: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
        t.set(&target, v.scale(&Rational::from_integer(BigInt::from(*sign))));
    }
}

// ---------------------------------------------------------------- criteria 1–7

struct TwoSym {
    file: GeometryFile,
    g: MetricField,
    curv: Curvature,
}

fn two_sym4() -> TwoSym {
    let file = builtin_file("two-sym4");
    let g = file.metric_field().unwrap();
    let curv = curvature(&g);
    TwoSym { file, g, curv }
}

fn criterion_1(c: &TwoSym) -> Outcome {
    let ctx = c.file.ctx();
    let mut want = TensorField::zeros(4, 1, 2);
    let f24 = ex(ctx, "a*x2*x4 + p*x2 + q*x3");
    let f34 = ex(ctx, "b*x3*x4 + s*x3 + q*x2");
    // ∇_{∂m}∂j = Γ^k_{mj} ∂k, stored at [k, m, j]
    for (k, m, j, v) in [
        (0, 1, 3, f24.clone()),
        (0, 3, 1, f24.clone()),
        (0, 2, 3, f34.clone()),
        (0, 3, 2, f34.clone()),
        (0, 3, 3, ex(ctx, "(a*x2^2 + b*x3^2)/2")),
        (1, 3, 3, -f24),
        (2, 3, 3, -f34),
    ] {
        want.set(&[k, m, j], v);
    }
    let got = c.curv.connection.tensor();
    ensure(got == &want, || {
        let extra: Vec<String> = got
            .nonzero()
            .filter(|(i, v)| want.get(i) != *v)
            .map(|(i, v)| format!("{i:?}={}", v.display(ctx)))
            .collect();
        format!("connection differs at {}", extra.join(", "))
    })?;
    Ok(vec![format!("{} nonzero Christoffel symbols", got.nonzero().count())])
}

fn criterion_2(c: &TwoSym) -> Outcome {
    let ctx = c.file.ctx();
    let mut want = TensorField::zeros(4, 1, 3);
    // R(∂k,∂l)∂j = R^i_{jkl} ∂i, stored at [i, j, k, l]
    let entries = [
        ([0, 1, 1, 3], "a*x4 + p"),
        ([0, 2, 1, 3], "q"),
        ([1, 3, 1, 3], "-(a*x4 + p)"),
        ([2, 3, 1, 3], "-q"),
        ([0, 1, 2, 3], "q"),
        ([0, 2, 2, 3], "b*x4 + s"),
        ([1, 3, 2, 3], "-q"),
        ([2, 3, 2, 3], "-(b*x4 + s)"),
    ];
    for (idx, s) in entries {
        let v = ex(ctx, s);
        want.set(&idx, v.clone());
        want.set(&[idx[0], idx[1], idx[3], idx[2]], -v);
    }
    ensure(c.curv.riemann == want, || "Riemann tensor differs".into())?;
    let mut rho = TensorField::zeros(4, 0, 2);
    rho.set(&[3, 3], ex(ctx, "-(a + b)*x4 - (s + p)"));
    ensure(c.curv.ricci == rho, || "Ricci tensor differs".into())?;
    ensure(c.curv.scalar.is_zero(), || {
        format!("scalar curvature {}", c.curv.scalar.display(ctx))
    })?;
    Ok(vec!["R, rho and tau = 0 as stated".into()])
}

fn criterion_3(c: &TwoSym) -> Outcome {
    let ctx = c.file.ctx();
    let w = weyl(&c.g, &c.curv.riemann_lowered, &c.curv.ricci, &c.curv.scalar).map_err(|e| e.to_string())?;
    let images: [([usize; 4], i64); 8] = [
        ([0, 1, 2, 3], 1),
        ([1, 0, 2, 3], -1),
        ([0, 1, 3, 2], -1),
        ([1, 0, 3, 2], 1),
        ([2, 3, 0, 1], 1),
        ([3, 2, 0, 1], -1),
        ([2, 3, 1, 0], -1),
        ([3, 2, 1, 0], 1),
    ];
    let half = ex(ctx, "((b - a)*x4 + s - p)/2");
    let mut want = TensorField::zeros(4, 0, 4);
    set_sym(&mut want, [1, 3, 1, 3], &half, &images);
    set_sym(&mut want, [2, 3, 2, 3], &-half, &images);
    set_sym(&mut want, [1, 3, 2, 3], &ex(ctx, "-q"), &images);
    ensure(w == want, || {
        let diff: Vec<String> = TensorField::indices(4, 4)
            .filter(|i| w.get(i) != want.get(i))
            .map(|i| format!("{i:?}: {}", w.get(&i).display(ctx)))
            .collect();
        format!("Weyl differs at {}", diff.join(", "))
    })?;
    Ok(vec![format!("{} nonzero Weyl components", w.nonzero().count())])
}

fn criterion_4(c: &TwoSym) -> Outcome {
    let ctx = c.file.ctx();
    let e = |r: Result<ConditionSet, geomcas::props::PropError>| r.map_err(|e| e.to_string());
    let einstein = e(einstein_conditions(&c.g, &c.curv))?;
    let flat = e(ricci_flat_conditions(&c.g, &c.curv))?;
    let conf = e(conformally_flat_conditions(&c.g, &c.curv))?;
    let class_a = e(class_a_conditions(&c.g, &c.curv))?;
    let class_b = e(class_b_conditions(&c.g, &c.curv))?;
    expect_conditions("einstein", &einstein, &["a + b", "s + p"], ctx)?;
    expect_conditions("ricci-flat", &flat, &["a + b", "s + p"], ctx)?;
    ensure(einstein.equivalent(&flat), || "einstein and ricci-flat differ".into())?;
    expect_conditions("conformally-flat", &conf, &["b - a", "s - p", "q"], ctx)?;
    expect_conditions("class-a", &class_a, &["a + b"], ctx)?;
    ensure(class_b.holds_identically(), || {
        format!("class-b {:?}", class_b.display(ctx))
    })?;
    Ok(vec![
        format!("einstein = ricci-flat = {:?}", einstein.display(ctx)),
        format!("conformally-flat = {:?}", conf.display(ctx)),
        format!("class-a = {:?}, class-b = always", class_a.display(ctx)),
    ])
}

fn criterion_5(c: &TwoSym) -> Outcome {
    let ctx = c.file.ctx();
    let degree = symmetry_degree(&c.g, 3);
    let SymmetryDegree::Exact {
        k: 2,
        witness: Some((idx, value)),
    } = &degree
    else {
        return Err(format!("symmetry degree {degree:?}"));
    };
    let d = curvature_derivatives(&c.g, &c.curv, 2);
    ensure(!value.is_zero() && d[1].get(idx) == value, || {
        "witness is not a component of nabla R".into()
    })?;
    ensure(d[2].is_zero(), || "nabla^2 R is not zero".into())?;
    let n = c.file.vector("N").map_err(|e| e.to_string())?;
    ensure(n == VectorField::coordinate(4, 0), || {
        "N is not the first coordinate field".into()
    })?;
    let pn = check_parallel_null(&c.g, &c.curv.connection, &n);
    ensure(pn.parallel && pn.null, || format!("{pn:?}"))?;
    Ok(vec![format!(
        "degree 2, witness nabla R{:?} = {}; d/dx1 parallel and null",
        idx.iter().map(|i| i + 1).collect::<Vec<_>>(),
        value.display(ctx)
    )])
}

fn criterion_6(c: &TwoSym) -> Outcome {
    let ctx = c.file.ctx();
    let v = VectorField::new(
        ["(a + b)/4*x4^2 + (s + p)/2*x4 + 2*c*x1", "c*x2", "c*x3", "0"]
            .iter()
            .map(|s| ex(ctx, s))
            .collect(),
    );
    let lambda = ex(ctx, "2*c");
    ensure(soliton_residual(&c.g, &c.curv, &v, &lambda).is_zero(), || {
        "soliton residual is nonzero".into()
    })?;
    let family = solve_soliton_ansatz(&c.g, &c.curv, 2)
        .map_err(|e| e.to_string())?
        .ok_or("no degree-2 soliton")?;
    ensure(family.contains(&v, &lambda), || {
        "family misses the stated soliton".into()
    })?;

    let grad = solve_gradient_soliton(&c.g, &c.curv, 3)
        .map_err(|e| e.to_string())?
        .ok_or("no degree-3 gradient soliton")?;
    ensure(grad.lambda.is_zero(), || {
        format!("lambda = {}", grad.lambda.display(ctx))
    })?;
    ensure(grad.constants.len() == 2, || {
        format!("{} free constants", grad.constants.len())
    })?;
    let known = ex(ctx, "(a + b)/12*x4^3 + (p + s)/4*x4^2");
    let rest = &grad.potential.0 - &known;
    let x4 = ex(ctx, "x4");
    let k: Vec<RationalFunction> = grad.constants.iter().map(|v| RationalFunction::var(*v)).collect();
    let forms = [&(&k[0] * &x4) + &k[1], &(&k[1] * &x4) + &k[0]];
    ensure(forms.contains(&rest), || {
        format!("f = {}", grad.potential.0.display(ctx))
    })?;
    Ok(vec![
        format!(
            "soliton family of dimension {} contains V with lambda = 2c",
            family.dimension()
        ),
        format!("gradient: lambda = 0, f = {}", grad.potential.0.display(ctx)),
    ])
}

fn criterion_7() -> Outcome {
    let file = builtin_file("as-case1");
    let ctx = file.ctx();
    let g = file.metric_field().unwrap();
    let curv = curvature(&g);
    let t = file.structure("T").unwrap();
    let want_t = [
        ([0, 3, 0], "b/(2*(b*x4 + s))"),
        ([0, 3, 3], "b*x3^2/2"),
        ([3, 3, 3], "-b/(2*(b*x4 + s))"),
    ];
    for (idx, s) in want_t {
        ensure(t.get(&idx) == &ex(ctx, s), || format!("T{idx:?}"))?;
    }
    let res = ambrose_singer_residuals(&g, &curv, &t);
    ensure(res.as1.is_zero(), || "AS1 residual nonzero".into())?;
    ensure(res.as2.is_zero(), || "AS2 residual nonzero".into())?;
    let want = ex(ctx, "3*b^2/(4*(b*x4 + s)^2)");
    let got = res.as3.get(&[3, 3, 3, 3]);
    ensure(got == &want, || format!("AS3 component {}", got.display(ctx)))?;
    let m = modified_connection_checks(&g, &curv, &t);
    ensure(m.dg.is_zero() && m.dr.is_zero(), || {
        "modified connection: g or R not parallel".into()
    })?;
    ensure(m.dt == res.as3, || "nabla~ T differs from the AS3 residual".into())?;
    Ok(vec![format!(
        "AS1 = AS2 = 0, AS3[4,4,4,4] = {}; nabla~ T agrees",
        got.display(ctx)
    )])
}

// ---------------------------------------------------------------- criterion 8

fn criterion_8() -> Outcome {
    let file = builtin_file("a1-homogeneous");
    let ctx = file.ctx();
    let dec = file.decomposition().map_err(|e| e.to_string())?;
    let psi = isotropy_representation(&dec);
    let h1 = mat(
        ctx,
        &[
            &["0", "-1", "0", "0"],
            &["0", "0", "0", "0"],
            &["0", "0", "0", "0"],
            &["1", "0", "-1/2", "0"],
        ],
    );
    ensure(psi.len() == 1, || format!("{} isotropy matrices", psi.len()))?;
    same_matrix("H1", &psi[0], &h1, ctx)?;

    let g = mat(
        ctx,
        &[
            &["a", "0", "-a/2", "0"],
            &["0", "b", "c", "a"],
            &["-a/2", "c", "d", "0"],
            &["0", "a", "0", "0"],
        ],
    );
    let abcd: Vec<Var> = ["a", "b", "c", "d"].iter().map(|n| ctx.lookup(n).unwrap()).collect();
    let family = invariant_metric_space(ctx, &psi, 4, &[]).map_err(|e| e.to_string())?;
    ensure(same_family(&g, &abcd, &family.metric, &family.params), || {
        format!("invariant family {}", show(&family.metric, ctx))
    })?;

    let lam = nomizu_map(ctx, &dec, &g).map_err(|e| e.to_string())?;
    let printed_lambda2_32 = "-4*b*c/(a*(a - 4*d))";
    let lambda = [
        mat(
            ctx,
            &[
                &["0", "0", "0", "0"],
                &["0", "1", "0", "0"],
                &["0", "0", "0", "0"],
                &["0", "-b/a", "-c/a", "-1"],
            ],
        ),
        mat(
            ctx,
            &[
                &["0", "-8*b*d/(a*(a - 4*d))", "c/a", "1"],
                &["-1", "0", "1/2", "0"],
                &["0", printed_lambda2_32, "0", "0"],
                &["-b/a", "4*b*c/(a*(a - 4*d))", "-b/(2*a)", "0"],
            ],
        ),
        mat(
            ctx,
            &[
                &["0", "c/a", "0", "0"],
                &["0", "1/2", "0", "0"],
                &["0", "0", "0", "0"],
                &["-c/a", "-b/(2*a)", "0", "-1/2"],
            ],
        ),
        mat(ctx, &[&["0"; 4], &["0"; 4], &["0"; 4], &["0"; 4]]),
    ];
    let mut notes = Vec::new();
    // A mismatch is tolerated only where the printed matrix is provably wrong:
    // it must fail g-skewness (Λ(x) ∈ 𝔰𝔬(g)) while the computed one satisfies it.
    let skew = |m: &Matrix| -> bool {
        (0..4).all(|i| {
            (0..4).all(|j| {
                let mut s = RationalFunction::zero();
                for k in 0..4 {
                    s = &s + &(&(&m[k][i] * &g[k][j]) + &(&g[i][k] * &m[k][j]));
                }
                s.is_zero()
            })
        })
    };
    for (i, (got, want)) in lam.m.iter().zip(&lambda).enumerate() {
        if got == want {
            continue;
        }
        let diffs: Vec<(usize, usize)> = (0..4)
            .flat_map(|r| (0..4).map(move |c| (r, c)))
            .filter(|&(r, c)| got[r][c] != want[r][c])
            .collect();
        let erratum = i == 1 && diffs == [(2, 1)] && !skew(want) && skew(got);
        ensure(erratum, || {
            format!("Lambda[{}]: got {} expected {}", i + 1, show(got, ctx), show(want, ctx))
        })?;
        notes.push(format!(
            "Lambda[2](3,2): printed {printed_lambda2_32} is not g-skew; engine value {} is (erratum)",
            got[2][1].display(ctx)
        ));
    }

    let curv = alg_curvature(&dec, &lam);
    let r = |rows: &[&[&str]]| mat(ctx, rows);
    let z = ["0"; 4];
    let expected: [((usize, usize), Matrix); 6] = [
        (
            (0, 1),
            r(&[
                &["0", "b*(20*d + a)/(a*(a - 4*d))", "-c/a", "-1"],
                &["1", "0", "-1/2", "0"],
                &["0", "12*b/(a - 4*d)", "0", "0"],
                &["4*b/a", "-12*c*b/(a*(a - 4*d))", "b/a", "0"],
            ]),
        ),
        (
            (0, 2),
            r(&[&["0", "-c/a", "0", "0"], &z, &z, &["c/a", "0", "-c/(2*a)", "0"]]),
        ),
        ((0, 3), r(&[&["0", "-1", "0", "0"], &z, &z, &["1", "0", "-1/2", "0"]])),
        (
            (1, 2),
            r(&[
                &["0", "-b*(4*d + a)/(2*a*(a - 4*d))", "-c/(2*a)", "-1/2"],
                &["1/2", "-c/a", "-1/4", "0"],
                &["0", "-2*b/(a - 4*d)", "0", "0"],
                &["-b/a", "c*b*(3*a - 4*d)/(a^2*(a - 4*d))", "c^2/a^2", "c/a"],
            ]),
        ),
        ((1, 3), r(&[&z, &["0", "-1", "0", "0"], &z, &["0", "b/a", "c/a", "1"]])),
        (
            (2, 3),
            r(&[&["0", "1/2", "0", "0"], &z, &z, &["-1/2", "0", "1/4", "0"]]),
        ),
    ];
    for ((i, j), want) in &expected {
        same_matrix(&format!("R{}{}", i + 1, j + 1), curv.get(*i, *j), want, ctx)?;
    }
    let rho = alg_ricci(&curv);
    let want_rho = r(&[
        &["-2", "0", "1", "0"],
        &["0", "2*b*(a + 12*d)/(a*(a - 4*d))", "-2*c/a", "-2"],
        &["1", "-2*c/a", "-1/2", "0"],
        &["0", "-2", "0", "0"],
    ]);
    same_matrix("rho", &rho, &want_rho, ctx)?;
    let tau = alg_scalar(&g, &rho).map_err(|e| e.to_string())?;
    let sym = alg_symmetry_classify(&lam, &curv, &g, 2);
    expect_conditions("nabla R = 0", &sym.conditions[0], &["b"], ctx)?;
    expect_conditions("nabla^2 R = 0", &sym.conditions[1], &["b"], ctx)?;
    notes.push(format!(
        "tau = {}; nabla R = 0 and nabla^2 R = 0 both iff b = 0",
        tau.display(ctx)
    ));
    Ok(notes)
}

// ---------------------------------------------------------------- criterion 9

fn criterion_9() -> Outcome {
    let file = builtin_file("komrakov-1-4-1-9");
    let ctx = file.ctx();
    let dec = file.decomposition().map_err(|e| e.to_string())?;
    let psi = isotropy_representation(&dec);
    let family = invariant_metric_space(ctx, &psi, 4, &[]).map_err(|e| e.to_string())?;
    let display = mat(
        ctx,
        &[
            &["0", "0", "-a", "0"],
            &["0", "a", "0", "0"],
            &["-a", "0", "b", "c"],
            &["0", "0", "c", "d"],
        ],
    );
    let abcd: Vec<Var> = ["a", "b", "c", "d"].iter().map(|n| ctx.lookup(n).unwrap()).collect();
    ensure(same_family(&display, &abcd, &family.metric, &family.params), || {
        format!("invariant family {}", show(&family.metric, ctx))
    })?;

    let g = mat(
        ctx,
        &[
            &["0", "0", "-a", "0"],
            &["0", "a", "0", "0"],
            &["-a", "0", "b", "c"],
            &["0", "0", "c", "-9*a"],
        ],
    );
    let numeric: Vec<Vec<Rational>> = mat(
        ctx,
        &[
            &["0", "0", "-1", "0"],
            &["0", "1", "0", "0"],
            &["-1", "0", "0", "0"],
            &["0", "0", "0", "-9"],
        ],
    )
    .iter()
    .map(|r| r.iter().map(|c| c.constant_value().unwrap()).collect())
    .collect();
    let sig = signature(&numeric);
    ensure(sig.positive == 2 && sig.negative == 2, || format!("signature {sig:?}"))?;

    let lam = nomizu_map(ctx, &dec, &g).map_err(|e| e.to_string())?;
    let z = ["0"; 4];
    let lambda = [
        mat(ctx, &[&z, &z, &z, &z]),
        mat(
            ctx,
            &[
                &["0", "1", "c/(2*a)", "-9/2"],
                &["0", "0", "1", "0"],
                &z,
                &["0", "0", "1/2", "0"],
            ],
        ),
        mat(
            ctx,
            &[
                &["-1", "c/(2*a)", "(6*b*a - c^2)/(6*a^2)", "5*c/(2*a)"],
                &["0", "0", "c/a", "-9/2"],
                &["0", "0", "1", "0"],
                &["0", "-1/2", "-c/(6*a)", "0"],
            ],
        ),
        mat(
            ctx,
            &[
                &["0", "-9/2", "5*c/(2*a)", "-45/2"],
                &["0", "0", "-9/2", "0"],
                &z,
                &["0", "0", "5/2", "0"],
            ],
        ),
    ];
    for (i, (got, want)) in lam.m.iter().zip(&lambda).enumerate() {
        same_matrix(&format!("Lambda[{}]", i + 1), got, want, ctx)?;
    }

    let curv = alg_curvature(&dec, &lam);
    let r23 = mat(
        ctx,
        &[
            &["0", "6", "-2*c/a", "18"],
            &["0", "0", "6", "0"],
            &z,
            &["0", "0", "-2", "0"],
        ],
    );
    let r34 = mat(
        ctx,
        &[
            &["0", "-18", "6*c/a", "-54"],
            &["0", "0", "-18", "0"],
            &z,
            &["0", "0", "6", "0"],
        ],
    );
    for i in 0..4 {
        for j in i + 1..4 {
            let want = match (i, j) {
                (1, 2) => r23.clone(),
                (2, 3) => r34.clone(),
                _ => mat(ctx, &[&z, &z, &z, &z]),
            };
            same_matrix(&format!("R{}{}", i + 1, j + 1), curv.get(i, j), &want, ctx)?;
        }
    }
    let rho = alg_ricci(&curv);
    ensure(rho.iter().flatten().all(RationalFunction::is_zero), || {
        "not Ricci flat".into()
    })?;

    // (Λ[k]R)_{ij} as a matrix in (a, b): slots [a, b, i, j, k] of the derived tensor
    let r = curvature_tensor(&curv);
    let dr = invariant_derive(&lam, &r);
    for k in 0..4 {
        for i in 0..4 {
            for j in i + 1..4 {
                let got: Matrix = (0..4)
                    .map(|a| (0..4).map(|b| dr.get(&[a, b, i, j, k]).clone()).collect())
                    .collect();
                let want = match (k, i, j) {
                    (2, 1, 2) => r23.clone(),
                    (2, 2, 3) => r34.clone(),
                    _ => mat(ctx, &[&z, &z, &z, &z]),
                };
                same_matrix(&format!("(Lambda[{}]R){}{}", k + 1, i + 1, j + 1), &got, &want, ctx)?;
            }
        }
    }
    let ddr = invariant_derive(&lam, &dr);
    ensure(ddr.is_zero(), || "second invariant derivative is nonzero".into())?;
    let sym = alg_symmetry_classify(&lam, &curv, &g, 3);
    ensure(sym.degree == Some(2) && !sym.locally_symmetric(), || {
        format!("degree {:?}, locally symmetric {}", sym.degree, sym.locally_symmetric())
    })?;
    Ok(vec![
        "neutral signature (2,2); Ricci flat; two-symmetric, not locally symmetric".into(),
    ])
}

// ---------------------------------------------------------------- criterion 10

const POINTS: usize = 25;

struct Case {
    name: String,
    file: GeometryFile,
}

fn case(name: &str, text: String) -> Case {
    Case {
        name: name.into(),
        file: GeometryFile::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}")),
    }
}

fn small(rng: &mut StdRng, range: i64) -> String {
    let n = rng.gen_range(-range..=range);
    let d = rng.gen_range(1..=3);
    format!("({n}/{d})")
}

fn corpus(rng: &mut StdRng) -> Vec<Case> {
    let mut out = vec![
        case("two-sym4", builtin("two-sym4").unwrap().source.unwrap().into()),
        case("as-case1", builtin("as-case1").unwrap().source.unwrap().into()),
        case(
            "two-sym-n (n = 3)",
            two_sym_n(
                &["1".into(), "-2".into(), "3".into()],
                &[
                    vec!["1".into(), "2".into(), "0".into()],
                    vec!["2".into(), "-1".into(), "1/2".into()],
                    vec!["0".into(), "1/2".into(), "5".into()],
                ],
            )
            .unwrap(),
        ),
        case("minkowski", "[chart]\nt x y z\n[metric]\n1 1 = -1\n2 2 = 1\n3 3 = 1\n4 4 = 1\n".into()),
        case("half-plane", "[chart]\nx y\n[metric]\n1 1 = 1/y^2\n2 2 = 1/y^2\n".into()),
        case(
            "stereographic sphere",
            "[chart]\nx y\n[params]\nr\n[assume]\nr\n[metric]\n1 1 = 4*r^2/(1 + x^2 + y^2)^2\n2 2 = 4*r^2/(1 + x^2 + y^2)^2\n"
                .into(),
        ),
        case("flat FRW", "[chart]\nt x y z\n[metric]\n1 1 = -1\n2 2 = t^2\n3 3 = t^2\n4 4 = t^2\n".into()),
        case(
            "warped 3-space",
            "[chart]\nr u w\n[params]\nk\n[metric]\n1 1 = 1/(1 + k*r^2)\n2 2 = r^2\n3 3 = r^2*u^2\n".into(),
        ),
    ];
    // randomized sparse polynomial perturbations of flat metrics: each diagonal
    // entry picks up a term in the next coordinate, one off-diagonal entry a
    // term in the first
    for (dim, name) in [(2, "perturbed plane"), (3, "perturbed 3-space")] {
        let coords: Vec<String> = (1..=dim).map(|i| format!("y{i}")).collect();
        let mut text = format!("[chart]\n{}\n[metric]\n", coords.join(" "));
        for i in 0..dim {
            let next = &coords[(i + 1) % dim];
            text.push_str(&format!("{0} {0} = 1 + {1}*{next}\n", i + 1, small(rng, 3)));
        }
        text.push_str(&format!("1 2 = {}*{}\n", small(rng, 2), coords[0]));
        out.push(case(name, text));
    }
    // randomized pp-wave profile
    let h: Vec<String> = ["x2^2", "x2*x3", "x3^2", "x2^2*x4", "x3^2*x4", "x2*x3*x4^2"]
        .iter()
        .map(|m| format!("{}*{m}", small(rng, 3)))
        .collect();
    out.push(case(
        "random pp-wave",
        format!(
            "[chart]\nx1 x2 x3 x4\n[metric]\n1 4 = 1\n2 2 = 1\n3 3 = 1\n4 4 = {}\n",
            h.join(" + ")
        ),
    ));
    out
}

fn random_rational(rng: &mut StdRng) -> Rational {
    let n: i64 = rng.gen_range(-9..=9);
    let d: i64 = rng.gen_range(1..=7);
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn random_poly_vector(rng: &mut StdRng, ctx: &Context, coords: &[String]) -> VectorField {
    let mut comps = Vec::new();
    for _ in coords {
        let mut e = small(rng, 2);
        for (i, c) in coords.iter().enumerate() {
            e = format!("{e} + {}*{c}", small(rng, 2));
            e = format!("{e} + {}*{c}*{}", small(rng, 2), coords[(i + 1) % coords.len()]);
        }
        comps.push(ex(ctx, &e));
    }
    VectorField::new(comps)
}

fn random_structure(rng: &mut StdRng, n: usize) -> TensorField {
    let mut t = TensorField::zeros(n, 1, 2);
    for _ in 0..3 {
        let idx = [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)];
        t.set(&idx, RationalFunction::constant(random_rational(rng)));
    }
    t
}

/// Christoffel symbols and Riemann tensor at one point, computed numerically
/// from the values of g and its first two partial derivatives there.
struct PointCurvature {
    gamma: Vec<Rational>,
    riemann: Vec<Rational>,
}

fn invert_numeric(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let zero = Rational::from_integer(BigInt::from(0));
    let one = Rational::from_integer(BigInt::from(1));
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { one.clone() } else { zero.clone() }));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| a[r][col] != zero)?;
        a.swap(col, p);
        let inv = &one / &a[col][col];
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && a[r][col] != zero {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let v = &a[col][c] * &f;
                    a[r][c] = &a[r][c] - &v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn numeric_curvature(g: &MetricField, point: &BTreeMap<Var, Rational>) -> Option<PointCurvature> {
    let n = g.dim();
    let coords = g.chart().coords().to_vec();
    let zero = Rational::from_integer(BigInt::from(0));
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let at = |f: &RationalFunction| f.eval(point).ok();
    let mut gv = vec![vec![zero.clone(); n]; n];
    let mut dg = vec![vec![vec![zero.clone(); n]; n]; n]; // [m][i][j] = ∂m g_ij
    let mut ddg = vec![vec![vec![vec![zero.clone(); n]; n]; n]; n]; // [l][m][i][j]
    for i in 0..n {
        for j in 0..n {
            let e = g.get(i, j);
            gv[i][j] = at(e)?;
            for m in 0..n {
                let d = e.diff(coords[m]);
                dg[m][i][j] = at(&d)?;
                for l in 0..n {
                    ddg[l][m][i][j] = at(&d.diff(coords[l]))?;
                }
            }
        }
    }
    let ginv = invert_numeric(&gv)?;
    // Γ_{l m j} = ½(∂m g_lj + ∂j g_lm − ∂l g_mj), and its partial derivatives
    let low = |d: &Vec<Vec<Vec<Rational>>>, l: usize, m: usize, j: usize| {
        &(&(&d[m][l][j] + &d[j][l][m]) - &d[l][m][j]) * &half
    };
    let mut gamma = vec![zero.clone(); n * n * n];
    let mut dgamma = vec![zero.clone(); n * n * n * n]; // [p][k][m][j] = ∂p Γ^k_mj
                                                        // ∂p g^{kl} = −g^{ka} ∂p g_ab g^{bl}
    let dinv = |p: usize, k: usize, l: usize| {
        let mut s = zero.clone();
        for a in 0..n {
            for b in 0..n {
                s = &s - &(&(&ginv[k][a] * &dg[p][a][b]) * &ginv[b][l]);
            }
        }
        s
    };
    for k in 0..n {
        for m in 0..n {
            for j in 0..n {
                let mut s = zero.clone();
                for l in 0..n {
                    s = &s + &(&ginv[k][l] * &low(&dg, l, m, j));
                }
                gamma[(k * n + m) * n + j] = s;
                for p in 0..n {
                    let mut s = zero.clone();
                    for l in 0..n {
                        s = &s + &(&dinv(p, k, l) * &low(&dg, l, m, j));
                        s = &s + &(&ginv[k][l] * &low(&ddg[p], l, m, j));
                    }
                    dgamma[((p * n + k) * n + m) * n + j] = s;
                }
            }
        }
    }
    let gm = |k: usize, m: usize, j: usize| &gamma[(k * n + m) * n + j];
    let dgm = |p: usize, k: usize, m: usize, j: usize| &dgamma[((p * n + k) * n + m) * n + j];
    // R^i_{jkl} = ∂k Γ^i_{lj} − ∂l Γ^i_{kj} + Γ^i_{km} Γ^m_{lj} − Γ^i_{lm} Γ^m_{kj}
    let mut riemann = vec![zero.clone(); n * n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut s = dgm(k, i, l, j) - dgm(l, i, k, j);
                    for m in 0..n {
                        s = &s + &(gm(i, k, m) * gm(m, l, j));
                        s = &s - &(gm(i, l, m) * gm(m, k, j));
                    }
                    riemann[((i * n + j) * n + k) * n + l] = s;
                }
            }
        }
    }
    Some(PointCurvature { gamma, riemann })
}

#[derive(Default)]
struct Tally {
    metrics: usize,
    checks: BTreeMap<&'static str, usize>,
}

impl Tally {
    fn hit(&mut self, identity: &'static str, samples: usize) {
        *self.checks.entry(identity).or_default() += samples;
    }
}

/// Evaluates every component of `t` at `points`; all must vanish.
fn vanishes_at(t: &TensorField, points: &[BTreeMap<Var, Rational>]) -> bool {
    t.is_zero()
        && points.iter().all(|p| {
            t.eval(p)
                .map(|v| v.iter().all(|c| c == &Rational::from_integer(BigInt::from(0))))
                .unwrap_or(false)
        })
}

fn check_case(c: &Case, rng: &mut StdRng, tally: &mut Tally) -> Result<(), String> {
    let name = &c.name;
    let g = c.file.metric_field().map_err(|e| format!("{name}: {e}"))?;
    let chart = g.chart();
    let ctx = chart.ctx().clone();
    let n = g.dim();
    let curv = curvature(&g);
    let vars: Vec<Var> = chart.coords().iter().chain(chart.params()).copied().collect();

    let mut points = Vec::new();
    let mut oracle = Vec::new();
    let mut attempts = 0;
    while points.len() < POINTS {
        attempts += 1;
        if attempts > 20 * POINTS {
            return Err(format!("{name}: could not find {POINTS} regular points"));
        }
        let p: BTreeMap<Var, Rational> = vars.iter().map(|v| (*v, random_rational(rng))).collect();
        if chart.assumptions().iter().any(|a| {
            a.eval(&p)
                .map(|x| x == Rational::from_integer(BigInt::from(0)))
                .unwrap_or(true)
        }) {
            continue;
        }
        let Some(num) = numeric_curvature(&g, &p) else { continue };
        if curv.riemann.eval(&p).is_err() || curv.connection.tensor().eval(&p).is_err() {
            continue;
        }
        points.push(p);
        oracle.push(num);
    }

    // rf_eval agreement: symbolic Γ and R evaluated vs the pointwise computation
    for (p, num) in points.iter().zip(&oracle) {
        let gamma = curv.connection.tensor().eval(p).map_err(|e| e.to_string())?;
        ensure(gamma == num.gamma, || {
            format!("{name}: Christoffel symbols disagree with the point oracle")
        })?;
        let r = curv.riemann.eval(p).map_err(|e| e.to_string())?;
        ensure(r == num.riemann, || {
            format!("{name}: Riemann tensor disagrees with the point oracle")
        })?;
    }
    tally.hit("pointwise Christoffel and Riemann agreement", points.len());

    // first Bianchi: R^i_{jkl} + R^i_{klj} + R^i_{ljk} = 0
    let mut b1 = TensorField::zeros(n, 1, 3);
    for idx in TensorField::indices(n, 4) {
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        let r = &curv.riemann;
        b1.set(
            &idx,
            &(r.get(&[i, j, k, l]) + r.get(&[i, k, l, j])) + r.get(&[i, l, j, k]),
        );
    }
    ensure(vanishes_at(&b1, &points), || {
        format!("{name}: first Bianchi identity fails")
    })?;
    tally.hit("first Bianchi", points.len());

    // pair symmetry of the lowered tensor
    let rl = lower_first(&g, &curv.riemann);
    let mut pair = TensorField::zeros(n, 0, 4);
    for idx in TensorField::indices(n, 4) {
        pair.set(&idx, rl.get(&idx) - rl.get(&[idx[2], idx[3], idx[0], idx[1]]));
    }
    ensure(vanishes_at(&pair, &points), || format!("{name}: R_ijkl != R_klij"))?;
    tally.hit("pair symmetry", points.len());

    // second Bianchi: ∇_m R^i_{jkl} + ∇_k R^i_{jlm} + ∇_l R^i_{jmk} = 0
    let dr = covariant_derivative(chart, &curv.riemann, &curv.connection);
    let mut b2 = TensorField::zeros(n, 1, 4);
    for idx in TensorField::indices(n, 5) {
        let (i, j, k, l, m) = (idx[0], idx[1], idx[2], idx[3], idx[4]);
        b2.set(
            &idx,
            &(dr.get(&[i, j, k, l, m]) + dr.get(&[i, j, l, m, k])) + dr.get(&[i, j, m, k, l]),
        );
    }
    ensure(vanishes_at(&b2, &points), || {
        format!("{name}: second Bianchi identity fails")
    })?;
    tally.hit("second Bianchi", points.len());

    // metric compatibility and torsion-freeness
    let dg = covariant_derivative(chart, g.tensor(), &curv.connection);
    ensure(vanishes_at(&dg, &points), || format!("{name}: nabla g != 0"))?;
    ensure(curv.connection.is_symmetric(), || {
        format!("{name}: connection has torsion")
    })?;
    tally.hit("metric compatibility", points.len());

    // contracted Bianchi: div ρ = ½ dτ
    let drho = covariant_derivative(chart, &curv.ricci, &curv.connection);
    let mut div = TensorField::zeros(n, 0, 1);
    let half = RationalFunction::from_ratio(1, 2);
    for j in 0..n {
        let mut s = &curv.scalar.diff(chart.coord(j)) * &half;
        for a in 0..n {
            for b in 0..n {
                s = &s - &(g.inv(a, b) * drho.get(&[a, j, b]));
            }
        }
        div.set(&[j], s);
    }
    ensure(vanishes_at(&div, &points), || {
        format!("{name}: contracted Bianchi identity fails")
    })?;
    tally.hit("contracted Bianchi", points.len());

    if n == 4 {
        let w = weyl(&g, &rl, &curv.ricci, &curv.scalar).map_err(|e| e.to_string())?;
        let mut tr = TensorField::zeros(4, 0, 2);
        for j in 0..4 {
            for h in 0..4 {
                let mut s = RationalFunction::zero();
                for i in 0..4 {
                    for k in 0..4 {
                        s = &s + &(g.inv(i, k) * w.get(&[i, j, k, h]));
                    }
                }
                tr.set(&[j, h], s);
            }
        }
        ensure(vanishes_at(&tr, &points), || {
            format!("{name}: Weyl tensor is not trace-free")
        })?;
        tally.hit("Weyl trace-free", points.len());
    }

    // L_V g = g(∇_i V, ∂_j) + g(∂_i, ∇_j V) for random polynomial V
    for _ in 0..2 {
        let v = random_poly_vector(rng, &ctx, &c.file.coords);
        let lie = lie_derivative_metric(&g, &v);
        let dv = covariant_derivative(chart, &v.as_tensor(), &curv.connection);
        let mut diff = TensorField::zeros(n, 0, 2);
        for i in 0..n {
            for j in 0..n {
                let mut s = lie.get(&[i, j]).clone();
                for k in 0..n {
                    s = &s - &(&(g.get(k, j) * dv.get(&[k, i])) + &(g.get(i, k) * dv.get(&[k, j])));
                }
                diff.set(&[i, j], s);
            }
        }
        ensure(vanishes_at(&diff, &points), || {
            format!("{name}: Lie derivative cross-formula fails")
        })?;
        tally.hit("Lie derivative cross-formula", points.len());
    }

    // AS residuals coincide with ∇̃g, ∇̃R, ∇̃T for ∇̃ = ∇ − T
    let mut structures = vec![TensorField::zeros(n, 1, 2)];
    structures.extend((0..2).map(|_| random_structure(rng, n)));
    for t in &structures {
        let res = ambrose_singer_residuals(&g, &curv, t);
        let m = modified_connection_checks(&g, &curv, t);
        for (label, a, b) in [
            ("AS1", &res.as1, &m.dg),
            ("AS2", &res.as2, &m.dr),
            ("AS3", &res.as3, &m.dt),
        ] {
            ensure(vanishes_at(&a.sub(b), &points), || {
                format!("{name}: {label} differs from the modified connection")
            })?;
        }
        ensure(res.all_zero() == m.all_zero(), || {
            format!("{name}: AS and modified-connection verdicts differ")
        })?;
        tally.hit("AS vs modified connection", points.len());
    }
    tally.metrics += 1;
    Ok(())
}

fn criterion_10() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_2024);
    let cases = corpus(&mut rng);
    let mut tally = Tally::default();
    for c in &cases {
        check_case(c, &mut rng, &mut tally)?;
    }
    ensure(tally.metrics >= 10, || format!("only {} metrics", tally.metrics))?;
    let mut notes = vec![format!(
        "{} metrics, {POINTS} random rational points each",
        tally.metrics
    )];
    for (identity, samples) in &tally.checks {
        notes.push(format!("{identity}: {samples} point evaluations"));
    }
    Ok(notes)
}

fn main() {
    let start = Instant::now();
    let c = two_sym4();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("connection of two-sym4", Box::new(|| criterion_1(&c))),
        ("curvature, Ricci and scalar of two-sym4", Box::new(|| criterion_2(&c))),
        ("Weyl tensor of two-sym4", Box::new(|| criterion_3(&c))),
        ("condition sets of two-sym4", Box::new(|| criterion_4(&c))),
        ("two-symmetry and parallel null field", Box::new(|| criterion_5(&c))),
        ("Ricci soliton suite", Box::new(|| criterion_6(&c))),
        ("Ambrose-Singer obstruction", Box::new(criterion_7)),
        ("A1 non-reductive homogeneous space", Box::new(criterion_8)),
        ("Komrakov 1.4^1:9 example", Box::new(criterion_9)),
        ("property suite", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (i, (label, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome =
            std::panic::catch_unwind(std::panic::AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(notes) => {
                println!("criterion {:>2} PASS  {label} ({ms} ms)", i + 1);
                for note in notes {
                    println!("              {note}");
                }
            }
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {label} ({ms} ms)", i + 1);
                println!("              {msg}");
            }
        }
    }
    println!(
        "acceptance: {} of {} passed in {:.1} s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
