use std::collections::BTreeMap;

use geomcas::algebra::{Rational, RationalFunction, SymbolKind, Var};
use geomcas::chart::{covariant_derivative, curvature, weyl, MetricField, VectorField};
use geomcas::io::{builtin, two_sym_n, GeometryFile};
use geomcas::props::{
    check_parallel_null, class_a_conditions, class_b_conditions, condition_ideal, conformally_flat_conditions,
    curvature_derivatives, ricci_flat_conditions, solve_soliton_ansatz, symmetry_degree, SymmetryDegree,
};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn two_sym4() -> (GeometryFile, MetricField) {
    let file = GeometryFile::parse(builtin("two-sym4").unwrap().source.unwrap()).unwrap();
    let g = file.metric_field().unwrap();
    (file, g)
}

fn param(file: &GeometryFile, name: &str) -> Var {
    file.ctx().lookup(name).unwrap()
}

fn nonzero(rng: &mut StdRng) -> i64 {
    let v: i64 = rng.gen_range(1..=9);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

/// Random parameter values; `tie` forces `b = -a` and `s = -p` when set.
fn parameters(
    file: &GeometryFile,
    rng: &mut StdRng,
    tie: impl Fn(&mut BTreeMap<Var, Rational>),
) -> BTreeMap<Var, Rational> {
    let mut at: BTreeMap<Var, Rational> = ["a", "b", "p", "q", "s", "c"]
        .iter()
        .map(|n| (param(file, n), q(nonzero(rng))))
        .collect();
    tie(&mut at);
    at
}

#[test]
fn class_a_conditions_are_sound() {
    let (file, g) = two_sym4();
    let curv = curvature(&g);
    let cond = class_a_conditions(&g, &curv).unwrap();
    let d = covariant_derivative(g.chart(), &curv.ricci, &curv.connection);
    let ctx = file.ctx();
    let v: Vec<RationalFunction> = (0..4)
        .map(|_| RationalFunction::var(ctx.fresh("v", SymbolKind::Unknown)))
        .collect();
    // (∇_v ρ)(v, v) with symbolic v
    let mut killing = RationalFunction::zero();
    for (idx, c) in d.nonzero() {
        killing = &killing + &(&(c * &v[idx[0]]) * &(&v[idx[1]] * &v[idx[2]]));
    }
    let (a, b) = (param(&file, "a"), param(&file, "b"));
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..20 {
        let good = parameters(&file, &mut rng, |m| {
            let av = m[&a].clone();
            m.insert(b, -av);
        });
        assert!(cond.satisfied_at(&good).unwrap());
        assert!(killing.partial_eval(&good).unwrap().is_zero());
        let bad = parameters(&file, &mut rng, |m| {
            let av = m[&a].clone();
            m.insert(b, -av + q(1));
        });
        assert!(!cond.satisfied_at(&bad).unwrap());
        assert!(!killing.partial_eval(&bad).unwrap().is_zero());
    }
}

#[test]
fn condition_sets_vanish_exactly_where_the_tensor_does() {
    let (file, g) = two_sym4();
    let curv = curvature(&g);
    let w = weyl(&g, &curv.riemann_lowered, &curv.ricci, &curv.scalar).unwrap();
    let conf = conformally_flat_conditions(&g, &curv).unwrap();
    let flat = ricci_flat_conditions(&g, &curv).unwrap();
    let [a, b, p, qv, s] = ["a", "b", "p", "q", "s"].map(|n| param(&file, n));
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..20 {
        let on = parameters(&file, &mut rng, |m| {
            m.insert(b, m[&a].clone());
            m.insert(s, m[&p].clone());
            m.insert(qv, q(0));
        });
        assert!(conf.satisfied_at(&on).unwrap());
        assert!(w.partial_eval(&on).unwrap().is_zero());
        let off = parameters(&file, &mut rng, |_| {});
        assert_eq!(
            conf.satisfied_at(&off).unwrap(),
            w.partial_eval(&off).unwrap().is_zero()
        );
        assert_eq!(
            flat.satisfied_at(&off).unwrap(),
            curv.ricci.partial_eval(&off).unwrap().is_zero()
        );
        // a tensor with no parameters left is zero iff its condition set is empty
        let ric = curv.ricci.partial_eval(&off).unwrap();
        let cs = condition_ideal(&ric, g.chart()).unwrap();
        assert_eq!(cs.holds_identically(), ric.is_zero());
    }
}

#[test]
fn parallel_ricci_is_class_a_and_class_b() {
    let h = ["h1", "h2", "h3"].map(String::from);
    let f = [["1", "0", "2"], ["0", "-3", "1/2"], ["2", "1/2", "0"]].map(|r| r.map(String::from).to_vec());
    let generated = GeometryFile::parse(&two_sym_n(&h, &f).unwrap()).unwrap();
    let (_, flagship) = two_sym4();
    for g in [flagship, generated.metric_field().unwrap()] {
        let curv = curvature(&g);
        let drho = covariant_derivative(g.chart(), &curv.ricci, &curv.connection);
        let p = condition_ideal(&drho, g.chart()).unwrap();
        let ab = class_a_conditions(&g, &curv)
            .unwrap()
            .and(&class_b_conditions(&g, &curv).unwrap());
        assert!(
            p.equivalent(&ab),
            "{:?} vs {:?}",
            p.display(g.chart().ctx()),
            ab.display(g.chart().ctx())
        );
    }
}

#[test]
fn symmetry_degree_is_monotone() {
    let as_case1 = GeometryFile::parse(builtin("as-case1").unwrap().source.unwrap()).unwrap();
    let mut metrics = vec![two_sym4().1, as_case1.metric_field().unwrap()];
    let text = "[chart]\nx y\n[metric]\n1 1 = 1/y^2\n2 2 = 1/y^2\n";
    metrics.push(GeometryFile::parse(text).unwrap().metric_field().unwrap());
    for g in &metrics {
        let curv = curvature(g);
        let d = curvature_derivatives(g, &curv, 3);
        let first = d.iter().position(|t| t.is_zero());
        if let Some(k) = first {
            assert!(d[k..].iter().all(|t| t.is_zero()));
            assert_eq!(symmetry_degree(g, 3).k(), Some(k));
        } else {
            assert_eq!(symmetry_degree(g, 3), SymmetryDegree::ExceedsKmax { kmax: 3 });
        }
    }
}

#[test]
fn generated_pp_waves_are_two_symmetric() {
    let mut rng = StdRng::seed_from_u64(3);
    for n in 1..=3 {
        for trial in 0..3 {
            let h: Vec<String> = (0..n).map(|_| nonzero(&mut rng).to_string()).collect();
            let mut f = vec![vec![String::new(); n]; n];
            for i in 0..n {
                for j in i..n {
                    let v = rng.gen_range(-3..=3).to_string();
                    f[i][j] = v.clone();
                    f[j][i] = v;
                }
            }
            let file = GeometryFile::parse(&two_sym_n(&h, &f).unwrap()).unwrap();
            let g = file.metric_field().unwrap();
            assert_eq!(symmetry_degree(&g, 3).k(), Some(2), "n = {n}, trial {trial}");
            let curv = curvature(&g);
            let pn = check_parallel_null(&g, &curv.connection, &VectorField::coordinate(n + 2, 0));
            assert!(pn.parallel && pn.null);
            if n <= 2 {
                // every returned family satisfies the soliton equation (self-checked)
                let family = solve_soliton_ansatz(&g, &curv, 2).unwrap();
                assert!(family.is_some());
            }
        }
    }
}

#[test]
fn locally_symmetric_when_the_profile_is_stationary() {
    let h = ["0", "0"].map(String::from);
    let f = [["1", "2"], ["2", "-1"]].map(|r| r.map(String::from).to_vec());
    let g = GeometryFile::parse(&two_sym_n(&h, &f).unwrap())
        .unwrap()
        .metric_field()
        .unwrap();
    assert_eq!(symmetry_degree(&g, 3).k(), Some(1));
}
