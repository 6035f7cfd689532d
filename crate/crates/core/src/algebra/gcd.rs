//! Multivariate GCD: a heuristic evaluation/interpolation pass (GCDHEU)
//! with a division check, falling back to recursive content removal and
//! primitive pseudo-remainder sequences in a chosen main variable.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{Monomial, MultiPoly};
use super::symbol::Var;
use super::Rational;

/// Greatest common divisor, normalized to coprime integer coefficients and a
/// positive leading coefficient. `gcd(p, 0)` is `p` normalized.
pub fn poly_gcd(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    gcd_rec(p, q).primitive()
}

fn gcd_rec(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    if p.is_zero() {
        return q.primitive();
    }
    if q.is_zero() {
        return p.primitive();
    }
    if p.is_constant() || q.is_constant() {
        return MultiPoly::one();
    }
    if p.num_terms() >= q.num_terms() {
        if p.div_exact(q).is_some() {
            return q.primitive();
        }
    } else if q.div_exact(p).is_some() {
        return p.primitive();
    }
    if let Some(g) = heuristic_gcd(&p.primitive(), &q.primitive()) {
        return g;
    }

    let pv = p.vars();
    let qv = q.vars();
    // a variable present in only one argument can be eliminated through the
    // content of that argument
    if let Some(&v) = pv.difference(&qv).next() {
        return gcd_rec(&content_in(p, v), q);
    }
    if let Some(&v) = qv.difference(&pv).next() {
        return gcd_rec(p, &content_in(q, v));
    }
    // both share the same variable set; take the one of least degree as main
    let v = *pv
        .iter()
        .min_by_key(|&&v| p.degree_in(v).max(q.degree_in(v)))
        .expect("non-constant polynomial has a variable");

    let cp = content_in(p, v);
    let cq = content_in(q, v);
    let pp = p.div_exact(&cp).expect("content divides");
    let pq = q.div_exact(&cq).expect("content divides");
    let c = gcd_rec(&cp, &cq);
    let h = primitive_prs(pp, pq, v);
    (&c * &h).primitive()
}

const HEU_ATTEMPTS: usize = 6;
/// Images larger than this are not worth the big-integer arithmetic.
const HEU_MAX_BITS: u64 = 6000;

fn integer_content(p: &MultiPoly) -> BigInt {
    p.terms().fold(BigInt::zero(), |g, (_, c)| g.gcd(c.numer()))
}

fn max_norm(p: &MultiPoly) -> BigInt {
    p.terms().map(|(_, c)| c.numer().abs()).max().unwrap_or_default()
}

fn divide_integer(p: &MultiPoly, k: &BigInt) -> MultiPoly {
    p.scale(&Rational::new(BigInt::one(), k.clone()))
}

/// Symmetric residue in `(−ξ/2, ξ/2]`.
fn smod(c: &BigInt, xi: &BigInt) -> BigInt {
    let r = c.mod_floor(xi);
    if &r * 2 > *xi {
        r - xi
    } else {
        r
    }
}

/// Inverts evaluation at `v = ξ` through the balanced ξ-adic expansion of
/// the coefficients of `h`.
fn xi_adic(mut h: MultiPoly, xi: &BigInt, v: Var) -> MultiPoly {
    let mut terms = Vec::new();
    let mut e = 0u32;
    while !h.is_zero() {
        let digit = MultiPoly::from_terms(
            h.terms()
                .map(|(m, c)| (m.clone(), Rational::from_integer(smod(c.numer(), xi)))),
        );
        for (m, c) in digit.terms() {
            let mut pairs = m.pairs().to_vec();
            if e > 0 {
                pairs.push((v, e));
            }
            terms.push((Monomial::from_pairs(pairs), c.clone()));
        }
        h = divide_integer(&(&h - &digit), xi);
        e += 1;
    }
    MultiPoly::from_terms(terms)
}

/// GCDHEU on integer polynomials. Returns `None` when it gives up; a returned
/// value has passed trial division and is the true gcd including its
/// integer content.
fn heu_rec(p: &MultiPoly, q: &MultiPoly) -> Option<MultiPoly> {
    if p.is_zero() || q.is_zero() {
        return None;
    }
    let cp = integer_content(p);
    let cq = integer_content(q);
    let c = Rational::from_integer(cp.gcd(&cq));
    if p.is_constant() || q.is_constant() {
        return Some(MultiPoly::constant(c));
    }
    let p = divide_integer(p, &cp);
    let q = divide_integer(q, &cq);
    let v = *p.vars().union(&q.vars()).max().expect("non-constant");
    let deg = u64::from(p.degree_in(v).max(q.degree_in(v)));
    let norm_bits = max_norm(&p).max(max_norm(&q)).bits();
    let mut xi: BigInt = max_norm(&p).min(max_norm(&q)) * 2 + 29;
    for _ in 0..HEU_ATTEMPTS {
        if xi.bits() * deg + norm_bits > HEU_MAX_BITS {
            return None;
        }
        let at = BTreeMap::from([(v, Rational::from_integer(xi.clone()))]);
        let h = heu_rec(&p.partial_eval(&at), &q.partial_eval(&at))?;
        let g = xi_adic(h, &xi, v);
        if !g.is_zero() {
            let g = g.primitive();
            if p.div_exact(&g).is_some() && q.div_exact(&g).is_some() {
                return Some(g.scale(&c));
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

fn heuristic_gcd(p: &MultiPoly, q: &MultiPoly) -> Option<MultiPoly> {
    heu_rec(p, q).map(|g| g.primitive())
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &MultiPoly, v: Var) -> MultiPoly {
    let mut g = MultiPoly::zero();
    for c in p.coeffs_in(v).into_values() {
        g = gcd_rec(&g, &c);
        if g.is_constant() {
            return MultiPoly::one();
        }
    }
    g
}

pub fn primitive_part_in(p: &MultiPoly, v: Var) -> MultiPoly {
    if p.is_zero() {
        return MultiPoly::zero();
    }
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").primitive()
}

/// Pseudo-remainder of `a` by `b` in the variable `v`.
pub fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, v: Var) -> MultiPoly {
    let db = b.degree_in(v);
    let lb = b.coeff_of(v, db);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.coeff_of(v, dr);
        let shift = MultiPoly::var(v).pow(dr - db);
        r = &(&lb * &r) - &(&(&lr * &shift) * b);
    }
    r
}

fn primitive_prs(a: MultiPoly, b: MultiPoly, v: Var) -> MultiPoly {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        if b.is_zero() {
            return primitive_part_in(&a, v);
        }
        if b.degree_in(v) == 0 {
            return MultiPoly::one();
        }
        let r = pseudo_rem(&a, &b, v);
        a = b;
        b = primitive_part_in(&r, v);
    }
}
