use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::PropError;
use crate::algebra::{poly_gcd, Context, MultiPoly, Rational, Var};
use crate::chart::{Chart, TensorField};

/// Parameter polynomials whose common vanishing characterizes a property.
///
/// `raw` keeps every extracted coefficient; `generators` is the normalized
/// form used for comparison. An empty generator list means the property holds
/// identically; the single generator `1` means it never holds under the
/// assumptions.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionSet {
    pub raw: Vec<MultiPoly>,
    pub generators: Vec<MultiPoly>,
    pub assumptions: Vec<MultiPoly>,
}

impl ConditionSet {
    pub fn empty(assumptions: &[MultiPoly]) -> Self {
        ConditionSet {
            raw: Vec::new(),
            generators: Vec::new(),
            assumptions: assumptions.to_vec(),
        }
    }

    /// Normalizes `raw`: every generator is made primitive with positive
    /// leading coefficient, factors shared with an assumption are divided out,
    /// zeros and duplicates are dropped, generators that are multiples of
    /// another generator are dropped, and the result is sorted.
    pub fn from_raw(raw: Vec<MultiPoly>, assumptions: &[MultiPoly]) -> Self {
        let mut gens: BTreeSet<MultiPoly> = BTreeSet::new();
        for p in &raw {
            if p.is_zero() {
                continue;
            }
            let q = strip_assumed(&p.primitive(), assumptions);
            if q.is_constant() {
                return ConditionSet {
                    raw,
                    generators: vec![MultiPoly::one()],
                    assumptions: assumptions.to_vec(),
                };
            }
            gens.insert(q);
        }
        let all: Vec<MultiPoly> = gens.into_iter().collect();
        // distinct primitive generators cannot divide each other both ways
        let kept_iter = all.iter().enumerate().filter(|&(i, p)| {
            !all.iter()
                .enumerate()
                .any(|(j, q)| i != j && q.total_degree() <= p.total_degree() && p.div_exact(q).is_some())
        });
        let mut kept: Vec<MultiPoly> = kept_iter.map(|(_, p)| p.clone()).collect();
        kept.sort_by(|a, b| (a.total_degree(), a).cmp(&(b.total_degree(), b)));
        ConditionSet {
            raw,
            generators: kept,
            assumptions: assumptions.to_vec(),
        }
    }

    /// True when the property holds for every parameter value.
    pub fn holds_identically(&self) -> bool {
        self.generators.is_empty()
    }

    /// True when no parameter value satisfies the property.
    pub fn never_holds(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    /// Whether every generator vanishes at the given parameter values.
    pub fn satisfied_at(&self, point: &BTreeMap<Var, Rational>) -> Result<bool, PropError> {
        for g in &self.generators {
            if !g.eval(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same normalized generators.
    pub fn equivalent(&self, other: &ConditionSet) -> bool {
        self.generators == other.generators
    }

    pub fn display(&self, ctx: &Context) -> Vec<String> {
        self.generators.iter().map(|g| g.display(ctx)).collect()
    }

    /// Union of two condition sets (both properties at once).
    pub fn and(&self, other: &ConditionSet) -> ConditionSet {
        let mut raw = self.raw.clone();
        raw.extend(other.raw.iter().cloned());
        let mut assumptions = self.assumptions.clone();
        for a in &other.assumptions {
            if !assumptions.contains(a) {
                assumptions.push(a.clone());
            }
        }
        ConditionSet::from_raw(raw, &assumptions)
    }
}

fn strip_assumed(p: &MultiPoly, assumptions: &[MultiPoly]) -> MultiPoly {
    let mut p = p.clone();
    for a in assumptions {
        loop {
            if p.is_constant() {
                return p;
            }
            let g = poly_gcd(&p, a);
            if g.is_constant() {
                break;
            }
            p = p.div_exact(&g).expect("gcd divides").primitive();
        }
    }
    p
}

/// Conditions on the parameters for `t` to vanish identically in the chart
/// coordinates: every coordinate-monomial coefficient of every numerator.
///
/// Denominators that involve only parameters are nonzero by construction and
/// are recorded as assumptions. A denominator involving coordinates is
/// accepted when one of its coordinate coefficients is a nonzero constant or a
/// product of assumed-nonzero factors; otherwise it is reported.
pub fn condition_ideal(t: &TensorField, chart: &Chart) -> Result<ConditionSet, PropError> {
    let coords: BTreeSet<Var> = chart.coords().iter().copied().collect();
    let mut assumptions: Vec<MultiPoly> = chart.assumptions().to_vec();
    let mut raw = Vec::new();
    for (idx, c) in t.nonzero() {
        let den = c.denom();
        if !den.is_constant() {
            if den.vars().iter().any(|v| coords.contains(v)) {
                let coeffs = den.collect_coefficients(&coords);
                let provable = coeffs
                    .values()
                    .any(|k| strip_assumed(&k.primitive(), &assumptions).is_constant());
                if !provable {
                    return Err(PropError::UnprovenDenominator {
                        index: idx,
                        den: den.display(chart.ctx()),
                    });
                }
            } else {
                let prim = den.primitive();
                if !assumptions.contains(&prim) {
                    assumptions.push(prim);
                }
            }
        }
        raw.extend(c.numer().collect_coefficients(&coords).into_values());
    }
    Ok(ConditionSet::from_raw(raw, &assumptions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SymbolKind;

    #[test]
    fn normalization_drops_multiples_and_assumed_factors() {
        let ctx = Context::new();
        let a = MultiPoly::var(ctx.intern("a", SymbolKind::Parameter).unwrap());
        let b = MultiPoly::var(ctx.intern("b", SymbolKind::Parameter).unwrap());
        let c = MultiPoly::var(ctx.intern("c", SymbolKind::Parameter).unwrap());
        let apb = &a + &b;
        let raw = vec![
            apb.scale(&Rational::from_integer((-2).into())),
            &c * &apb,
            &apb * &a,
            MultiPoly::zero(),
        ];
        // with a assumed nonzero, a(a+b) reduces to a+b
        let cs = ConditionSet::from_raw(raw, std::slice::from_ref(&a));
        assert_eq!(cs.generators, vec![apb]);
        let never = ConditionSet::from_raw(vec![&a * &a], &[a]);
        assert!(never.never_holds());
    }
}
