//! Rational functions: quotients of multivariate polynomials in canonical
//! form.
//!
//! Canonical form: `gcd(num, den) = 1`, `den` has coprime integer
//! coefficients and a positive leading coefficient. A constant denominator is
//! therefore always `1`, and polynomial values never pay for a gcd.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Zero;

use super::gcd::poly_gcd;
use super::poly::{format_rational, MultiPoly};
use super::symbol::{Context, Var};
use super::{AlgebraError, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(MultiPoly::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::constant(Rational::new(n.into(), d.into()))
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MultiPoly::var(v))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RationalFunction {
            num: p,
            den: MultiPoly::one(),
        }
    }

    /// Builds `num / den` in canonical form.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.constant_value() {
            return Self::from_poly(num.scale(&c.recip()));
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::scale_canonical(num, den)
    }

    fn scale_canonical(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.constant_value() {
            return Self::from_poly(num.scale(&c.recip()));
        }
        let (k, den) = den.primitive_integer();
        RationalFunction {
            num: num.scale(&k),
            den,
        }
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn contains(&self, v: Var) -> bool {
        self.num.contains(v) || self.den.contains(v)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::scale_canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self, AlgebraError> {
        if e >= 0 {
            let e = e as u32;
            Ok(RationalFunction {
                num: self.num.pow(e),
                den: self.den.pow(e),
            })
        } else {
            self.recip()?.pow(-e)
        }
    }

    /// Partial derivative by the quotient rule.
    pub fn diff(&self, v: Var) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.diff(v));
        }
        let dn = self.num.diff(v);
        let dd = self.den.diff(v);
        if dd.is_zero() {
            return Self::reduce(dn, self.den.clone());
        }
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        Self::reduce(top, self.den.pow(2))
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &BTreeMap<Var, Rational>) -> Result<Rational, AlgebraError> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(AlgebraError::DenominatorVanishes(self.den.clone()));
        }
        Ok(self.num.eval(point)? / d)
    }

    /// Fixes some symbols to rational values.
    pub fn partial_eval(&self, point: &BTreeMap<Var, Rational>) -> Result<Self, AlgebraError> {
        let d = self.den.partial_eval(point);
        if d.is_zero() {
            return Err(AlgebraError::DenominatorVanishes(self.den.clone()));
        }
        Self::new(self.num.partial_eval(point), d)
    }

    /// Replaces `v` by the rational function `f`.
    pub fn substitute(&self, v: Var, f: &RationalFunction) -> Result<Self, AlgebraError> {
        if !self.contains(v) {
            return Ok(self.clone());
        }
        let n = subst_poly(&self.num, v, f);
        let d = subst_poly(&self.den, v, f);
        n.checked_div(&d)
            .map_err(|_| AlgebraError::DenominatorVanishes(self.den.clone()))
    }

    pub fn display(&self, ctx: &Context) -> String {
        if self.den.is_one() {
            return self.num.display(ctx);
        }
        // pull the rational content of the numerator into the denominator
        let (k, num_int) = self.num.primitive_integer();
        let k_num = k.numer().clone();
        let k_den = k.denom().clone();
        // self = num_int / (k * den)
        let num_s = {
            let scaled = num_int.scale(&Rational::from_integer(k_den));
            scaled.display(ctx)
        };
        let num_s = if self.num.num_terms() > 1 {
            format!("({num_s})")
        } else {
            num_s
        };
        let den_s = self.den.display(ctx);
        let den_wrapped = if self.den.num_terms() > 1 {
            format!("({den_s})")
        } else {
            den_s
        };
        let mut k_abs = k_num.clone();
        let negative = k_num < 0.into();
        if negative {
            k_abs = -k_abs;
        }
        let den_full = if k_abs == 1.into() {
            den_wrapped
        } else {
            format!("({}*{})", format_rational(&Rational::from_integer(k_abs)), den_wrapped)
        };
        if negative {
            format!("-{num_s}/{den_full}")
        } else {
            format!("{num_s}/{den_full}")
        }
    }
}

fn subst_poly(p: &MultiPoly, v: Var, f: &RationalFunction) -> RationalFunction {
    let coeffs = p.coeffs_in(v);
    let mut out = RationalFunction::zero();
    let mut power = RationalFunction::one();
    let mut k = 0;
    for (e, c) in coeffs {
        while k < e {
            power = &power * f;
            k += 1;
        }
        out = &out + &(&RationalFunction::from_poly(c) * &power);
    }
    out
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

impl From<MultiPoly> for RationalFunction {
    fn from(p: MultiPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        // a/b + c is already in lowest terms: gcd(a + cb, b) = gcd(a, b) = 1
        if rhs.den.is_one() {
            return RationalFunction::scale_canonical(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        if self.den.is_one() {
            return RationalFunction::scale_canonical(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        // Henrici: with g = gcd(b, d), any common factor of the new numerator
        // and denominator divides g
        let g = poly_gcd(&self.den, &rhs.den);
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        if num.is_zero() {
            return RationalFunction::zero();
        }
        if g.is_constant() {
            return RationalFunction::scale_canonical(num, &d1 * &rhs.den);
        }
        let g2 = poly_gcd(&num, &g);
        if g2.is_constant() {
            return RationalFunction::scale_canonical(num, &d1 * &rhs.den);
        }
        let num = num.div_exact(&g2).expect("gcd divides");
        let den = &d1 * &rhs.den.div_exact(&g2).expect("gcd divides");
        RationalFunction::scale_canonical(num, den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        // cross-cancel before multiplying
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RationalFunction::scale_canonical(&n1 * &n2, &d1 * &d2)
    }
}

/// Panics on division by the zero function; use [`RationalFunction::checked_div`]
/// where the divisor is not known to be nonzero.
impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl std::iter::Sum for RationalFunction {
    fn sum<I: Iterator<Item = RationalFunction>>(iter: I) -> Self {
        iter.fold(RationalFunction::zero(), |acc, x| &acc + &x)
    }
}
