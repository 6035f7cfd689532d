//! Exact scalar kernel: interned symbols, sparse multivariate polynomials over
//! the rationals, canonical rational functions and linear solving over them.

pub mod gcd;
pub mod linsolve;
pub mod poly;
pub mod ratfun;
pub mod symbol;

pub use gcd::poly_gcd;
pub use linsolve::{canonical_affine, linear_solve, reduce_against, rref, LinearSystem, Solution};
pub use poly::{Monomial, MultiPoly};
pub use ratfun::RationalFunction;
pub use symbol::{Context, Symbol, SymbolKind, Var};

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgebraError {
    #[error("symbol `{name}` is already a {existing}, cannot redeclare it as a {requested}")]
    KindConflict {
        name: String,
        existing: &'static str,
        requested: &'static str,
    },
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("no value assigned to symbol {0:?}")]
    UnassignedSymbol(Var),
    #[error("denominator {0:?} vanishes at the evaluation point")]
    DenominatorVanishes(MultiPoly),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
