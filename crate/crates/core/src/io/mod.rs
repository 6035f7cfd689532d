//! Text front end: expression grammar, geometry files, reports, built-ins and
//! the command pipelines behind the CLI.

mod builtins;
mod expr;
mod geom;
mod report;
mod run;

pub use builtins::{builtin, builtins, two_sym_n, Builtin};
pub use expr::{parse_expression, parse_with};
pub use geom::{GeometryFile, GeometryKind};
pub use report::{Component, Item, Report};
pub use run::{analyze, check, hom, run_builtin, solve, Outcome, Property, SolveTarget};

use crate::algebra::AlgebraError;
use crate::chart::ChartError;
use crate::homog::HomError;
use crate::props::PropError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

/// Anything that makes an input unusable; the CLI maps it to exit code 2.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InputError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Prop(#[from] PropError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
