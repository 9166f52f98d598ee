//! Exact scalars: rationals and the rational-function field `ℚ(r, s, p, t, q)`.
//!
//! Every matrix entry in the crate is a [`ScalarExpr`], a reduced fraction of
//! two [`MultiPoly`]s with a monic denominator. Because the representation is
//! canonical, two scalars are equal as rational functions iff they are equal
//! as Rust values, which is what lets the checkers verify identities in the
//! parameters instead of at sample points.

mod expr;
mod parse;
mod poly;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use expr::ScalarExpr;
pub use parse::parse;
pub use poly::{gcd, Monomial, MultiPoly};

/// Arbitrary-precision rational, always stored reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// A variable-to-value map used by [`ScalarExpr::eval`].
pub type Assignment = BTreeMap<Var, Rational>;

pub const NUM_VARS: usize = 5;

/// The closed set of parameters.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    R,
    S,
    P,
    T,
    Q,
}

impl Var {
    pub const ALL: [Var; NUM_VARS] = [Var::R, Var::S, Var::P, Var::T, Var::Q];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::R => "r",
            Var::S => "s",
            Var::P => "p",
            Var::T => "t",
            Var::Q => "q",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("denominator vanishes under the assignment")]
    EvaluationPole,
    #[error("variable `{0}` has no assigned value")]
    UnassignedVariable(Var),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },
}

/// Shorthand for `x.parse()` that panics on malformed input; for literals in code.
pub fn sx(text: &str) -> ScalarExpr {
    parse(text).unwrap_or_else(|e| panic!("bad scalar literal {text:?}: {e}"))
}
