//! Piece functions and the effective-domain contract.
//!
//! An [`EffectiveDomain`] decides extensional equivalence of its pieces by
//! canonicalization and evaluates them at breakpoints. Two instances ship:
//! [`PolynomialDomain`] (a strong effective domain) and [`RationalDomain`]
//! (reduced quotients, whose equivalence ignores removable singularities).

mod counting;
pub mod expr;
pub mod poly;
mod polynomial;
mod rational;

use std::fmt;
use std::ops;

use num_rational::BigRational;
use thiserror::Error;

pub use counting::{CallCounts, Counting};
pub use expr::Expr;
pub use poly::{Polynomial, RationalFunction};
pub use polynomial::PolynomialDomain;
pub use rational::RationalDomain;

use crate::ordered::Breakpoint;

/// Result of evaluating a partial function at a point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Defined(BigRational),
    Undefined,
}

impl Value {
    pub fn is_defined(&self) -> bool {
        matches!(self, Value::Defined(_))
    }

    pub fn defined(&self) -> Option<&BigRational> {
        match self {
            Value::Defined(v) => Some(v),
            Value::Undefined => None,
        }
    }

    fn zip_with(
        self,
        rhs: Value,
        f: impl FnOnce(BigRational, BigRational) -> BigRational,
    ) -> Value {
        match (self, rhs) {
            (Value::Defined(a), Value::Defined(b)) => Value::Defined(f(a, b)),
            _ => Value::Undefined,
        }
    }
}

impl From<Option<BigRational>> for Value {
    fn from(v: Option<BigRational>) -> Self {
        v.map_or(Value::Undefined, Value::Defined)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Defined(v) => write!(f, "{v}"),
            Value::Undefined => write!(f, "undef"),
        }
    }
}

impl ops::Add for Value {
    type Output = Value;
    fn add(self, rhs: Value) -> Value {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl ops::Sub for Value {
    type Output = Value;
    fn sub(self, rhs: Value) -> Value {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl ops::Mul for Value {
    type Output = Value;
    fn mul(self, rhs: Value) -> Value {
        self.zip_with(rhs, |a, b| a * b)
    }
}

impl ops::Neg for Value {
    type Output = Value;
    fn neg(self) -> Value {
        match self {
            Value::Defined(v) => Value::Defined(-v),
            Value::Undefined => Value::Undefined,
        }
    }
}

/// A function of one variable, in one of three representations. Only
/// `Expr` is unnormalized; the shipped domains canonicalize to `Poly` or
/// `Ratio`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PieceFunction {
    Expr(Expr),
    Poly(Polynomial),
    Ratio(RationalFunction),
}

impl PieceFunction {
    pub fn constant(c: BigRational) -> Self {
        PieceFunction::Poly(Polynomial::constant(c))
    }

    pub fn to_expr(&self) -> Expr {
        match self {
            PieceFunction::Expr(e) => e.clone(),
            PieceFunction::Poly(p) => p.to_expr(),
            PieceFunction::Ratio(r) => r.to_expr(),
        }
    }
}

impl From<Expr> for PieceFunction {
    fn from(e: Expr) -> Self {
        PieceFunction::Expr(e)
    }
}

impl From<Polynomial> for PieceFunction {
    fn from(p: Polynomial) -> Self {
        PieceFunction::Poly(p)
    }
}

impl From<RationalFunction> for PieceFunction {
    fn from(r: RationalFunction) -> Self {
        PieceFunction::Ratio(r)
    }
}

impl fmt::Display for PieceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PieceFunction::Expr(e) => write!(f, "{e}"),
            PieceFunction::Poly(p) => write!(f, "{p}"),
            PieceFunction::Ratio(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("denominator is the zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("`{0}` is not a polynomial")]
    NotPolynomial(String),
    #[error("cannot evaluate `{piece}` at {at}")]
    EvaluationUnavailable { piece: String, at: Breakpoint },
    #[error("no piece function represents the value {0}")]
    Unrepresentable(String),
}

/// Canonicalization, equivalence and point evaluation for piece functions.
///
/// Implementations must satisfy `canonicalize(canonicalize(f)) ==
/// canonicalize(f)` and `equiv(f, g) <=> canonicalize(f) == canonicalize(g)`.
pub trait EffectiveDomain {
    type Piece: Clone + PartialEq + fmt::Debug;

    fn canonicalize(&self, f: &Self::Piece) -> Result<Self::Piece, DomainError>;

    fn eval_at(&self, f: &Self::Piece, at: &Breakpoint) -> Result<Value, DomainError>;

    fn zero(&self) -> Self::Piece;

    /// A canonical piece taking `value` at `at`, used to normalize point pieces.
    fn point_piece(&self, value: &Value, at: &Breakpoint) -> Result<Self::Piece, DomainError>;

    fn equiv(&self, f: &Self::Piece, g: &Self::Piece) -> Result<bool, DomainError> {
        Ok(self.canonicalize(f)? == self.canonicalize(g)?)
    }

    fn is_zero(&self, f: &Self::Piece) -> Result<bool, DomainError> {
        self.equiv(f, &self.zero())
    }

    /// Degree of the canonical piece, when the domain has one.
    fn degree(&self, _f: &Self::Piece) -> Result<Option<usize>, DomainError> {
        Ok(None)
    }
}

/// Ring operations on pieces; results are canonical.
pub trait PieceRing: EffectiveDomain {
    fn add(&self, f: &Self::Piece, g: &Self::Piece) -> Result<Self::Piece, DomainError>;
    fn mul(&self, f: &Self::Piece, g: &Self::Piece) -> Result<Self::Piece, DomainError>;
    fn neg(&self, f: &Self::Piece) -> Result<Self::Piece, DomainError>;

    fn sub(&self, f: &Self::Piece, g: &Self::Piece) -> Result<Self::Piece, DomainError> {
        self.add(f, &self.neg(g)?)
    }
}
