//! Piecewise-defined functions over the rationals with a canonical form.
//!
//! A [`PiecewiseOperator`] assigns a piece function to each open region and
//! each breakpoint of a finite range partition. Pieces come from an
//! [`EffectiveDomain`] that can canonicalize and evaluate them; given that,
//! [`canonical_form`] returns a representation that is identical for any two
//! operators denoting the same function.
//!
//! ```
//! use pwcanon_core::prelude::*;
//!
//! let d = PolynomialDomain;
//! let abs = parse_operator(&d, "pw { x < 0 : -x ; x = 0 : 0 ; otherwise : x }").unwrap();
//! let sq = mul(&d, &abs, &abs).unwrap();
//! let x2 = parse_operator(&d, "x^2").unwrap();
//! let diff = sub(&d, &sq, &x2).unwrap();
//! assert_eq!(print(&d, &canonical_form(&d, &diff).unwrap()).unwrap(), "0");
//! ```

pub mod bench;
pub mod domain;
pub mod gen;
pub mod oracle;
pub mod ordered;
pub mod piecewise;
pub mod syntax;

pub use domain::{
    Counting, DomainError, EffectiveDomain, Expr, PieceFunction, PieceRing, Polynomial,
    PolynomialDomain, RationalDomain, RationalFunction, Value,
};
pub use ordered::{compare, merge_breakpoints, Breakpoint, BreakpointSet};
pub use piecewise::{
    canonical_form, denest, equiv_piecewise, pseudonormalform, refine, CondPair, EndPiece,
    PiecewiseError, PiecewiseExpr, PiecewiseOperator, Region,
};

pub mod prelude {
    pub use crate::domain::{
        EffectiveDomain, Expr, PieceFunction, PieceRing, PolynomialDomain, RationalDomain, Value,
    };
    pub use crate::ordered::{Breakpoint, BreakpointSet};
    pub use crate::piecewise::{
        add, canonical_form, canonical_form_expr, denest, equiv_piecewise, lift_binary,
        lift_unary, mul, neg, pseudonormalform, refine, sub, PiecewiseExpr, PiecewiseOperator,
    };
    pub use crate::syntax::{parse, parse_operator, print};
}
