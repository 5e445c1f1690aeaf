//! Text syntax for piecewise expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' nat)?
//! atom   := rational | 'x' | '(' expr ')' | pw
//! pw     := 'pw' '{' branch (';' branch)* ';' 'otherwise' ':' expr '}'
//! branch := 'x' ('<' | '=' | '<=') rational ':' expr
//! ```
//!
//! Branch breakpoints must appear in increasing order, with `x < b` before
//! `x = b`. `x <= b` supplies both. The point value of an `x = b` branch may
//! be `undef`.

mod lexer;
mod parser;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::{DomainError, EffectiveDomain, Expr, PieceFunction, PieceRing, Value};
use crate::piecewise::{denest, PiecewiseError, PiecewiseExpr, PiecewiseOperator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("condition on {at} at byte {pos} breaks the increasing order of breakpoints")]
    NonMonotoneConditions { pos: usize, at: String },
    #[error("condition on {at} at byte {pos} repeats an earlier condition")]
    DuplicateCondition { pos: usize, at: String },
    #[error(transparent)]
    Piecewise(#[from] PiecewiseError),
}

impl ParseError {
    pub(crate) fn syntax(pos: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            pos,
            message: message.into(),
        }
    }
}

pub fn parse(text: &str) -> Result<PiecewiseExpr<PieceFunction>, ParseError> {
    parser::Parser::new(text)?.parse_all()
}

/// Parses a single piece function; `pw` blocks are rejected.
pub fn parse_piece(text: &str) -> Result<Expr, ParseError> {
    match parse(text)? {
        PiecewiseExpr::Piece(PieceFunction::Expr(e)) => Ok(e),
        _ => Err(ParseError::syntax(0, "expected a piece function without `pw`")),
    }
}

/// Parses and denests into a flat operator.
pub fn parse_operator<D>(domain: &D, text: &str) -> Result<PiecewiseOperator<PieceFunction>, ParseError>
where
    D: PieceRing<Piece = PieceFunction>,
{
    Ok(denest(domain, &parse(text)?)?)
}

fn point_value<D>(domain: &D, op: &PiecewiseOperator<PieceFunction>, i: usize) -> Result<String, DomainError>
where
    D: EffectiveDomain<Piece = PieceFunction>,
{
    let pair = &op.pairs()[i];
    Ok(match domain.eval_at(&pair.pt_fn, &pair.right_pt)? {
        Value::Defined(v) => v.to_string(),
        Value::Undefined => "undef".to_string(),
    })
}

/// Case display in the input grammar. Point pieces print as their value at
/// the breakpoint; a single-piece operator prints as a bare expression.
pub fn print<D>(domain: &D, op: &PiecewiseOperator<PieceFunction>) -> Result<String, DomainError>
where
    D: EffectiveDomain<Piece = PieceFunction>,
{
    if op.is_single_piece() {
        return Ok(op.end().func.to_string());
    }
    let mut parts = Vec::with_capacity(2 * op.len() + 1);
    for (i, pair) in op.pairs().iter().enumerate() {
        parts.push(format!("x < {} : {}", pair.right_pt, pair.left_fn));
        parts.push(format!("x = {} : {}", pair.right_pt, point_value(domain, op, i)?));
    }
    parts.push(format!("otherwise : {}", op.end().func));
    Ok(format!("pw {{ {} }}", parts.join(" ; ")))
}

/// Machine-readable operator: breakpoints and the `2n + 1` pieces in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub breakpoints: Vec<String>,
    pub pieces: Vec<String>,
}

impl OperatorJson {
    pub fn from_operator(op: &PiecewiseOperator<PieceFunction>) -> Self {
        OperatorJson {
            breakpoints: op.pairs().iter().map(|p| p.right_pt.to_string()).collect(),
            pieces: op.pieces().map(|f| f.to_string()).collect(),
        }
    }

    /// Rebuilds an operator with unnormalized pieces.
    pub fn to_operator(&self) -> Result<PiecewiseOperator<PieceFunction>, ParseError> {
        let points = self
            .breakpoints
            .iter()
            .map(|b| {
                b.parse()
                    .map_err(|e| ParseError::syntax(0, format!("bad breakpoint `{b}`: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let bs = crate::ordered::BreakpointSet::from_sorted(points)
            .map_err(|e| PiecewiseError::UnsortedBreakpoints(e.index))?;
        let pieces = self
            .pieces
            .iter()
            .map(|s| parse_piece(s).map(PieceFunction::Expr))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PiecewiseOperator::make(bs, pieces)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Polynomial, PolynomialDomain, RationalDomain};
    use crate::ordered::{Breakpoint, BreakpointSet};
    use crate::piecewise::canonical_form;

    const ABS: &str = "pw { x < 0 : -x ; x = 0 : 0 ; otherwise : x }";

    fn bps(xs: &[i64]) -> BreakpointSet {
        BreakpointSet::from_sorted(xs.iter().map(|&x| Breakpoint::from(x)).collect()).unwrap()
    }

    fn poly(cs: &[i64]) -> PieceFunction {
        PieceFunction::Poly(Polynomial::from_ints(cs))
    }

    fn canon(text: &str) -> PiecewiseOperator<PieceFunction> {
        let d = PolynomialDomain;
        canonical_form(&d, &parse_operator(&d, text).unwrap()).unwrap()
    }

    #[test]
    fn parses_abs() {
        let expected =
            PiecewiseOperator::make(bps(&[0]), vec![poly(&[0, -1]), poly(&[]), poly(&[0, 1])]).unwrap();
        assert_eq!(canon(ABS), expected);
    }

    #[test]
    fn plain_expression_is_a_single_piece() {
        let e = parse("x^2 + 2*x + 1").unwrap();
        assert!(matches!(e, PiecewiseExpr::Piece(PieceFunction::Expr(_))));
    }

    #[test]
    fn order_violations() {
        assert!(matches!(
            parse("pw { x = 0 : 1 ; x < 0 : 0 ; otherwise : 0 }"),
            Err(ParseError::NonMonotoneConditions { .. })
        ));
        assert!(matches!(
            parse("pw { x < 1 : 1 ; x < 0 : 0 ; otherwise : 0 }"),
            Err(ParseError::NonMonotoneConditions { .. })
        ));
        assert!(matches!(
            parse("pw { x < 0 : 1 ; x < 0 : 0 ; otherwise : 0 }"),
            Err(ParseError::DuplicateCondition { .. })
        ));
        assert!(matches!(
            parse("pw { x <= 0 : 1 ; x = 0 : 0 ; otherwise : 0 }"),
            Err(ParseError::DuplicateCondition { .. })
        ));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("pw { x < 0 : -x ; otherwise x }") {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 28),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("x +").is_err());
        assert!(parse("x^-1").is_err());
        assert!(parse("pw { otherwise : 1 }").is_err());
        assert!(parse("(x + 1").is_err());
        assert!(parse("x - undef").is_err());
        assert!(parse("1 / pw { x < 0 : 1 ; otherwise : 2 }").is_err());
    }

    #[test]
    fn omitted_branches_default() {
        // point inherits the region to its left
        let p = canon("pw { x < 0 : -1 ; otherwise : 1 }");
        let expected = PiecewiseOperator::make(bps(&[0]), vec![poly(&[-1]), poly(&[-1]), poly(&[1])]).unwrap();
        assert_eq!(p, expected);
        // region without `<` takes the next region's piece
        let p = canon("pw { x = 0 : 1 ; otherwise : 0 }");
        let expected = PiecewiseOperator::make(bps(&[0]), vec![poly(&[]), poly(&[1]), poly(&[])]).unwrap();
        assert_eq!(p, expected);
        // `<=` supplies both
        let p = canon("pw { x <= 2 : x ; otherwise : 2 }");
        assert_eq!(p, PiecewiseOperator::make(bps(&[2]), vec![poly(&[0, 1]), poly(&[2]), poly(&[2])]).unwrap());
    }

    #[test]
    fn nested_and_arithmetic() {
        assert_eq!(canon("pw{x<0: x*x; x=0: 0; otherwise: x*x} - x^2"), PiecewiseOperator::constant(poly(&[])));
        let nested = "pw { x < 3 : pw { x < 1 : x^2 - 3 ; x = 1 : -5 ; otherwise : x^3 - 7*x^2 + 16*x - 12 } ; \
                      x = 3 : 3 ; otherwise : pw { x < 0 : -x ; x = 0 : 0 ; otherwise : x } }";
        let p = canon(nested);
        assert_eq!(p.breakpoints(), bps(&[1, 3]));
        assert_eq!(
            print(&PolynomialDomain, &p).unwrap(),
            "pw { x < 1 : x^2 - 3 ; x = 1 : -5 ; x < 3 : x^3 - 7*x^2 + 16*x - 12 ; x = 3 : 3 ; otherwise : x }"
        );
        let squared = canon("pw { x < 0 : -x ; otherwise : x }^2");
        assert_eq!(squared, PiecewiseOperator::constant(poly(&[0, 0, 1])));
    }

    #[test]
    fn printing() {
        let d = PolynomialDomain;
        assert_eq!(print(&d, &canon(ABS)).unwrap(), ABS);
        assert_eq!(print(&d, &PiecewiseOperator::constant(poly(&[]))).unwrap(), "0");
        let p = canon("pw { x < -3/2 : 1/2*x ; x = -3/2 : x ; otherwise : -x^2 }");
        let text = print(&d, &p).unwrap();
        assert_eq!(text, "pw { x < -3/2 : 1/2*x ; x = -3/2 : -3/2 ; otherwise : -x^2 }");
        assert_eq!(canon(&text), p);
    }

    #[test]
    fn undefined_points_round_trip() {
        let d = RationalDomain;
        let text = "pw { x < 1 : 1 / (x - 1) ; x = 1 : undef ; otherwise : 0 }";
        let p = canonical_form(&d, &parse_operator(&d, text).unwrap()).unwrap();
        let printed = print(&d, &p).unwrap();
        assert_eq!(printed, text);
        let again = canonical_form(&d, &parse_operator(&d, &printed).unwrap()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn json_form() {
        let p = canon(ABS);
        let j = OperatorJson::from_operator(&p);
        assert_eq!(j.breakpoints, vec!["0"]);
        assert_eq!(j.pieces, vec!["-x", "0", "x"]);
        let text = serde_json::to_string(&j).unwrap();
        let back: OperatorJson = serde_json::from_str(&text).unwrap();
        let d = PolynomialDomain;
        assert_eq!(canonical_form(&d, &back.to_operator().unwrap()).unwrap(), p);
    }
}
