use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::lexer::{tokenize, Tok};
use super::ParseError;
use crate::domain::{Expr, PieceFunction};
use crate::ordered::{Breakpoint, BreakpointSet};
use crate::piecewise::{PiecewiseExpr, PiecewiseOperator};

type PExpr = PiecewiseExpr<PieceFunction>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cond {
    Lt,
    Eq,
    Le,
}

struct Branch {
    cond: Cond,
    at: Breakpoint,
    body: PExpr,
    pos: usize,
}

/// Per-breakpoint pieces gathered from the branches.
struct Slot {
    at: Breakpoint,
    open: Option<PExpr>,
    point: Option<PExpr>,
    last: Cond,
}

pub(crate) struct Parser {
    toks: Vec<(Tok, usize)>,
    idx: usize,
}

impl Parser {
    pub(crate) fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(text)?,
            idx: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.idx].0
    }

    fn pos(&self) -> usize {
        self.toks[self.idx].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.idx].0.clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected {}", want.describe())))
        }
    }

    fn unexpected(&self, what: &str) -> ParseError {
        ParseError::syntax(self.pos(), format!("{what}, found {}", self.peek().describe()))
    }

    pub(crate) fn parse_all(mut self) -> Result<PExpr, ParseError> {
        let e = self.expr()?;
        if *self.peek() != Tok::Eof {
            return Err(self.unexpected("expected an operator or end of input"));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<PExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = combine(lhs, self.term()?, |a, b| a + b, PiecewiseExpr::Add);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = combine(lhs, self.term()?, |a, b| a - b, PiecewiseExpr::Sub);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<PExpr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = combine(lhs, self.factor()?, |a, b| a * b, PiecewiseExpr::Mul);
                }
                Tok::Slash => {
                    let pos = self.pos();
                    self.bump();
                    let rhs = self.factor()?;
                    lhs = match (lhs, rhs) {
                        (
                            PiecewiseExpr::Piece(PieceFunction::Expr(a)),
                            PiecewiseExpr::Piece(PieceFunction::Expr(b)),
                        ) => PiecewiseExpr::Piece(PieceFunction::Expr(a / b)),
                        _ => {
                            return Err(ParseError::syntax(
                                pos,
                                "division is only supported between piece functions",
                            ))
                        }
                    };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<PExpr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            let inner = self.factor()?;
            return Ok(match inner {
                PiecewiseExpr::Piece(PieceFunction::Expr(e)) => {
                    PiecewiseExpr::Piece(PieceFunction::Expr(-e))
                }
                other => PiecewiseExpr::Neg(Box::new(other)),
            });
        }
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let k = match self.bump() {
            Tok::Num(n) if n.is_integer() => n.to_integer().to_u32(),
            _ => None,
        }
        .ok_or_else(|| ParseError::syntax(pos, "exponent must be a non-negative integer"))?;
        Ok(match base {
            PiecewiseExpr::Piece(PieceFunction::Expr(e)) => {
                PiecewiseExpr::Piece(PieceFunction::Expr(e.pow(k)))
            }
            other => {
                let mut acc = PiecewiseExpr::Piece(PieceFunction::Expr(Expr::int(1)));
                for _ in 0..k {
                    acc = PiecewiseExpr::Mul(Box::new(acc), Box::new(other.clone()));
                }
                acc
            }
        })
    }

    fn atom(&mut self) -> Result<PExpr, ParseError> {
        let leaf = |e: Expr| PiecewiseExpr::Piece(PieceFunction::Expr(e));
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(leaf(Expr::Const(n)))
            }
            Tok::X => {
                self.bump();
                Ok(leaf(Expr::Var))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Pw => self.piecewise(),
            Tok::Undef => Err(ParseError::syntax(
                self.pos(),
                "`undef` may only stand alone as the value of an `x = b` branch",
            )),
            _ => Err(self.unexpected("expected an expression")),
        }
    }

    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(if negative { -n } else { n })
            }
            _ => Err(self.unexpected("expected a rational literal")),
        }
    }

    fn piecewise(&mut self) -> Result<PExpr, ParseError> {
        self.expect(Tok::Pw)?;
        self.expect(Tok::LBrace)?;
        let mut branches = Vec::new();
        loop {
            if *self.peek() == Tok::Otherwise {
                if branches.is_empty() {
                    return Err(self.unexpected("expected at least one `x` condition"));
                }
                self.bump();
                self.expect(Tok::Colon)?;
                let otherwise = self.expr()?;
                self.expect(Tok::RBrace)?;
                return assemble(branches, otherwise).map(PiecewiseExpr::piecewise);
            }
            branches.push(self.branch()?);
            self.expect(Tok::Semi)?;
        }
    }

    fn branch(&mut self) -> Result<Branch, ParseError> {
        let pos = self.pos();
        self.expect(Tok::X)?;
        let cond = match self.bump() {
            Tok::Lt => Cond::Lt,
            Tok::Eq => Cond::Eq,
            Tok::Le => Cond::Le,
            _ => return Err(ParseError::syntax(self.toks[self.idx - 1].1, "expected `<`, `=` or `<=`")),
        };
        let at = Breakpoint::new(self.rational()?);
        self.expect(Tok::Colon)?;
        let body = if cond == Cond::Eq && *self.peek() == Tok::Undef {
            self.bump();
            // the canonical function with a pole exactly at `at`
            PiecewiseExpr::Piece(PieceFunction::Expr(
                Expr::int(1) / (Expr::Var - Expr::Const(at.value().clone())),
            ))
        } else {
            self.expr()?
        };
        Ok(Branch { cond, at, body, pos })
    }
}

fn combine(
    lhs: PExpr,
    rhs: PExpr,
    on_exprs: impl FnOnce(Expr, Expr) -> Expr,
    on_piecewise: impl FnOnce(Box<PExpr>, Box<PExpr>) -> PExpr,
) -> PExpr {
    match (lhs, rhs) {
        (PiecewiseExpr::Piece(PieceFunction::Expr(a)), PiecewiseExpr::Piece(PieceFunction::Expr(b))) => {
            PiecewiseExpr::Piece(PieceFunction::Expr(on_exprs(a, b)))
        }
        (a, b) => on_piecewise(Box::new(a), Box::new(b)),
    }
}

/// Turns ordered branches into a range partition. A missing `x = b` piece
/// repeats the region to its left; a missing `x < b` region takes the next
/// region's piece.
fn assemble(branches: Vec<Branch>, otherwise: PExpr) -> Result<PiecewiseOperator<PExpr>, ParseError> {
    let mut slots: Vec<Slot> = Vec::new();
    for b in branches {
        let same = match slots.last() {
            None => false,
            Some(prev) => match b.at.cmp(&prev.at) {
                Ordering::Less => {
                    return Err(ParseError::NonMonotoneConditions {
                        pos: b.pos,
                        at: b.at.to_string(),
                    })
                }
                Ordering::Equal => true,
                Ordering::Greater => false,
            },
        };
        if same {
            let prev = slots.last_mut().expect("checked above");
            match (prev.last, b.cond) {
                (Cond::Lt, Cond::Eq) => {
                    prev.point = Some(b.body);
                    prev.last = Cond::Eq;
                }
                (Cond::Eq, Cond::Lt) | (Cond::Eq, Cond::Le) => {
                    return Err(ParseError::NonMonotoneConditions {
                        pos: b.pos,
                        at: b.at.to_string(),
                    })
                }
                _ => {
                    return Err(ParseError::DuplicateCondition {
                        pos: b.pos,
                        at: b.at.to_string(),
                    })
                }
            }
            continue;
        }
        let (open, point) = match b.cond {
            Cond::Lt => (Some(b.body), None),
            Cond::Eq => (None, Some(b.body)),
            Cond::Le => (Some(b.body.clone()), Some(b.body)),
        };
        slots.push(Slot {
            at: b.at,
            open,
            point,
            last: b.cond,
        });
    }

    // fill open regions right to left from the next specified region
    let mut next_open = otherwise.clone();
    for slot in slots.iter_mut().rev() {
        match &slot.open {
            Some(e) => next_open = e.clone(),
            None => slot.open = Some(next_open.clone()),
        }
    }
    let n = slots.len();
    let mut funcs = Vec::with_capacity(2 * n + 1);
    let mut points = Vec::with_capacity(n);
    for slot in slots {
        let open = slot.open.expect("filled above");
        let point = slot.point.unwrap_or_else(|| open.clone());
        funcs.push(open);
        funcs.push(point);
        points.push(slot.at);
    }
    funcs.push(otherwise);
    let bs = BreakpointSet::from_sorted(points).expect("monotonicity checked");
    Ok(PiecewiseOperator::make(bs, funcs).expect("2n + 1 pieces"))
}
