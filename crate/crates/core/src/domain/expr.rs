//! Unnormalized expression trees in the single variable `x`.

use std::fmt;
use std::ops;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A term over rational constants, `x`, ring operations, non-negative integer
/// powers and division.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Const(BigRational),
    Var,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Const(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Expr {
        Expr::Const(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn x() -> Expr {
        Expr::Var
    }

    pub fn pow(self, k: u32) -> Expr {
        Expr::Pow(Box::new(self), k)
    }

    pub fn contains_div(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::Var => false,
            Expr::Div(..) => true,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.contains_div() || b.contains_div()
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.contains_div(),
        }
    }

    /// Direct substitution without normalizing. `None` when a divisor
    /// evaluates to zero.
    pub fn eval(&self, at: &BigRational) -> Option<BigRational> {
        Some(match self {
            Expr::Const(c) => c.clone(),
            Expr::Var => at.clone(),
            Expr::Add(a, b) => a.eval(at)? + b.eval(at)?,
            Expr::Sub(a, b) => a.eval(at)? - b.eval(at)?,
            Expr::Mul(a, b) => a.eval(at)? * b.eval(at)?,
            Expr::Div(a, b) => {
                let d = b.eval(at)?;
                if d.is_zero() {
                    return None;
                }
                a.eval(at)? / d
            }
            Expr::Neg(a) => -a.eval(at)?,
            Expr::Pow(a, k) => num_traits::pow(a.eval(at)?, *k as usize),
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Const(c) if c.is_negative() => 3,
            Expr::Pow(..) => 4,
            // `1/2` lexes as one literal but is not atomic as a power base
            Expr::Const(c) if !c.is_integer() => 4,
            Expr::Const(_) | Expr::Var => 5,
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $variant:ident) => {
        impl ops::$tr for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, min_prec: u8) -> fmt::Result {
    if e.precedence() < min_prec {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var => write!(f, "x"),
            Expr::Add(a, b) => {
                write_child(f, a, 1)?;
                write!(f, " + ")?;
                write_child(f, b, 2)
            }
            Expr::Sub(a, b) => {
                write_child(f, a, 1)?;
                write!(f, " - ")?;
                write_child(f, b, 2)
            }
            Expr::Mul(a, b) => {
                write_child(f, a, 2)?;
                write!(f, "*")?;
                write_child(f, b, 3)
            }
            Expr::Div(a, b) => {
                write_child(f, a, 2)?;
                write!(f, " / ")?;
                write_child(f, b, 3)
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                write_child(f, a, 3)
            }
            Expr::Pow(a, k) => {
                write_child(f, a, 5)?;
                write!(f, "^{k}")
            }
        }
    }
}

/// `c` as an expression coefficient, omitting a unit factor.
pub(crate) fn term_expr(c: &BigRational, k: usize) -> Expr {
    let mono = match k {
        0 => return Expr::Const(c.clone()),
        1 => Expr::Var,
        _ => Expr::Var.pow(k as u32),
    };
    if c.is_one() {
        mono
    } else if (-c).is_one() {
        -mono
    } else {
        Expr::Const(c.clone()) * mono
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn eval_by_substitution() {
        // x^3 - 7x^2 + 16x - 12 at 2: 8 - 28 + 32 - 12
        let cubic = Expr::x().pow(3) - Expr::int(7) * Expr::x().pow(2) + Expr::int(16) * Expr::x()
            - Expr::int(12);
        assert_eq!(cubic.eval(&q(2, 1)), Some(q(0, 1)));
        let pole = Expr::int(1) / (Expr::x() - Expr::int(1));
        assert_eq!(pole.eval(&q(1, 1)), None);
        assert_eq!(pole.eval(&q(3, 1)), Some(q(1, 2)));
    }

    #[test]
    fn display_parenthesizes_by_precedence() {
        let e = (Expr::x() + Expr::int(1)).pow(2);
        assert_eq!(e.to_string(), "(x + 1)^2");
        let e = Expr::x() - (Expr::x() - Expr::int(1));
        assert_eq!(e.to_string(), "x - (x - 1)");
        let e = -(Expr::x() * Expr::int(2));
        assert_eq!(e.to_string(), "-(x*2)");
        let e = Expr::ratio(1, 2).pow(3);
        assert_eq!(e.to_string(), "(1/2)^3");
        let e = Expr::int(-2).pow(2);
        assert_eq!(e.to_string(), "(-2)^2");
        let e = Expr::int(1) / Expr::int(2);
        assert_eq!(e.to_string(), "1 / 2");
        assert_eq!(term_expr(&q(-1, 1), 2).to_string(), "-x^2");
        assert_eq!(term_expr(&q(3, 2), 1).to_string(), "3/2*x");
    }
}
