use num_rational::BigRational;
use num_traits::One;

use super::{
    DomainError, EffectiveDomain, Expr, PieceFunction, PieceRing, Polynomial, RationalFunction,
    Value,
};
use crate::ordered::Breakpoint;

/// Quotients of polynomials in reduced form with a monic denominator.
///
/// Equivalence is equality of reduced forms, so `(x^2 - 1)/(x - 1)` and
/// `x + 1` are identified although the first is undefined at 1. Evaluation
/// follows the reduced form, which keeps `eval_at` consistent with `equiv`.
#[derive(Clone, Copy, Debug, Default)]
pub struct RationalDomain;

impl RationalDomain {
    pub fn reduce(&self, e: &Expr) -> Result<RationalFunction, DomainError> {
        Ok(match e {
            Expr::Const(c) => RationalFunction::from_poly(Polynomial::constant(c.clone())),
            Expr::Var => RationalFunction::from_poly(Polynomial::x()),
            Expr::Add(a, b) => self.reduce(a)?.add(&self.reduce(b)?),
            Expr::Sub(a, b) => self.reduce(a)?.add(&self.reduce(b)?.neg()),
            Expr::Mul(a, b) => self.reduce(a)?.mul(&self.reduce(b)?),
            Expr::Neg(a) => self.reduce(a)?.neg(),
            Expr::Pow(a, k) => self.reduce(a)?.pow(*k),
            Expr::Div(a, b) => self
                .reduce(a)?
                .div(&self.reduce(b)?)
                .ok_or(DomainError::DivisionByZeroPolynomial)?,
        })
    }

    pub fn to_rational(&self, f: &PieceFunction) -> Result<RationalFunction, DomainError> {
        match f {
            PieceFunction::Expr(e) => self.reduce(e),
            PieceFunction::Poly(p) => Ok(RationalFunction::from_poly(p.clone())),
            PieceFunction::Ratio(r) => Ok(r.clone()),
        }
    }
}

impl EffectiveDomain for RationalDomain {
    type Piece = PieceFunction;

    fn canonicalize(&self, f: &PieceFunction) -> Result<PieceFunction, DomainError> {
        self.to_rational(f).map(PieceFunction::Ratio)
    }

    fn eval_at(&self, f: &PieceFunction, at: &Breakpoint) -> Result<Value, DomainError> {
        Ok(self.to_rational(f)?.eval(at.value()).into())
    }

    fn zero(&self) -> PieceFunction {
        PieceFunction::Ratio(RationalFunction::from_poly(Polynomial::zero()))
    }

    /// Undefined maps to `1/(x - at)`, the canonical function with a pole there.
    fn point_piece(&self, value: &Value, at: &Breakpoint) -> Result<PieceFunction, DomainError> {
        let r = match value {
            Value::Defined(c) => RationalFunction::from_poly(Polynomial::constant(c.clone())),
            Value::Undefined => {
                let denom = Polynomial::from_coeffs(vec![-at.value().clone(), BigRational::one()]);
                RationalFunction::new(Polynomial::one(), denom).expect("nonzero denominator")
            }
        };
        Ok(PieceFunction::Ratio(r))
    }

    fn is_zero(&self, f: &PieceFunction) -> Result<bool, DomainError> {
        Ok(self.to_rational(f)?.is_zero())
    }
}

impl PieceRing for RationalDomain {
    fn add(&self, f: &PieceFunction, g: &PieceFunction) -> Result<PieceFunction, DomainError> {
        Ok(self.to_rational(f)?.add(&self.to_rational(g)?).into())
    }

    fn mul(&self, f: &PieceFunction, g: &PieceFunction) -> Result<PieceFunction, DomainError> {
        Ok(self.to_rational(f)?.mul(&self.to_rational(g)?).into())
    }

    fn neg(&self, f: &PieceFunction) -> Result<PieceFunction, DomainError> {
        Ok(self.to_rational(f)?.neg().into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn x() -> Expr {
        Expr::x()
    }

    #[test]
    fn gcd_cancellation_and_monic_denominator() {
        let d = RationalDomain;
        let f = PieceFunction::Expr(
            (x().pow(2) - Expr::int(1)) / (Expr::int(2) * x() - Expr::int(2)),
        );
        let PieceFunction::Ratio(r) = d.canonicalize(&f).unwrap() else {
            panic!("expected a reduced quotient");
        };
        assert_eq!(r.numer(), &Polynomial::from_coeffs(vec![q(1, 2), q(1, 2)]));
        assert_eq!(r.denom(), &Polynomial::one());

        let g = PieceFunction::Expr((Expr::int(3) * x()) / (Expr::int(2) * x() - Expr::int(2)));
        let PieceFunction::Ratio(r) = d.canonicalize(&g).unwrap() else {
            panic!("expected a reduced quotient");
        };
        assert_eq!(r.numer(), &Polynomial::from_coeffs(vec![q(0, 1), q(3, 2)]));
        assert_eq!(r.denom(), &Polynomial::from_ints(&[-1, 1]));
    }

    #[test]
    fn poles_evaluate_to_undefined() {
        let d = RationalDomain;
        let f = PieceFunction::Expr(Expr::int(1) / (x() - Expr::int(1)));
        assert_eq!(d.eval_at(&f, &Breakpoint::from(1)).unwrap(), Value::Undefined);
        assert_eq!(
            d.eval_at(&f, &Breakpoint::from(3)).unwrap(),
            Value::Defined(q(1, 2))
        );
    }

    #[test]
    fn zero_denominator_is_an_error() {
        let d = RationalDomain;
        let f = PieceFunction::Expr(x() / (x() - x()));
        assert_eq!(d.canonicalize(&f), Err(DomainError::DivisionByZeroPolynomial));
        assert_eq!(d.equiv(&f, &f), Err(DomainError::DivisionByZeroPolynomial));
    }

    #[test]
    fn undefined_point_piece_has_a_pole_there() {
        let d = RationalDomain;
        let at = Breakpoint::from_ratio(3, 2);
        let p = d.point_piece(&Value::Undefined, &at).unwrap();
        assert_eq!(d.eval_at(&p, &at).unwrap(), Value::Undefined);
        assert_eq!(d.canonicalize(&p).unwrap(), p);
    }

    #[test]
    fn canonical_forms_are_fixed_points() {
        let d = RationalDomain;
        let f = PieceFunction::Expr((x() + Expr::int(1)).pow(2) / (x().pow(2) - Expr::int(1)));
        let c = d.canonicalize(&f).unwrap();
        assert_eq!(d.canonicalize(&c).unwrap(), c);
        assert!(d.equiv(
            &c,
            &PieceFunction::Expr((x() + Expr::int(1)) / (x() - Expr::int(1)))
        )
        .unwrap());
    }
}
