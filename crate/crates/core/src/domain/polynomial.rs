use num_traits::{One, Zero};

use super::{DomainError, EffectiveDomain, Expr, PieceFunction, PieceRing, Polynomial, Value};
use crate::ordered::Breakpoint;

/// Univariate polynomials over the rationals, canonicalized by expansion.
#[derive(Clone, Copy, Debug, Default)]
pub struct PolynomialDomain;

impl PolynomialDomain {
    pub fn expand(&self, e: &Expr) -> Result<Polynomial, DomainError> {
        Ok(match e {
            Expr::Const(c) => Polynomial::constant(c.clone()),
            Expr::Var => Polynomial::x(),
            Expr::Add(a, b) => &self.expand(a)? + &self.expand(b)?,
            Expr::Sub(a, b) => &self.expand(a)? - &self.expand(b)?,
            Expr::Mul(a, b) => &self.expand(a)? * &self.expand(b)?,
            Expr::Neg(a) => -&self.expand(a)?,
            Expr::Pow(a, k) => self.expand(a)?.pow(*k),
            Expr::Div(a, b) => {
                let d = self.expand(b)?;
                match d.as_constant() {
                    Some(c) if c.is_zero() => return Err(DomainError::DivisionByZeroPolynomial),
                    Some(c) => self.expand(a)?.scale(&c.recip()),
                    None => return Err(DomainError::NotPolynomial(e.to_string())),
                }
            }
        })
    }

    pub fn to_polynomial(&self, f: &PieceFunction) -> Result<Polynomial, DomainError> {
        match f {
            PieceFunction::Expr(e) => self.expand(e),
            PieceFunction::Poly(p) => Ok(p.clone()),
            PieceFunction::Ratio(r) => match r.denom().as_constant() {
                Some(c) if c.is_one() => Ok(r.numer().clone()),
                Some(c) => Ok(r.numer().scale(&c.recip())),
                None => Err(DomainError::NotPolynomial(r.to_string())),
            },
        }
    }
}

impl EffectiveDomain for PolynomialDomain {
    type Piece = PieceFunction;

    fn canonicalize(&self, f: &PieceFunction) -> Result<PieceFunction, DomainError> {
        self.to_polynomial(f).map(PieceFunction::Poly)
    }

    fn eval_at(&self, f: &PieceFunction, at: &Breakpoint) -> Result<Value, DomainError> {
        // substitution on the tree itself; no expansion
        Ok(match f {
            PieceFunction::Expr(e) => e.eval(at.value()).into(),
            PieceFunction::Poly(p) => Value::Defined(p.eval(at.value())),
            PieceFunction::Ratio(r) => r.eval(at.value()).into(),
        })
    }

    fn zero(&self) -> PieceFunction {
        PieceFunction::Poly(Polynomial::zero())
    }

    fn point_piece(&self, value: &Value, _at: &Breakpoint) -> Result<PieceFunction, DomainError> {
        match value {
            Value::Defined(c) => Ok(PieceFunction::constant(c.clone())),
            Value::Undefined => Err(DomainError::Unrepresentable(value.to_string())),
        }
    }

    fn is_zero(&self, f: &PieceFunction) -> Result<bool, DomainError> {
        Ok(self.to_polynomial(f)?.is_zero())
    }

    fn degree(&self, f: &PieceFunction) -> Result<Option<usize>, DomainError> {
        Ok(Some(self.to_polynomial(f)?.degree().unwrap_or(0)))
    }
}

impl PieceRing for PolynomialDomain {
    fn add(&self, f: &PieceFunction, g: &PieceFunction) -> Result<PieceFunction, DomainError> {
        Ok((&self.to_polynomial(f)? + &self.to_polynomial(g)?).into())
    }

    fn mul(&self, f: &PieceFunction, g: &PieceFunction) -> Result<PieceFunction, DomainError> {
        Ok((&self.to_polynomial(f)? * &self.to_polynomial(g)?).into())
    }

    fn neg(&self, f: &PieceFunction) -> Result<PieceFunction, DomainError> {
        Ok((-&self.to_polynomial(f)?).into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn x() -> Expr {
        Expr::x()
    }

    fn e(expr: Expr) -> PieceFunction {
        PieceFunction::Expr(expr)
    }

    fn poly(cs: &[i64]) -> PieceFunction {
        PieceFunction::Poly(Polynomial::from_ints(cs))
    }

    #[test]
    fn expands_square() {
        let d = PolynomialDomain;
        let sq = e((x() + Expr::int(1)).pow(2));
        assert_eq!(d.canonicalize(&sq).unwrap(), poly(&[1, 2, 1]));
        let zero = e(Expr::int(0) * x().pow(5) + Expr::int(0));
        assert_eq!(d.canonicalize(&zero).unwrap(), poly(&[]));
        assert!(d.is_zero(&zero).unwrap());
    }

    #[test]
    fn equivalence_examples() {
        let d = PolynomialDomain;
        let sq = e((x() + Expr::int(1)).pow(2));
        let expanded = e(x().pow(2) + Expr::int(2) * x() + Expr::int(1));
        assert!(d.equiv(&sq, &expanded).unwrap());
        assert!(d.equiv(&sq, &sq).unwrap());
        let diff = e(x().pow(2) - Expr::int(1));
        let prod = e((x() - Expr::int(1)) * (x() + Expr::int(1)));
        assert!(d.equiv(&diff, &prod).unwrap());
        assert!(!d.equiv(&diff, &sq).unwrap());
    }

    #[test]
    fn evaluation() {
        let d = PolynomialDomain;
        let cubic = poly(&[-12, 16, -7, 1]);
        let at2 = Breakpoint::from(2);
        assert_eq!(
            d.eval_at(&cubic, &at2).unwrap(),
            Value::Defined(BigRational::from_integer(BigInt::from(0)))
        );
        assert_eq!(
            d.eval_at(&d.zero(), &Breakpoint::from_ratio(-7, 3)).unwrap(),
            Value::Defined(BigRational::zero())
        );
    }

    #[test]
    fn ring_examples() {
        let d = PolynomialDomain;
        assert_eq!(d.add(&e(x()), &e(-x())).unwrap(), poly(&[]));
        assert_eq!(
            d.mul(&e(x() + Expr::int(1)), &e(x() - Expr::int(1))).unwrap(),
            poly(&[-1, 0, 1])
        );
        assert_eq!(d.neg(&poly(&[1, 2, 1])).unwrap(), poly(&[-1, -2, -1]));
    }

    #[test]
    fn division_rules() {
        let d = PolynomialDomain;
        let half = e(x() / Expr::int(2));
        assert_eq!(
            d.canonicalize(&half).unwrap(),
            PieceFunction::Poly(Polynomial::from_coeffs(vec![
                BigRational::zero(),
                BigRational::new(1.into(), 2.into())
            ]))
        );
        assert_eq!(
            d.canonicalize(&e(x() / (x() - x()))),
            Err(DomainError::DivisionByZeroPolynomial)
        );
        assert!(matches!(
            d.canonicalize(&e(Expr::int(1) / x())),
            Err(DomainError::NotPolynomial(_))
        ));
        assert!(d
            .point_piece(&Value::Undefined, &Breakpoint::from(0))
            .is_err());
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![(-9i64..=9).prop_map(Expr::int), Just(Expr::Var)];
        leaf.prop_recursive(5, 48, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
                inner.clone().prop_map(|a| -a),
                (inner, 0u32..3).prop_map(|(a, k)| a.pow(k)),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn canonicalize_is_idempotent(ex in arb_expr()) {
            let d = PolynomialDomain;
            let c = d.canonicalize(&e(ex)).unwrap();
            prop_assert_eq!(d.canonicalize(&c).unwrap(), c);
        }

        #[test]
        fn equiv_is_sound_against_evaluation(a in arb_expr(), pts in proptest::collection::vec((-30i64..30, 1i64..7), 50)) {
            let d = PolynomialDomain;
            let f = e(a.clone());
            let g = d.canonicalize(&f).unwrap();
            prop_assert!(d.equiv(&f, &g).unwrap());
            for (n, den) in pts {
                let b = Breakpoint::from_ratio(n, den);
                prop_assert_eq!(d.eval_at(&f, &b).unwrap(), d.eval_at(&g, &b).unwrap());
            }
        }

        // g = f + k (x - 1)(x - 2)...(x - D) agrees with f at 1..=D; a further
        // agreement at 0 forces k = 0.
        #[test]
        fn agreement_at_degree_plus_one_points_decides(a in arb_expr(), k in -2i64..=2) {
            let d = PolynomialDomain;
            let f = d.expand(&a).unwrap();
            let deg = f.degree().unwrap_or(0).max(1);
            let vanishing = (1..=deg as i64).map(|r| x() - Expr::int(r)).reduce(|a, b| a * b).unwrap();
            let g = e(a.clone() + Expr::int(k) * vanishing);
            let f = e(a);
            let agree = (0..=deg as i64).all(|r| {
                let b = Breakpoint::from(r);
                d.eval_at(&f, &b).unwrap() == d.eval_at(&g, &b).unwrap()
            });
            prop_assert_eq!(agree, k == 0);
            prop_assert_eq!(d.equiv(&f, &g).unwrap(), agree);
        }
    }
}
