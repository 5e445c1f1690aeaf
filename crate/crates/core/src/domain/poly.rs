//! Dense univariate polynomials over exact rationals.

use std::fmt;
use std::ops;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::expr::{term_expr, Expr};

/// Coefficients stored low degree first with no trailing zero; the zero
/// polynomial is the empty sequence. Structural equality is therefore
/// polynomial identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(BigRational::one())
    }

    pub fn x() -> Self {
        Polynomial {
            coeffs: vec![BigRational::zero(), BigRational::one()],
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * at + c)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.recip()),
            None => Polynomial::zero(),
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Polynomial::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lc;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Polynomial::from_coeffs(quot), Polynomial::from_coeffs(rem))
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn to_expr(&self) -> Expr {
        let mut terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero());
        let Some((k, c)) = terms.next() else {
            return Expr::int(0);
        };
        let mut e = term_expr(c, k);
        for (k, c) in terms {
            e = if c.is_negative() {
                e - term_expr(&-c, k)
            } else {
                e + term_expr(c, k)
            };
        }
        e
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

impl ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

/// A reduced quotient of polynomials: coprime, denominator monic and nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    numer: Polynomial,
    denom: Polynomial,
}

impl RationalFunction {
    /// `None` when the denominator is the zero polynomial.
    pub fn new(numer: Polynomial, denom: Polynomial) -> Option<Self> {
        if denom.is_zero() {
            return None;
        }
        if numer.is_zero() {
            return Some(RationalFunction::from_poly(Polynomial::zero()));
        }
        let g = numer.gcd(&denom);
        let (mut n, _) = numer.div_rem(&g);
        let (mut d, _) = denom.div_rem(&g);
        let lc = d.leading_coeff().cloned().expect("nonzero denominator");
        if !lc.is_one() {
            let inv = lc.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Some(RationalFunction { numer: n, denom: d })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            numer: p,
            denom: Polynomial::one(),
        }
    }

    pub fn numer(&self) -> &Polynomial {
        &self.numer
    }

    pub fn denom(&self) -> &Polynomial {
        &self.denom
    }

    pub fn is_polynomial(&self) -> bool {
        self.denom.degree() == Some(0)
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    /// `None` where the reduced denominator vanishes.
    pub fn eval(&self, at: &BigRational) -> Option<BigRational> {
        let d = self.denom.eval(at);
        if d.is_zero() {
            None
        } else {
            Some(self.numer.eval(at) / d)
        }
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        let n = &(&self.numer * &other.denom) + &(&other.numer * &self.denom);
        RationalFunction::new(n, &self.denom * &other.denom).expect("nonzero product")
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            numer: -&self.numer,
            denom: self.denom.clone(),
        }
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.numer * &other.numer, &self.denom * &other.denom)
            .expect("nonzero product")
    }

    pub fn div(&self, other: &RationalFunction) -> Option<RationalFunction> {
        RationalFunction::new(&self.numer * &other.denom, &self.denom * &other.numer)
    }

    pub fn pow(&self, k: u32) -> RationalFunction {
        RationalFunction {
            numer: self.numer.pow(k),
            denom: self.denom.pow(k),
        }
    }

    pub fn to_expr(&self) -> Expr {
        if self.is_polynomial() {
            self.numer.to_expr()
        } else {
            Expr::Div(Box::new(self.numer.to_expr()), Box::new(self.denom.to_expr()))
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn trailing_zeros_trimmed() {
        assert!(Polynomial::from_ints(&[0, 0, 0]).is_zero());
        assert_eq!(Polynomial::from_ints(&[1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn product_and_power() {
        let xp1 = Polynomial::from_ints(&[1, 1]);
        let xm1 = Polynomial::from_ints(&[-1, 1]);
        assert_eq!(&xp1 * &xm1, Polynomial::from_ints(&[-1, 0, 1]));
        assert_eq!(xp1.pow(2), Polynomial::from_ints(&[1, 2, 1]));
        assert_eq!(xp1.pow(0), Polynomial::one());
    }

    #[test]
    fn division_identity() {
        let a = Polynomial::from_ints(&[-12, 16, -7, 1]);
        let b = Polynomial::from_ints(&[-2, 1]);
        let (quot, rem) = a.div_rem(&b);
        // x = 2 is a root
        assert!(rem.is_zero());
        assert_eq!(&(&quot * &b) + &rem, a);
        let c = Polynomial::from_ints(&[1, 0, 3]);
        let (quot, rem) = a.div_rem(&c);
        assert_eq!(&(&quot * &c) + &rem, a);
        assert!(rem.degree() < c.degree());
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = Polynomial::from_ints(&[-1, 0, 1]);
        let b = Polynomial::from_ints(&[-2, 2]);
        assert_eq!(a.gcd(&b), Polynomial::from_ints(&[-1, 1]));
        assert_eq!(a.gcd(&Polynomial::zero()), a.monic());
    }

    #[test]
    fn rational_function_reduction() {
        // (x^2 - 1)/(2x - 2) = (x + 1)/2; cross-check: num*(2x-2) = (x^2-1)*den
        let orig_n = Polynomial::from_ints(&[-1, 0, 1]);
        let orig_d = Polynomial::from_ints(&[-2, 2]);
        let r = RationalFunction::new(orig_n.clone(), orig_d.clone()).unwrap();
        assert_eq!(r.numer(), &Polynomial::from_coeffs(vec![q(1, 2), q(1, 2)]));
        assert_eq!(r.denom(), &Polynomial::one());
        assert_eq!(&r.numer * &orig_d, &orig_n * &r.denom);
        assert!(RationalFunction::new(orig_n, Polynomial::zero()).is_none());
    }

    #[test]
    fn canonical_display() {
        assert_eq!(Polynomial::from_ints(&[1, 2, 1]).to_string(), "x^2 + 2*x + 1");
        assert_eq!(Polynomial::from_ints(&[-1, -2, -1]).to_string(), "-x^2 - 2*x - 1");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(
            Polynomial::from_coeffs(vec![q(1, 2), q(-3, 2)]).to_string(),
            "-3/2*x + 1/2"
        );
        let r = RationalFunction::new(Polynomial::one(), Polynomial::from_ints(&[-1, 1])).unwrap();
        assert_eq!(r.to_string(), "1 / (x - 1)");
    }
}
