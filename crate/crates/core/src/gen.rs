//! Seeded random operators for tests and benchmarks.
//!
//! Pieces are emitted as unexpanded [`Expr`] trees in varied but equivalent
//! shapes, so canonicalization has real work to do.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domain::{Expr, PieceFunction, Polynomial, PolynomialDomain, Value};
use crate::ordered::{Breakpoint, BreakpointSet};
use crate::piecewise::{refine, CondPair, PiecewiseOperator};

/// Shape of a generated operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OperatorSpec {
    pub breakpoints: usize,
    /// Upper bound on the degree of every piece.
    pub degree: usize,
    /// Number of distinct open-region polynomials to draw from. Small pools
    /// make adjacent regions coincide.
    pub pool: usize,
}

impl Default for OperatorSpec {
    fn default() -> Self {
        OperatorSpec {
            breakpoints: 4,
            degree: 3,
            pool: 3,
        }
    }
}

pub struct Generator {
    rng: ChaCha8Rng,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn x_minus(at: &Breakpoint) -> Polynomial {
    Polynomial::from_coeffs(vec![-at.value().clone(), BigRational::one()])
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// `n / d` with `|n| <= max_abs`, `1 <= d <= max_den`.
    pub fn rational(&mut self, max_abs: i64, max_den: i64) -> BigRational {
        let n = self.rng.gen_range(-max_abs..=max_abs);
        let d = self.rng.gen_range(1..=max_den);
        rat(n, d)
    }

    /// Random polynomial of degree at most `degree`, with some zero
    /// coefficients.
    pub fn polynomial(&mut self, degree: usize) -> Polynomial {
        let coeffs = (0..=degree)
            .map(|_| {
                if self.rng.gen_bool(0.25) {
                    BigRational::zero()
                } else {
                    self.rational(9, 3)
                }
            })
            .collect();
        Polynomial::from_coeffs(coeffs)
    }

    /// `n` increasing rationals with small gaps.
    pub fn breakpoints(&mut self, n: usize) -> BreakpointSet {
        let mut at = rat(-(n as i64) - self.rng.gen_range(0..5), 1);
        let mut points = Vec::with_capacity(n);
        for _ in 0..n {
            at += rat(self.rng.gen_range(1..=4), self.rng.gen_range(1..=3));
            points.push(Breakpoint::new(at.clone()));
        }
        BreakpointSet::from_sorted(points).expect("strictly increasing by construction")
    }

    /// A probe point near `bs`: a breakpoint, a point between two, or one
    /// beyond either end, each about equally often.
    pub fn probe(&mut self, bs: &BreakpointSet) -> Breakpoint {
        let pts = bs.as_slice();
        if pts.is_empty() {
            return Breakpoint::new(self.rational(20, 4));
        }
        let i = self.rng.gen_range(0..pts.len());
        let delta = rat(self.rng.gen_range(1..=7), 8);
        match self.rng.gen_range(0..4) {
            0 => pts[i].clone(),
            1 => pts[0].offset(&-(delta * rat(self.rng.gen_range(1..=10), 1))),
            2 => pts[pts.len() - 1].offset(&(delta * rat(self.rng.gen_range(1..=10), 1))),
            _ => match pts.get(i + 1) {
                Some(next) => {
                    let width = next.value() - pts[i].value();
                    pts[i].offset(&(width * delta))
                }
                None => pts[i].offset(&delta),
            },
        }
    }

    /// An equivalent expression tree for `p` in one of several shapes.
    pub fn reshape(&mut self, p: &Polynomial) -> Expr {
        match self.rng.gen_range(0..5) {
            0 => p.to_expr(),
            1 => horner(p),
            2 => self.shuffled_terms(p),
            3 => {
                let degree = p.degree().unwrap_or(0);
                let q = self.polynomial(degree);
                self.shuffled_terms(&(p + &q)) - horner(&q)
            }
            _ => {
                // (x - a) * quotient + remainder
                let at = Breakpoint::new(self.rational(4, 2));
                let (quot, rem) = p.div_rem(&x_minus(&at));
                (Expr::Var - Expr::Const(at.into_value())) * horner(&quot) + rem.to_expr()
            }
        }
    }

    fn shuffled_terms(&mut self, p: &Polynomial) -> Expr {
        let mut terms: Vec<Expr> = Vec::new();
        for (k, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = |c: BigRational| match k {
                0 => Expr::Const(c),
                1 => Expr::Const(c) * Expr::Var,
                _ => Expr::Const(c) * Expr::Var.pow(k as u32),
            };
            if self.rng.gen_bool(0.3) {
                let part = self.rational(5, 2);
                terms.push(mono(c - &part));
                terms.push(mono(part));
            } else {
                terms.push(mono(c.clone()));
            }
        }
        terms.shuffle(&mut self.rng);
        terms
            .into_iter()
            .reduce(|a, b| a + b)
            .unwrap_or_else(|| Expr::int(0))
    }

    /// Random operator with pieces drawn as described by `spec`. Roughly half
    /// the regions repeat their left neighbour, and point pieces are a mix of
    /// copies, functions agreeing with a neighbour at the breakpoint, and
    /// unrelated functions.
    pub fn operator(&mut self, spec: &OperatorSpec) -> PiecewiseOperator<PieceFunction> {
        let pool: Vec<Polynomial> = (0..spec.pool.max(1)).map(|_| self.polynomial(spec.degree)).collect();
        let bs = self.breakpoints(spec.breakpoints);
        let mut regions: Vec<Polynomial> = Vec::with_capacity(bs.len() + 1);
        for i in 0..=bs.len() {
            let repeat = i > 0 && self.rng.gen_bool(0.5);
            let next = if repeat {
                regions[i - 1].clone()
            } else {
                pool.choose(&mut self.rng).expect("non-empty pool").clone()
            };
            regions.push(next);
        }
        let mut funcs = Vec::with_capacity(2 * bs.len() + 1);
        for (i, at) in bs.iter().enumerate() {
            let point = match self.rng.gen_range(0..4) {
                0 => regions[i].clone(),
                1 => self.agreeing(&regions[i + 1], at, spec.degree),
                2 => self.agreeing(&regions[i], at, spec.degree),
                _ => self.polynomial(spec.degree),
            };
            funcs.push(PieceFunction::Expr(self.reshape(&regions[i])));
            funcs.push(PieceFunction::Expr(self.reshape(&point)));
        }
        funcs.push(PieceFunction::Expr(self.reshape(&regions[bs.len()])));
        PiecewiseOperator::make(bs, funcs).expect("2n + 1 pieces")
    }

    /// `f + (x - at) * r` with `deg r < degree`: equal to `f` at `at`.
    fn agreeing(&mut self, f: &Polynomial, at: &Breakpoint, degree: usize) -> Polynomial {
        if degree == 0 {
            return Polynomial::constant(f.eval(at.value()));
        }
        let r = self.polynomial(degree - 1);
        let value = Polynomial::constant(f.eval(at.value()));
        &value + &(&x_minus(at) * &r)
    }

    /// A point strictly between or beyond the breakpoints of `bs`, not in it.
    fn fresh_point(&mut self, bs: &BreakpointSet) -> Breakpoint {
        loop {
            let at = self.probe(bs);
            if !bs.contains(&at) {
                return at;
            }
        }
    }

    /// An operator denoting the same function as `p` but written differently:
    /// a few spurious breakpoints, reshaped pieces, and point pieces replaced
    /// by other functions with the same value there.
    pub fn equivalent(&mut self, p: &PiecewiseOperator<PieceFunction>, degree: usize) -> PiecewiseOperator<PieceFunction> {
        let d = PolynomialDomain;
        let bs = p.breakpoints();
        let extra: Vec<Breakpoint> = (0..self.rng.gen_range(0..=3)).map(|_| self.fresh_point(&bs)).collect();
        let refined = refine(p, &BreakpointSet::from_unsorted(extra));
        let (pairs, end) = refined.into_parts();
        let as_poly = |f: &PieceFunction| d.to_polynomial(f).expect("polynomial piece");
        let pairs = pairs
            .into_iter()
            .map(|pair| {
                let left = as_poly(&pair.left_fn);
                let value = Polynomial::constant(as_poly(&pair.pt_fn).eval(pair.right_pt.value()));
                let point = self.agreeing(&value, &pair.right_pt, degree);
                CondPair {
                    left_fn: PieceFunction::Expr(self.reshape(&left)),
                    pt_fn: PieceFunction::Expr(self.reshape(&point)),
                    right_pt: pair.right_pt,
                }
            })
            .collect();
        let end = PieceFunction::Expr(self.reshape(&as_poly(&end)));
        PiecewiseOperator::from_parts_unchecked(pairs, end)
    }

    /// `p` changed at exactly one point: the value there is increased by 1.
    pub fn mutate(&mut self, p: &PiecewiseOperator<PieceFunction>) -> PiecewiseOperator<PieceFunction> {
        let d = PolynomialDomain;
        let bs = p.breakpoints();
        let at = if !bs.is_empty() && self.rng.gen_bool(0.5) {
            bs.as_slice()[self.rng.gen_range(0..bs.len())].clone()
        } else {
            self.fresh_point(&bs)
        };
        let refined = refine(p, &BreakpointSet::from_unsorted(vec![at.clone()]));
        let value = match refined.evaluate(&d, &at).expect("polynomial pieces evaluate") {
            Value::Defined(v) => v,
            Value::Undefined => unreachable!("polynomials are defined everywhere"),
        };
        let (mut pairs, end) = refined.into_parts();
        let slot = pairs.iter_mut().find(|pair| pair.right_pt == at).expect("refined at `at`");
        slot.pt_fn = PieceFunction::Expr(Expr::Const(value + BigRational::one()));
        PiecewiseOperator::from_parts_unchecked(pairs, end)
    }
}

fn horner(p: &Polynomial) -> Expr {
    let mut coeffs = p.coeffs().iter().rev();
    let Some(lead) = coeffs.next() else {
        return Expr::int(0);
    };
    coeffs.fold(Expr::Const(lead.clone()), |acc, c| Expr::Const(c.clone()) + Expr::Var * acc)
}
