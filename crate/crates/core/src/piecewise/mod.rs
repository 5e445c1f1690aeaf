//! Piecewise operators over a range partition of the rationals.
//!
//! An operator with `n` breakpoints `λ_0 < … < λ_{n-1}` holds `2n + 1`
//! pieces: one per open region and one per breakpoint. It is stored as `n`
//! [`CondPair`]s, each carrying the function left of its breakpoint and the
//! function at it, followed by an [`EndPiece`] for the unbounded right region.

mod denest;
mod lift;
mod normal;
mod refine;

use std::cmp::Ordering;

use thiserror::Error;

pub use denest::{denest, PiecewiseExpr};
pub use lift::{add, lift_binary, lift_unary, mul, neg, sub};
pub use normal::{
    canonical_form, canonical_form_expr, canonical_form_with_stats, equiv_piecewise,
    pseudonormalform, MergeStats,
};
pub use refine::refine;

use crate::domain::{DomainError, EffectiveDomain, Value};
use crate::ordered::{compare, Breakpoint, BreakpointSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CondPair<P> {
    /// Function on the open region ending at `right_pt`.
    pub left_fn: P,
    /// Function at `right_pt` itself.
    pub pt_fn: P,
    pub right_pt: Breakpoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EndPiece<P> {
    pub func: P,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiecewiseOperator<P> {
    pairs: Vec<CondPair<P>>,
    end: EndPiece<P>,
}

/// Element of a range partition, as located by [`PiecewiseOperator::chi`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    /// Open region `i`: strictly between breakpoints `i - 1` and `i`,
    /// unbounded at either end.
    Open(usize),
    /// Breakpoint `i`.
    At(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PiecewiseError {
    #[error("expected {expected} piece functions for {breakpoints} breakpoints, found {found}")]
    ArityMismatch {
        breakpoints: usize,
        expected: usize,
        found: usize,
    },
    #[error("breakpoints are not strictly increasing at index {0}")]
    UnsortedBreakpoints(usize),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

impl<P> PiecewiseOperator<P> {
    /// Builds an operator from `n` breakpoints and `2n + 1` functions in
    /// partition order (region, point, region, …, region).
    pub fn make(breakpoints: BreakpointSet, funcs: Vec<P>) -> Result<Self, PiecewiseError> {
        let n = breakpoints.len();
        if funcs.len() != 2 * n + 1 {
            return Err(PiecewiseError::ArityMismatch {
                breakpoints: n,
                expected: 2 * n + 1,
                found: funcs.len(),
            });
        }
        let mut funcs = funcs.into_iter();
        let pairs = breakpoints
            .into_vec()
            .into_iter()
            .map(|right_pt| CondPair {
                left_fn: funcs.next().expect("arity checked"),
                pt_fn: funcs.next().expect("arity checked"),
                right_pt,
            })
            .collect();
        let end = EndPiece {
            func: funcs.next().expect("arity checked"),
        };
        Ok(PiecewiseOperator { pairs, end })
    }

    pub fn from_parts(pairs: Vec<CondPair<P>>, end: P) -> Result<Self, PiecewiseError> {
        if let Some(i) = pairs
            .windows(2)
            .position(|w| compare(&w[0].right_pt, &w[1].right_pt) != Ordering::Less)
        {
            return Err(PiecewiseError::UnsortedBreakpoints(i + 1));
        }
        Ok(PiecewiseOperator {
            pairs,
            end: EndPiece { func: end },
        })
    }

    pub(crate) fn from_parts_unchecked(pairs: Vec<CondPair<P>>, end: P) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].right_pt < w[1].right_pt));
        PiecewiseOperator {
            pairs,
            end: EndPiece { func: end },
        }
    }

    /// The operator with no breakpoints and one piece.
    pub fn constant(f: P) -> Self {
        PiecewiseOperator {
            pairs: Vec::new(),
            end: EndPiece { func: f },
        }
    }

    pub fn pairs(&self) -> &[CondPair<P>] {
        &self.pairs
    }

    pub fn end(&self) -> &EndPiece<P> {
        &self.end
    }

    pub fn into_parts(self) -> (Vec<CondPair<P>>, P) {
        (self.pairs, self.end.func)
    }

    /// Number of breakpoints. An operator always has at least one piece.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_single_piece(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn breakpoints(&self) -> BreakpointSet {
        BreakpointSet::from_sorted_unchecked(
            self.pairs.iter().map(|p| p.right_pt.clone()).collect(),
        )
    }

    /// All `2n + 1` pieces in partition order.
    pub fn pieces(&self) -> impl Iterator<Item = &P> {
        self.pairs
            .iter()
            .flat_map(|p| [&p.left_fn, &p.pt_fn])
            .chain(std::iter::once(&self.end.func))
    }

    /// Function of open region `i`, `0 <= i <= n`.
    pub fn region_fn(&self, i: usize) -> &P {
        match self.pairs.get(i) {
            Some(p) => &p.left_fn,
            None => &self.end.func,
        }
    }

    pub fn piece(&self, region: Region) -> &P {
        match region {
            Region::Open(i) => self.region_fn(i),
            Region::At(i) => &self.pairs[i].pt_fn,
        }
    }

    /// Locates `at` in the range partition by binary search.
    pub fn chi(&self, at: &Breakpoint) -> Region {
        self.chi_counted(at).0
    }

    /// [`chi`](Self::chi) that also reports how many breakpoint comparisons
    /// were made; at most `floor(log2 n) + 1`.
    pub fn chi_counted(&self, at: &Breakpoint) -> (Region, usize) {
        let (mut lo, mut hi) = (0, self.pairs.len());
        let mut comparisons = 0;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            comparisons += 1;
            match compare(at, &self.pairs[mid].right_pt) {
                Ordering::Equal => return (Region::At(mid), comparisons),
                Ordering::Less => hi = mid,
                Ordering::Greater => lo = mid + 1,
            }
        }
        (Region::Open(lo), comparisons)
    }

    /// The piece selected for `at`, i.e. `p(χ(at))`.
    pub fn select(&self, at: &Breakpoint) -> &P {
        self.piece(self.chi(at))
    }

    /// Evaluates the piecewise function `λ ↦ p(χ(λ))(λ)`.
    pub fn evaluate<D>(&self, domain: &D, at: &Breakpoint) -> Result<Value, DomainError>
    where
        D: EffectiveDomain<Piece = P>,
    {
        domain.eval_at(self.select(at), at)
    }

    /// Applies `f` to every piece, keeping the breakpoints.
    pub fn try_map<Q, E>(&self, mut f: impl FnMut(&P) -> Result<Q, E>) -> Result<PiecewiseOperator<Q>, E> {
        let pairs = self
            .pairs
            .iter()
            .map(|p| {
                Ok(CondPair {
                    left_fn: f(&p.left_fn)?,
                    pt_fn: f(&p.pt_fn)?,
                    right_pt: p.right_pt.clone(),
                })
            })
            .collect::<Result<Vec<_>, E>>()?;
        Ok(PiecewiseOperator {
            pairs,
            end: EndPiece {
                func: f(&self.end.func)?,
            },
        })
    }

    pub fn map<Q>(&self, mut f: impl FnMut(&P) -> Q) -> PiecewiseOperator<Q> {
        self.try_map(|p| Ok::<_, std::convert::Infallible>(f(p)))
            .unwrap_or_else(|e| match e {})
    }
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;
    use crate::domain::{Expr, PieceFunction};

    pub fn e(expr: Expr) -> PieceFunction {
        PieceFunction::Expr(expr)
    }

    pub fn c(n: i64) -> PieceFunction {
        e(Expr::int(n))
    }

    pub fn bps(xs: &[i64]) -> BreakpointSet {
        BreakpointSet::from_sorted(xs.iter().map(|&x| Breakpoint::from(x)).collect()).unwrap()
    }

    /// `{-x; 0 at 0; x}`
    pub fn abs() -> PiecewiseOperator<PieceFunction> {
        PiecewiseOperator::make(bps(&[0]), vec![e(-Expr::x()), c(0), e(Expr::x())]).unwrap()
    }

    /// `{x^2 - 3; -5 at 1; x^3 - 7x^2 + 16x - 12}`
    pub fn funky() -> PiecewiseOperator<PieceFunction> {
        let x = Expr::x;
        PiecewiseOperator::make(
            bps(&[1]),
            vec![
                e(x().pow(2) - Expr::int(3)),
                c(-5),
                e(x().pow(3) - Expr::int(7) * x().pow(2) + Expr::int(16) * x() - Expr::int(12)),
            ],
        )
        .unwrap()
    }

    /// Reference locator: scan every region in order.
    pub fn chi_by_scan<P>(p: &PiecewiseOperator<P>, at: &Breakpoint) -> Region {
        for (i, pair) in p.pairs().iter().enumerate() {
            if at < &pair.right_pt {
                return Region::Open(i);
            }
            if at == &pair.right_pt {
                return Region::At(i);
            }
        }
        Region::Open(p.len())
    }

    /// Every breakpoint, every midpoint and one point beyond each end.
    pub fn probe_points(bs: &BreakpointSet) -> Vec<Breakpoint> {
        let pts = bs.as_slice();
        let Some((first, last)) = pts.first().zip(pts.last()) else {
            return vec![Breakpoint::from(0)];
        };
        let one = num_rational::BigRational::from_integer(1.into());
        let mut out = vec![first.offset(&-one.clone())];
        for w in pts.windows(2) {
            out.push(w[0].clone());
            out.push(w[0].midpoint(&w[1]));
        }
        out.push(last.clone());
        out.push(last.offset(&one));
        out
    }
}
