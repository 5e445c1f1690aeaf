//! Evaluation-based equivalence checking, independent of canonicalization.
//!
//! Two operators whose pieces are polynomials of degree at most `d` agree
//! everywhere iff they agree at every breakpoint and at `d + 1` distinct
//! points of every open region of their common refinement. Sampling that
//! many points therefore decides extensional equivalence exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::domain::{DomainError, EffectiveDomain};
use crate::ordered::{merge_breakpoints, Breakpoint, BreakpointSet};
use crate::piecewise::PiecewiseOperator;

/// Probe points for a breakpoint set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplePlan {
    pub points: BreakpointSet,
    pub per_region_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("piece `{piece}` has degree {degree}, above the bound {bound}")]
    DegreeBoundExceeded {
        piece: String,
        degree: usize,
        bound: usize,
    },
    #[error(transparent)]
    Domain(#[from] DomainError),
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Every breakpoint; the midpoint and `degree_bound + 1` evenly spaced points
/// inside each bounded region; `degree_bound + 1` unit-spaced points beyond
/// each end. With no breakpoints, the integers `0..=degree_bound`.
pub fn sample_points(bs: &BreakpointSet, degree_bound: usize) -> SamplePlan {
    let m = degree_bound + 1;
    let mut points: Vec<Breakpoint> = Vec::with_capacity(bs.len() * (m + 2) + 2 * m);
    match (bs.first(), bs.last()) {
        (Some(first), Some(last)) => {
            for k in (1..=m as i64).rev() {
                points.push(first.offset(&rat(-k)));
            }
            for w in bs.as_slice().windows(2) {
                points.push(w[0].clone());
                let width = w[1].value() - w[0].value();
                let mid = w[0].midpoint(&w[1]);
                let mut interior: Vec<Breakpoint> = (1..=m as i64)
                    .map(|k| w[0].offset(&(&width * BigRational::new(k.into(), (m as i64 + 1).into()))))
                    .collect();
                interior.push(mid);
                interior.sort();
                interior.dedup();
                points.extend(interior);
            }
            points.push(last.clone());
            for k in 1..=m as i64 {
                points.push(last.offset(&rat(k)));
            }
        }
        _ => points.extend((0..m as i64).map(Breakpoint::from)),
    }
    SamplePlan {
        points: BreakpointSet::from_sorted(points).expect("probe points are increasing"),
        per_region_count: m,
    }
}

fn check_degrees<D: EffectiveDomain>(
    domain: &D,
    p: &PiecewiseOperator<D::Piece>,
    bound: usize,
) -> Result<(), OracleError> {
    for piece in p.pieces() {
        if let Some(degree) = domain.degree(piece)? {
            if degree > bound {
                return Err(OracleError::DegreeBoundExceeded {
                    piece: format!("{piece:?}"),
                    degree,
                    bound,
                });
            }
        }
    }
    Ok(())
}

/// Decides `p ≃ q` by evaluating both on a [`SamplePlan`] for the union of
/// their breakpoints. Exact for polynomial pieces within `degree_bound`; for
/// domains without a degree it only finds counterexamples.
pub fn extensional_equiv_oracle<D: EffectiveDomain>(
    domain: &D,
    p: &PiecewiseOperator<D::Piece>,
    q: &PiecewiseOperator<D::Piece>,
    degree_bound: usize,
) -> Result<bool, OracleError> {
    check_degrees(domain, p, degree_bound)?;
    check_degrees(domain, q, degree_bound)?;
    let plan = sample_points(&merge_breakpoints(&p.breakpoints(), &q.breakpoints()), degree_bound);
    for at in plan.points.iter() {
        if p.evaluate(domain, at)? != q.evaluate(domain, at)? {
            return Ok(false);
        }
    }
    Ok(true)
}
