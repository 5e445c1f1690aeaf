use std::cmp::Ordering;

use super::{CondPair, PiecewiseOperator};
use crate::ordered::{compare, BreakpointSet};

/// Exact `points`-refinement of `p`: the breakpoints become
/// `points ∪ B(p)` and every inserted breakpoint copies the function of the
/// open region it falls in, both for the new left region and for the point.
/// Pieces are cloned, never evaluated. Linear in `|points| + |B(p)|`.
pub fn refine<P: Clone>(p: &PiecewiseOperator<P>, points: &BreakpointSet) -> PiecewiseOperator<P> {
    if points.is_empty() {
        return p.clone();
    }
    let mut out = Vec::with_capacity(p.len() + points.len());
    let mut extra = points.iter().peekable();
    for pair in p.pairs() {
        while let Some(&a) = extra.peek() {
            match compare(a, &pair.right_pt) {
                Ordering::Less => {
                    out.push(CondPair {
                        left_fn: pair.left_fn.clone(),
                        pt_fn: pair.left_fn.clone(),
                        right_pt: a.clone(),
                    });
                    extra.next();
                }
                Ordering::Equal => {
                    extra.next();
                    break;
                }
                Ordering::Greater => break,
            }
        }
        out.push(pair.clone());
    }
    let end = &p.end().func;
    out.extend(extra.map(|a| CondPair {
        left_fn: end.clone(),
        pt_fn: end.clone(),
        right_pt: a.clone(),
    }));
    PiecewiseOperator::from_parts_unchecked(out, end.clone())
}
