use super::{lift, CondPair, PiecewiseError, PiecewiseOperator, Region};
use crate::domain::PieceRing;
use crate::ordered::Breakpoint;

/// Piece functions and piecewise operators combined by ring operations.
/// Operators may nest inside the branches of other operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PiecewiseExpr<P> {
    Piece(P),
    Piecewise(Box<PiecewiseOperator<PiecewiseExpr<P>>>),
    Add(Box<PiecewiseExpr<P>>, Box<PiecewiseExpr<P>>),
    Sub(Box<PiecewiseExpr<P>>, Box<PiecewiseExpr<P>>),
    Mul(Box<PiecewiseExpr<P>>, Box<PiecewiseExpr<P>>),
    Neg(Box<PiecewiseExpr<P>>),
}

impl<P> PiecewiseExpr<P> {
    pub fn piecewise(op: PiecewiseOperator<PiecewiseExpr<P>>) -> Self {
        PiecewiseExpr::Piecewise(Box::new(op))
    }

    /// Embeds a flat operator.
    pub fn from_operator(op: &PiecewiseOperator<P>) -> Self
    where
        P: Clone,
    {
        PiecewiseExpr::piecewise(op.map(|f| PiecewiseExpr::Piece(f.clone())))
    }
}

/// Flattens definitional nesting.
///
/// A nested operator in the open region `(lo, hi)` of its host contributes
/// only its breakpoints strictly inside `(lo, hi)`; one in a point position
/// `λ` collapses to the piece it selects at `λ`. Arithmetic nodes are
/// resolved by lifting the domain's ring operations. The result never has
/// more breakpoints than the input has in total.
pub fn denest<D: PieceRing>(
    domain: &D,
    e: &PiecewiseExpr<D::Piece>,
) -> Result<PiecewiseOperator<D::Piece>, PiecewiseError> {
    Ok(match e {
        PiecewiseExpr::Piece(f) => PiecewiseOperator::constant(f.clone()),
        PiecewiseExpr::Add(a, b) => lift::add(domain, &denest(domain, a)?, &denest(domain, b)?)?,
        PiecewiseExpr::Sub(a, b) => lift::sub(domain, &denest(domain, a)?, &denest(domain, b)?)?,
        PiecewiseExpr::Mul(a, b) => lift::mul(domain, &denest(domain, a)?, &denest(domain, b)?)?,
        PiecewiseExpr::Neg(a) => lift::neg(domain, &denest(domain, a)?)?,
        PiecewiseExpr::Piecewise(op) => denest_operator(domain, op)?,
    })
}

fn denest_operator<D: PieceRing>(
    domain: &D,
    op: &PiecewiseOperator<PiecewiseExpr<D::Piece>>,
) -> Result<PiecewiseOperator<D::Piece>, PiecewiseError> {
    let mut out = Vec::new();
    let mut lo: Option<&Breakpoint> = None;
    for pair in op.pairs() {
        let region = denest(domain, &pair.left_fn)?;
        let left_fn = splice(&mut out, &region, lo, Some(&pair.right_pt));
        let point = denest(domain, &pair.pt_fn)?;
        out.push(CondPair {
            left_fn,
            pt_fn: point.select(&pair.right_pt).clone(),
            right_pt: pair.right_pt.clone(),
        });
        lo = Some(&pair.right_pt);
    }
    let last = denest(domain, &op.end().func)?;
    let end = splice(&mut out, &last, lo, None);
    Ok(PiecewiseOperator::from_parts_unchecked(out, end))
}

/// Appends the pairs of `inner` restricted to the open interval `(lo, hi)`
/// and returns the function on the remaining stretch up to `hi`.
fn splice<P: Clone>(
    out: &mut Vec<CondPair<P>>,
    inner: &PiecewiseOperator<P>,
    lo: Option<&Breakpoint>,
    hi: Option<&Breakpoint>,
) -> P {
    let pairs = inner.pairs();
    // first region of `inner` meeting (lo, hi)
    let start = match lo {
        None => 0,
        Some(lo) => match inner.chi(lo) {
            Region::At(i) => i + 1,
            Region::Open(i) => i,
        },
    };
    let mut current = inner.region_fn(start);
    for (i, pair) in pairs.iter().enumerate().skip(start) {
        if hi.is_some_and(|hi| &pair.right_pt >= hi) {
            break;
        }
        out.push(CondPair {
            left_fn: current.clone(),
            pt_fn: pair.pt_fn.clone(),
            right_pt: pair.right_pt.clone(),
        });
        current = inner.region_fn(i + 1);
    }
    current.clone()
}
