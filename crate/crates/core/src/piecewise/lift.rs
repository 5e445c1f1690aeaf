use super::{refine, CondPair, PiecewiseError, PiecewiseOperator};
use crate::domain::{EffectiveDomain, PieceRing};
use crate::ordered::merge_breakpoints;

/// Applies `psi` to each of the `2n + 1` pieces of `p`.
pub fn lift_unary<P, Q, E>(
    p: &PiecewiseOperator<P>,
    psi: impl FnMut(&P) -> Result<Q, E>,
) -> Result<PiecewiseOperator<Q>, E> {
    p.try_map(psi)
}

/// Refines both operands to the union of their breakpoints, then combines
/// corresponding pieces with `psi`.
pub fn lift_binary<P: Clone, Q, E>(
    p1: &PiecewiseOperator<P>,
    p2: &PiecewiseOperator<P>,
    mut psi: impl FnMut(&P, &P) -> Result<Q, E>,
) -> Result<PiecewiseOperator<Q>, E> {
    let common = merge_breakpoints(&p1.breakpoints(), &p2.breakpoints());
    let q1 = refine(p1, &common);
    let q2 = refine(p2, &common);
    let pairs = q1
        .pairs()
        .iter()
        .zip(q2.pairs())
        .map(|(a, b)| {
            Ok(CondPair {
                left_fn: psi(&a.left_fn, &b.left_fn)?,
                pt_fn: psi(&a.pt_fn, &b.pt_fn)?,
                right_pt: a.right_pt.clone(),
            })
        })
        .collect::<Result<Vec<_>, E>>()?;
    let end = psi(&q1.end().func, &q2.end().func)?;
    Ok(PiecewiseOperator::from_parts_unchecked(pairs, end))
}

type Lifted<D> = Result<PiecewiseOperator<<D as EffectiveDomain>::Piece>, PiecewiseError>;

pub fn add<D: PieceRing>(
    domain: &D,
    p: &PiecewiseOperator<D::Piece>,
    q: &PiecewiseOperator<D::Piece>,
) -> Lifted<D> {
    Ok(lift_binary(p, q, |f, g| domain.add(f, g))?)
}

pub fn sub<D: PieceRing>(
    domain: &D,
    p: &PiecewiseOperator<D::Piece>,
    q: &PiecewiseOperator<D::Piece>,
) -> Lifted<D> {
    Ok(lift_binary(p, q, |f, g| domain.sub(f, g))?)
}

pub fn mul<D: PieceRing>(
    domain: &D,
    p: &PiecewiseOperator<D::Piece>,
    q: &PiecewiseOperator<D::Piece>,
) -> Lifted<D> {
    Ok(lift_binary(p, q, |f, g| domain.mul(f, g))?)
}

pub fn neg<D: PieceRing>(domain: &D, p: &PiecewiseOperator<D::Piece>) -> Lifted<D> {
    Ok(lift_unary(p, |f| domain.neg(f))?)
}
