//! Pseudo-normal and canonical forms.
//!
//! Both canonicalize every piece and then fold adjacent pairs left to right
//! in a single pass. They differ only in the merge test:
//!
//! * pseudo-normal form merges at `λ` when the left function, the point
//!   function and the right function are structurally equal;
//! * canonical form merges at `λ` when the two open-region functions are
//!   equal and the point function takes the same value at `λ` as the right
//!   function. Surviving point functions are then replaced by the domain's
//!   representative of their value, so the output depends only on the
//!   function the operator denotes.

use super::{denest, CondPair, PiecewiseError, PiecewiseExpr, PiecewiseOperator};
use crate::domain::{EffectiveDomain, PieceRing};

/// Work done by one normalization pass.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MergeStats {
    /// Merge tests performed, one per breakpoint of the input.
    pub merge_tests: usize,
    pub merges: usize,
}

type Parts<P> = (Vec<CondPair<P>>, P);

fn canonicalize_all<D: EffectiveDomain>(
    domain: &D,
    p: &PiecewiseOperator<D::Piece>,
) -> Result<Parts<D::Piece>, PiecewiseError> {
    let pairs = p
        .pairs()
        .iter()
        .map(|pair| {
            Ok(CondPair {
                left_fn: domain.canonicalize(&pair.left_fn)?,
                pt_fn: domain.canonicalize(&pair.pt_fn)?,
                right_pt: pair.right_pt.clone(),
            })
        })
        .collect::<Result<Vec<_>, PiecewiseError>>()?;
    let end = domain.canonicalize(&p.end().func)?;
    Ok((pairs, end))
}

/// Single left-to-right fold. `can_merge(a, right_fn)` decides whether the
/// breakpoint closing `a` can be removed when `right_fn` follows it.
fn fold_pairs<P>(
    pairs: Vec<CondPair<P>>,
    end: P,
    stats: &mut MergeStats,
    mut can_merge: impl FnMut(&CondPair<P>, &P) -> Result<bool, PiecewiseError>,
) -> Result<PiecewiseOperator<P>, PiecewiseError> {
    let mut out: Vec<CondPair<P>> = Vec::with_capacity(pairs.len());
    for pair in pairs {
        if let Some(last) = out.last_mut() {
            stats.merge_tests += 1;
            if can_merge(last, &pair.left_fn)? {
                stats.merges += 1;
                last.pt_fn = pair.pt_fn;
                last.right_pt = pair.right_pt;
                continue;
            }
        }
        out.push(pair);
    }
    if let Some(last) = out.last() {
        stats.merge_tests += 1;
        if can_merge(last, &end)? {
            stats.merges += 1;
            out.pop();
        }
    }
    Ok(PiecewiseOperator::from_parts_unchecked(out, end))
}

/// Canonicalizes every piece and merges structurally redundant breakpoints.
/// Makes exactly `2n + 1` canonicalize calls.
pub fn pseudonormalform<D: EffectiveDomain>(
    domain: &D,
    p: &PiecewiseOperator<D::Piece>,
) -> Result<PiecewiseOperator<D::Piece>, PiecewiseError> {
    let (pairs, end) = canonicalize_all(domain, p)?;
    let mut stats = MergeStats::default();
    fold_pairs(pairs, end, &mut stats, |a, right| {
        Ok(a.left_fn == a.pt_fn && &a.pt_fn == right)
    })
}

/// Canonical form of a flat operator.
pub fn canonical_form<D: EffectiveDomain>(
    domain: &D,
    p: &PiecewiseOperator<D::Piece>,
) -> Result<PiecewiseOperator<D::Piece>, PiecewiseError> {
    canonical_form_with_stats(domain, p).map(|(q, _)| q)
}

pub fn canonical_form_with_stats<D: EffectiveDomain>(
    domain: &D,
    p: &PiecewiseOperator<D::Piece>,
) -> Result<(PiecewiseOperator<D::Piece>, MergeStats), PiecewiseError> {
    let (pairs, end) = canonicalize_all(domain, p)?;
    let mut stats = MergeStats::default();
    let merged = fold_pairs(pairs, end, &mut stats, |a, right| {
        if a.left_fn != *right {
            return Ok(false);
        }
        let at_point = domain.eval_at(&a.pt_fn, &a.right_pt)?;
        Ok(at_point == domain.eval_at(right, &a.right_pt)?)
    })?;
    let (pairs, end) = merged.into_parts();
    let pairs = pairs
        .into_iter()
        .map(|pair| {
            let value = domain.eval_at(&pair.pt_fn, &pair.right_pt)?;
            Ok(CondPair {
                pt_fn: domain.point_piece(&value, &pair.right_pt)?,
                ..pair
            })
        })
        .collect::<Result<Vec<_>, PiecewiseError>>()?;
    Ok((PiecewiseOperator::from_parts_unchecked(pairs, end), stats))
}

/// `canonical_form(denest(e))`.
pub fn canonical_form_expr<D: PieceRing>(
    domain: &D,
    e: &PiecewiseExpr<D::Piece>,
) -> Result<PiecewiseOperator<D::Piece>, PiecewiseError> {
    canonical_form(domain, &denest(domain, e)?)
}

/// Extensional equivalence, decided by comparing canonical forms.
pub fn equiv_piecewise<D: EffectiveDomain>(
    domain: &D,
    p: &PiecewiseOperator<D::Piece>,
    q: &PiecewiseOperator<D::Piece>,
) -> Result<bool, PiecewiseError> {
    Ok(canonical_form(domain, p)? == canonical_form(domain, q)?)
}

#[cfg(test)]
mod tests {
    use super::super::test_support::*;
    use super::super::{lift, refine};
    use super::*;
    use crate::domain::{
        Counting, DomainError, Expr, PieceFunction, Polynomial, PolynomialDomain, RationalDomain,
        Value,
    };
    use crate::ordered::Breakpoint;

    fn poly(cs: &[i64]) -> PieceFunction {
        PieceFunction::Poly(Polynomial::from_ints(cs))
    }

    fn spurious() -> PiecewiseOperator<PieceFunction> {
        PiecewiseOperator::make(bps(&[0]), vec![poly(&[]), poly(&[0, 0, 1]), poly(&[])]).unwrap()
    }

    #[test]
    fn all_ones_collapse() {
        let d = PolynomialDomain;
        let ones = PiecewiseOperator::make(bps(&[0]), vec![c(1), c(1), c(1)]).unwrap();
        let got = pseudonormalform(&d, &ones).unwrap();
        assert_eq!(got, PiecewiseOperator::constant(poly(&[1])));
    }

    #[test]
    fn spurious_discontinuity_is_a_pseudonormal_fixed_point() {
        let d = PolynomialDomain;
        assert_eq!(pseudonormalform(&d, &spurious()).unwrap(), spurious());
        assert_eq!(
            canonical_form(&d, &spurious()).unwrap(),
            PiecewiseOperator::constant(poly(&[]))
        );
    }

    #[test]
    fn single_piece_canonicalization() {
        let d = PolynomialDomain;
        let p = PiecewiseOperator::constant(e((Expr::x() + Expr::int(1)).pow(2)));
        assert_eq!(
            pseudonormalform(&d, &p).unwrap(),
            PiecewiseOperator::constant(poly(&[1, 2, 1]))
        );
    }

    #[test]
    fn abs_squared_minus_square_is_zero() {
        let d = PolynomialDomain;
        let sq = lift::mul(&d, &abs(), &abs()).unwrap();
        let diff = lift::sub(&d, &sq, &PiecewiseOperator::constant(e(Expr::x().pow(2)))).unwrap();
        assert_eq!(canonical_form(&d, &diff).unwrap(), PiecewiseOperator::constant(poly(&[])));
    }

    #[test]
    fn point_delta_is_kept() {
        let d = PolynomialDomain;
        let delta = PiecewiseOperator::make(bps(&[0]), vec![c(0), c(1), c(0)]).unwrap();
        let expected =
            PiecewiseOperator::make(bps(&[0]), vec![poly(&[]), poly(&[1]), poly(&[])]).unwrap();
        assert_eq!(canonical_form(&d, &delta).unwrap(), expected);
    }

    #[test]
    fn unmerged_pairs_are_carried_forward() {
        // pairs 0 and 1 merge, pair 2 does not, pairs 2 and 3 merge
        let d = PolynomialDomain;
        let p = PiecewiseOperator::make(
            bps(&[0, 1, 2, 3]),
            [1, 1, 1, 5, 2, 2, 2, 7, 3].map(c).to_vec(),
        )
        .unwrap();
        let got = pseudonormalform(&d, &p).unwrap();
        let expected =
            PiecewiseOperator::make(bps(&[1, 3]), [1, 5, 2, 7, 3].map(|k| poly(&[k])).to_vec())
                .unwrap();
        assert_eq!(got, expected);
        assert_eq!(pseudonormalform(&d, &got).unwrap(), got);
    }

    #[test]
    fn point_functions_normalized_to_values() {
        let d = PolynomialDomain;
        // x at 2 and the constant 2 at 2 denote the same function
        let a = PiecewiseOperator::make(bps(&[2]), vec![c(0), e(Expr::x()), c(1)]).unwrap();
        let b = PiecewiseOperator::make(bps(&[2]), vec![c(0), c(2), c(1)]).unwrap();
        assert_eq!(canonical_form(&d, &a).unwrap(), canonical_form(&d, &b).unwrap());
        assert!(equiv_piecewise(&d, &a, &b).unwrap());
    }

    #[test]
    fn canonicalize_calls_are_linear() {
        let d = Counting::new(PolynomialDomain);
        for n in [0usize, 1, 7, 40] {
            let bs = bps(&(0..n as i64).collect::<Vec<_>>());
            let p = PiecewiseOperator::make(bs, (0..2 * n as i64 + 1).map(c).collect()).unwrap();
            d.reset();
            canonical_form(&d, &p).unwrap();
            assert_eq!(d.counts().canonicalize, 2 * n + 1);
            d.reset();
            pseudonormalform(&d, &p).unwrap();
            assert_eq!(d.counts().canonicalize, 2 * n + 1);
        }
    }

    #[test]
    fn equivalence_examples() {
        let d = PolynomialDomain;
        let a = bps(&[-3, 1, 8]);
        assert!(equiv_piecewise(&d, &abs(), &refine(&abs(), &a)).unwrap());
        let sq = lift::mul(&d, &abs(), &abs()).unwrap();
        let x2 = PiecewiseOperator::constant(e(Expr::x().pow(2)));
        assert!(equiv_piecewise(&d, &sq, &x2).unwrap());
        let n = lift::neg(&d, &abs()).unwrap();
        assert!(!equiv_piecewise(&d, &abs(), &n).unwrap());
    }

    #[test]
    fn undefined_points_merge_with_undefined() {
        let d = RationalDomain;
        let pole = e(Expr::int(1) / (Expr::x() - Expr::int(1)));
        let other = e(Expr::int(2) / (Expr::int(3) * Expr::x() - Expr::int(3)));
        // 1/(x-1) on both sides, a different pole at 1: undefined there either way
        let p = PiecewiseOperator::make(bps(&[1]), vec![pole.clone(), other, pole.clone()]).unwrap();
        let got = canonical_form(&d, &p).unwrap();
        assert_eq!(got, PiecewiseOperator::constant(d.canonicalize(&pole).unwrap()));

        // a defined value at a pole of the neighbours blocks the merge
        let q = PiecewiseOperator::make(bps(&[1]), vec![pole.clone(), c(4), pole.clone()]).unwrap();
        let got = canonical_form(&d, &q).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(
            d.eval_at(&got.pairs()[0].pt_fn, &Breakpoint::from(1)).unwrap(),
            d.eval_at(&c(4), &Breakpoint::from(1)).unwrap()
        );

        // an undefined point between defined neighbours is canonicalized to 1/(x - 1)
        let r = PiecewiseOperator::make(bps(&[1]), vec![c(0), pole.clone(), c(0)]).unwrap();
        let s = PiecewiseOperator::make(
            bps(&[1]),
            vec![c(0), e(Expr::int(5) / (Expr::x() - Expr::int(1)).pow(2)), c(0)],
        )
        .unwrap();
        let cr = canonical_form(&d, &r).unwrap();
        assert_eq!(cr, canonical_form(&d, &s).unwrap());
        assert_eq!(d.eval_at(&cr.pairs()[0].pt_fn, &Breakpoint::from(1)).unwrap(), Value::Undefined);
    }

    /// Evaluates fine on pieces built from `x` alone and refuses anything else.
    struct PartialEval;

    impl EffectiveDomain for PartialEval {
        type Piece = PieceFunction;

        fn canonicalize(&self, f: &PieceFunction) -> Result<PieceFunction, DomainError> {
            PolynomialDomain.canonicalize(f)
        }

        fn eval_at(&self, f: &PieceFunction, at: &Breakpoint) -> Result<Value, DomainError> {
            if f == &poly(&[0, 1]) {
                PolynomialDomain.eval_at(f, at)
            } else {
                Err(DomainError::EvaluationUnavailable {
                    piece: f.to_string(),
                    at: at.clone(),
                })
            }
        }

        fn zero(&self) -> PieceFunction {
            poly(&[])
        }

        fn point_piece(&self, v: &Value, at: &Breakpoint) -> Result<PieceFunction, DomainError> {
            PolynomialDomain.point_piece(v, at)
        }
    }

    #[test]
    fn evaluation_unavailable_propagates() {
        let p = PiecewiseOperator::make(bps(&[0]), vec![e(Expr::x()), c(3), e(Expr::x())]).unwrap();
        assert!(matches!(
            canonical_form(&PartialEval, &p),
            Err(PiecewiseError::Domain(DomainError::EvaluationUnavailable { .. }))
        ));
        // pseudo-normal form never evaluates
        assert!(pseudonormalform(&PartialEval, &p).is_ok());
    }
}
