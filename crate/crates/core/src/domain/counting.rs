use std::sync::atomic::{AtomicUsize, Ordering};

use super::{DomainError, EffectiveDomain, PieceRing, Value};
use crate::ordered::Breakpoint;

/// Snapshot of the calls made through a [`Counting`] wrapper.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CallCounts {
    pub canonicalize: usize,
    pub eval_at: usize,
}

/// Wraps a domain and counts `canonicalize` and `eval_at` calls.
#[derive(Debug, Default)]
pub struct Counting<D> {
    inner: D,
    canonicalize: AtomicUsize,
    eval_at: AtomicUsize,
}

impl<D> Counting<D> {
    pub fn new(inner: D) -> Self {
        Counting {
            inner,
            canonicalize: AtomicUsize::new(0),
            eval_at: AtomicUsize::new(0),
        }
    }

    pub fn counts(&self) -> CallCounts {
        CallCounts {
            canonicalize: self.canonicalize.load(Ordering::Relaxed),
            eval_at: self.eval_at.load(Ordering::Relaxed),
        }
    }

    pub fn reset(&self) {
        self.canonicalize.store(0, Ordering::Relaxed);
        self.eval_at.store(0, Ordering::Relaxed);
    }

    pub fn inner(&self) -> &D {
        &self.inner
    }
}

impl<D: EffectiveDomain> EffectiveDomain for Counting<D> {
    type Piece = D::Piece;

    fn canonicalize(&self, f: &D::Piece) -> Result<D::Piece, DomainError> {
        self.canonicalize.fetch_add(1, Ordering::Relaxed);
        self.inner.canonicalize(f)
    }

    fn eval_at(&self, f: &D::Piece, at: &Breakpoint) -> Result<Value, DomainError> {
        self.eval_at.fetch_add(1, Ordering::Relaxed);
        self.inner.eval_at(f, at)
    }

    fn zero(&self) -> D::Piece {
        self.inner.zero()
    }

    fn point_piece(&self, value: &Value, at: &Breakpoint) -> Result<D::Piece, DomainError> {
        self.inner.point_piece(value, at)
    }

    fn equiv(&self, f: &D::Piece, g: &D::Piece) -> Result<bool, DomainError> {
        self.inner.equiv(f, g)
    }

    fn is_zero(&self, f: &D::Piece) -> Result<bool, DomainError> {
        self.inner.is_zero(f)
    }

    fn degree(&self, f: &D::Piece) -> Result<Option<usize>, DomainError> {
        self.inner.degree(f)
    }
}

impl<D: PieceRing> PieceRing for Counting<D> {
    fn add(&self, f: &D::Piece, g: &D::Piece) -> Result<D::Piece, DomainError> {
        self.inner.add(f, g)
    }

    fn mul(&self, f: &D::Piece, g: &D::Piece) -> Result<D::Piece, DomainError> {
        self.inner.mul(f, g)
    }

    fn neg(&self, f: &D::Piece) -> Result<D::Piece, DomainError> {
        self.inner.neg(f)
    }

    fn sub(&self, f: &D::Piece, g: &D::Piece) -> Result<D::Piece, DomainError> {
        self.inner.sub(f, g)
    }
}
