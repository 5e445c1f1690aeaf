//! Exact breakpoints and sorted breakpoint sets.
//!
//! Breakpoints are arbitrary-precision rationals kept in lowest terms with a
//! positive denominator, so structural equality coincides with numeric
//! equality and sorted sets can be deduplicated by `==`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// A point of the ordered domain at which a piecewise function may change.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Breakpoint(BigRational);

impl Breakpoint {
    pub fn new(value: BigRational) -> Self {
        Breakpoint(value)
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Breakpoint(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_integer(n: i64) -> Self {
        Breakpoint(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_value(self) -> BigRational {
        self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Midpoint of two breakpoints. Always strictly between them when they differ.
    pub fn midpoint(&self, other: &Breakpoint) -> Breakpoint {
        let two = BigRational::from_integer(BigInt::from(2));
        Breakpoint((&self.0 + &other.0) / two)
    }

    pub fn offset(&self, delta: &BigRational) -> Breakpoint {
        Breakpoint(&self.0 + delta)
    }
}

impl From<BigRational> for Breakpoint {
    fn from(value: BigRational) -> Self {
        Breakpoint(value)
    }
}

impl From<i64> for Breakpoint {
    fn from(n: i64) -> Self {
        Breakpoint::from_integer(n)
    }
}

impl fmt::Display for Breakpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Three-way comparison of two breakpoints.
///
/// Compares `a.n / a.d` with `b.n / b.d` by cross-multiplication; denominators
/// are positive so the inequality direction is preserved.
pub fn compare(a: &Breakpoint, b: &Breakpoint) -> Ordering {
    let lhs = a.numer() * b.denom();
    let rhs = b.numer() * a.denom();
    lhs.cmp(&rhs)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses the literal syntax `[+-]digits[/digits]`, denominator positive.
pub fn parse_rational(text: &str) -> Result<BigRational, RationalParseError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (num_str, den_str) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits(num_str) || den_str.is_some_and(|d| !digits(d)) {
        return Err(RationalParseError::Invalid(text.to_string()));
    }
    let mut numer: BigInt = num_str
        .parse()
        .map_err(|_| RationalParseError::Invalid(text.to_string()))?;
    if negative {
        numer = -numer;
    }
    let denom: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| RationalParseError::Invalid(text.to_string()))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(RationalParseError::ZeroDenominator(text.to_string()));
    }
    Ok(BigRational::new(numer, denom))
}

impl FromStr for Breakpoint {
    type Err = RationalParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s).map(Breakpoint)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("breakpoints are not strictly increasing at index {index}")]
pub struct UnsortedBreakpoints {
    pub index: usize,
}

/// A strictly increasing sequence of breakpoints.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BreakpointSet {
    points: Vec<Breakpoint>,
}

impl BreakpointSet {
    pub fn new() -> Self {
        BreakpointSet { points: Vec::new() }
    }

    /// Validates strict ordering of an already sorted sequence.
    pub fn from_sorted(points: Vec<Breakpoint>) -> Result<Self, UnsortedBreakpoints> {
        if let Some(i) = points
            .windows(2)
            .position(|w| compare(&w[0], &w[1]) != Ordering::Less)
        {
            return Err(UnsortedBreakpoints { index: i + 1 });
        }
        Ok(BreakpointSet { points })
    }

    /// Sorts and deduplicates an arbitrary collection.
    pub fn from_unsorted(mut points: Vec<Breakpoint>) -> Self {
        points.sort();
        points.dedup();
        BreakpointSet { points }
    }

    pub(crate) fn from_sorted_unchecked(points: Vec<Breakpoint>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        BreakpointSet { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Breakpoint> {
        self.points.iter()
    }

    pub fn as_slice(&self) -> &[Breakpoint] {
        &self.points
    }

    pub fn first(&self) -> Option<&Breakpoint> {
        self.points.first()
    }

    pub fn last(&self) -> Option<&Breakpoint> {
        self.points.last()
    }

    pub fn contains(&self, b: &Breakpoint) -> bool {
        self.points.binary_search(b).is_ok()
    }

    pub fn into_vec(self) -> Vec<Breakpoint> {
        self.points
    }
}

impl<'a> IntoIterator for &'a BreakpointSet {
    type Item = &'a Breakpoint;
    type IntoIter = std::slice::Iter<'a, Breakpoint>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

impl fmt::Display for BreakpointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Linear merge of two sorted sets into their sorted union.
pub fn merge_breakpoints(a: &BreakpointSet, b: &BreakpointSet) -> BreakpointSet {
    let (xs, ys) = (a.as_slice(), b.as_slice());
    let mut out = Vec::with_capacity(xs.len() + ys.len());
    let (mut i, mut j) = (0, 0);
    while i < xs.len() && j < ys.len() {
        match compare(&xs[i], &ys[j]) {
            Ordering::Less => {
                out.push(xs[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(ys[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                out.push(xs[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&xs[i..]);
    out.extend_from_slice(&ys[j..]);
    BreakpointSet::from_sorted_unchecked(out)
}
