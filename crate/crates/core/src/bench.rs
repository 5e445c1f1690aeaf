//! Timing and call counts for [`canonical_form`] on generated operators.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::domain::{Counting, PolynomialDomain};
use crate::gen::{Generator, OperatorSpec};
use crate::piecewise::{canonical_form_with_stats, PiecewiseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub breakpoints: usize,
    pub degree: usize,
    pub reps: usize,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            breakpoints: 1000,
            degree: 3,
            reps: 5,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub breakpoints: usize,
    pub degree: usize,
    pub reps: usize,
    pub seed: u64,
    /// Per run; always `2n + 1`.
    pub canonicalize_calls: usize,
    pub eval_calls: usize,
    /// Merge tests per run, one per input breakpoint.
    pub comparisons: usize,
    pub merges: usize,
    pub output_breakpoints: usize,
    pub mean_ms: f64,
    pub median_ms: f64,
    pub min_ms: f64,
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Canonicalizes one generated operator `reps` times. Generation is not
/// timed; counts are taken from the last run.
pub fn run(config: &BenchConfig) -> Result<BenchReport, PiecewiseError> {
    let spec = OperatorSpec {
        breakpoints: config.breakpoints,
        degree: config.degree,
        pool: 4,
    };
    let op = Generator::new(config.seed).operator(&spec);
    let domain = Counting::new(PolynomialDomain);
    let reps = config.reps.max(1);
    let mut times = Vec::with_capacity(reps);
    let mut last = None;
    for _ in 0..reps {
        domain.reset();
        let start = Instant::now();
        let result = canonical_form_with_stats(&domain, &op)?;
        times.push(start.elapsed());
        last = Some(result);
    }
    let (canon, stats) = last.expect("at least one rep");
    let counts = domain.counts();
    times.sort();
    let total: Duration = times.iter().sum();
    Ok(BenchReport {
        breakpoints: config.breakpoints,
        degree: config.degree,
        reps,
        seed: config.seed,
        canonicalize_calls: counts.canonicalize,
        eval_calls: counts.eval_at,
        comparisons: stats.merge_tests,
        merges: stats.merges,
        output_breakpoints: canon.len(),
        mean_ms: ms(total) / reps as f64,
        median_ms: ms(times[reps / 2]),
        min_ms: ms(times[0]),
    })
}
