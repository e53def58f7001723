//! Exact values of `S(N) = Σ_{n<=N} τ(f(n))` and their comparison with the
//! explicit bounds.
//!
//! Three independent counters are provided: per-value factorization
//! ([`exact_sum_naive`]), the root sieve ([`exact_sum_sieve`]), and divisor
//! pairs below the square root ([`hyperbola_count`]).

mod sieve;

use std::fmt;
use std::str::FromStr;

pub use sieve::{RootSieve, DEFAULT_SEGMENT_LEN};

use crate::arith::{is_perfect_square, tau_of};
use crate::bounds::{
    constants_for, refined_bound, sqrtf_bound, theorem1_bound, theorem2_bound, BoundConstants,
    Positivity, REFINED_MIN_N,
};
use crate::error::{Error, Result};
use crate::quadratic::QuadraticPoly;

/// Caps on the size of a sieve run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorkLimits {
    pub max_n: u64,
    pub max_memory_bytes: u64,
}

impl Default for WorkLimits {
    fn default() -> Self {
        WorkLimits { max_n: 10_000_000, max_memory_bytes: 2 << 30 }
    }
}

impl WorkLimits {
    pub fn with_memory_mb(mut self, mb: u64) -> Self {
        self.max_memory_bytes = mb.saturating_mul(1 << 20);
        self
    }

    pub(crate) fn check_n(&self, n: u64) -> Result<()> {
        if n > self.max_n {
            return Err(Error::WorkLimit(format!("N = {n} exceeds the maximum {}", self.max_n)));
        }
        Ok(())
    }

    pub(crate) fn check_bytes(&self, bytes: u64) -> Result<()> {
        if bytes > self.max_memory_bytes {
            return Err(Error::WorkLimit(format!(
                "estimated {bytes} bytes exceeds the ceiling of {} bytes",
                self.max_memory_bytes
            )));
        }
        Ok(())
    }
}

fn positive_value(p: &QuadraticPoly, n: u64) -> Result<u128> {
    let value = p.eval(n)?;
    if value <= 0 {
        return Err(Error::NonPositiveValue { n, value });
    }
    Ok(value as u128)
}

/// `Σ_{lo<=n<=hi} τ(f(n))`, factoring each value.
pub fn naive_sum_over(p: &QuadraticPoly, lo: u64, hi: u64) -> Result<u64> {
    (lo..=hi).try_fold(0u64, |acc, n| Ok(acc + tau_of(positive_value(p, n)?)?))
}

/// `Σ_{n<=N} τ(f(n))` by factoring every `f(n)`.
pub fn exact_sum_naive(p: &QuadraticPoly, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroN);
    }
    naive_sum_over(p, 1, n)
}

/// `Σ_{n<=N} τ(f(n))` by the root sieve.
pub fn exact_sum_sieve(p: &QuadraticPoly, n: u64) -> Result<u64> {
    exact_sum_sieve_with(p, n, &WorkLimits::default())
}

pub fn exact_sum_sieve_with(p: &QuadraticPoly, n: u64, limits: &WorkLimits) -> Result<u64> {
    Ok(RootSieve::new(*p, n, limits)?.total(DEFAULT_SEGMENT_LEN))
}

/// `τ(m) = 2 #{d <= √m : d | m} - [m is a square]`, summed over
/// `lo <= n <= hi` with `m = f(n)`.
pub fn hyperbola_count_over(p: &QuadraticPoly, lo: u64, hi: u64) -> Result<u64> {
    let mut total = 0u64;
    for n in lo..=hi {
        let m = positive_value(p, n)?;
        let root = m.isqrt();
        let small = (1..=root).filter(|d| m % d == 0).count() as u64;
        total += 2 * small - u64::from(is_perfect_square(m as i128));
    }
    Ok(total)
}

pub fn hyperbola_count(p: &QuadraticPoly, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroN);
    }
    hyperbola_count_over(p, 1, n)
}

/// Which explicit bound to compare against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// `C1 N log N + C2 N + C3`.
    Theorem1,
    /// The intermediate bound in terms of `√f(N)`.
    SqrtF,
    /// `1.216 N log N + 4.332 N`, `n^2 + 1` only.
    Theorem2,
    /// `1.216 N log N + 3.336 N`, `n^2 + 1` and `N >= 1000` only.
    Refined,
}

impl BoundKind {
    pub const ALL: [BoundKind; 4] =
        [BoundKind::Theorem1, BoundKind::SqrtF, BoundKind::Theorem2, BoundKind::Refined];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Theorem1 => "theorem1",
            BoundKind::SqrtF => "sqrtf",
            BoundKind::Theorem2 => "theorem2",
            BoundKind::Refined => "refined",
        }
    }

    /// Smallest N the bound is stated for.
    pub fn min_n(self) -> u64 {
        match self {
            BoundKind::Refined => REFINED_MIN_N,
            _ => 1,
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown bound {s:?}")))
    }
}

/// Evaluates one kind of bound for one polynomial.
#[derive(Debug, Clone)]
pub struct BoundEvaluator {
    poly: QuadraticPoly,
    kind: BoundKind,
    constants: BoundConstants,
}

impl BoundEvaluator {
    pub fn new(poly: QuadraticPoly, kind: BoundKind) -> Result<Self> {
        let constants = constants_for(&poly, Positivity::Require)?;
        if matches!(kind, BoundKind::Theorem2 | BoundKind::Refined)
            && (poly.b(), poly.c()) != (0, 1)
        {
            return Err(Error::BoundNeedsUnitPoly(kind.name()));
        }
        Ok(BoundEvaluator { poly, kind, constants })
    }

    pub fn kind(&self) -> BoundKind {
        self.kind
    }

    pub fn constants(&self) -> &BoundConstants {
        &self.constants
    }

    pub fn bound(&self, n: u64) -> Result<f64> {
        match self.kind {
            BoundKind::Theorem1 => Ok(theorem1_bound(&self.constants, n)),
            BoundKind::SqrtF => sqrtf_bound(&self.poly, n),
            BoundKind::Theorem2 => Ok(theorem2_bound(n)),
            BoundKind::Refined => refined_bound(n),
        }
    }
}

/// One row of a verification run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerificationRecord {
    pub n: u64,
    pub exact: u64,
    pub bound: f64,
    /// `bound - exact`.
    pub margin: f64,
    /// `exact / (N log N)`, for `N >= 2`.
    pub ratio: Option<f64>,
}

impl VerificationRecord {
    pub fn new(n: u64, exact: u64, bound: f64) -> Self {
        let ratio = (n >= 2).then(|| exact as f64 / (n as f64 * (n as f64).ln()));
        VerificationRecord { n, exact, bound, margin: bound - exact as f64, ratio }
    }

    pub fn holds(&self) -> bool {
        self.margin > 0.0
    }
}

/// `S(1), ..., S(n_max)` from the sieve.
pub fn running_sums(p: &QuadraticPoly, n_max: u64, limits: &WorkLimits) -> Result<Vec<u64>> {
    let tau = RootSieve::new(*p, n_max, limits)?.tau_values(DEFAULT_SEGMENT_LEN);
    Ok(tau
        .iter()
        .scan(0u64, |acc, &t| {
            *acc += u64::from(t);
            Some(*acc)
        })
        .collect())
}

/// Records for each `N` in `ns`, without judging them.
pub fn evaluate(
    p: &QuadraticPoly,
    ns: &[u64],
    kind: BoundKind,
    limits: &WorkLimits,
) -> Result<Vec<VerificationRecord>> {
    let eval = BoundEvaluator::new(*p, kind)?;
    let Some(&top) = ns.iter().max() else {
        return Ok(Vec::new());
    };
    if ns.contains(&0) {
        return Err(Error::ZeroN);
    }
    let sums = running_sums(p, top, limits)?;
    ns.iter()
        .map(|&n| Ok(VerificationRecord::new(n, sums[n as usize - 1], eval.bound(n)?)))
        .collect()
}

/// Like [`evaluate`], but fails on the first record whose margin is not
/// strictly positive.
pub fn verify(
    p: &QuadraticPoly,
    ns: &[u64],
    kind: BoundKind,
    limits: &WorkLimits,
) -> Result<Vec<VerificationRecord>> {
    let records = evaluate(p, ns, kind, limits)?;
    if let Some(bad) = records.iter().find(|r| !r.holds()) {
        return Err(Error::BoundViolated { n: bad.n, exact: bad.exact, bound: bad.bound });
    }
    Ok(records)
}

/// Outcome of checking a bound at every `N` in a range.
#[derive(Debug, Clone, PartialEq)]
pub struct ExhaustiveSummary {
    pub kind: BoundKind,
    pub from: u64,
    pub to: u64,
    /// Record with the smallest margin.
    pub tightest: VerificationRecord,
    /// Record with the smallest `margin / bound`.
    pub tightest_relative: VerificationRecord,
    pub violations: u64,
    pub first_violation: Option<VerificationRecord>,
}

impl ExhaustiveSummary {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Compares `S(N)` with the bound at every `N` from the bound's starting
/// point up to `n_max`.
pub fn exhaustive_check(
    p: &QuadraticPoly,
    n_max: u64,
    kind: BoundKind,
    limits: &WorkLimits,
) -> Result<ExhaustiveSummary> {
    let eval = BoundEvaluator::new(*p, kind)?;
    let from = kind.min_n();
    if n_max < from {
        return Err(Error::WorkLimit(format!(
            "the {kind} bound starts at N = {from}, above n_max = {n_max}"
        )));
    }
    let sums = running_sums(p, n_max, limits)?;
    let mut summary: Option<ExhaustiveSummary> = None;
    for n in from..=n_max {
        let rec = VerificationRecord::new(n, sums[n as usize - 1], eval.bound(n)?);
        let s = summary.get_or_insert(ExhaustiveSummary {
            kind,
            from,
            to: n_max,
            tightest: rec,
            tightest_relative: rec,
            violations: 0,
            first_violation: None,
        });
        if rec.margin < s.tightest.margin {
            s.tightest = rec;
        }
        if rec.margin / rec.bound < s.tightest_relative.margin / s.tightest_relative.bound {
            s.tightest_relative = rec;
        }
        if !rec.holds() {
            s.violations += 1;
            s.first_violation.get_or_insert(rec);
        }
    }
    Ok(summary.expect("range is nonempty"))
}
