//! The published example constants and their recomputation.

use crate::bounds::{constants_for, theorem2_constants_derivation, Positivity};
use crate::divisor_sum::{running_sums, WorkLimits};
use crate::error::Result;
use crate::quadratic::{make_poly, QuadraticPoly};

/// A value as printed, with the number of decimals shown.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Printed {
    pub value: f64,
    pub decimals: u32,
}

const fn printed(value: f64, decimals: u32) -> Printed {
    Printed { value, decimals }
}

impl Printed {
    /// Half a unit in the last printed place.
    pub fn half_ulp(&self) -> f64 {
        0.5 * 10f64.powi(-(self.decimals as i32))
    }

    /// `|printed - computed| / printed`; for a printed 0, the computed value
    /// must be exactly 0.
    pub fn relative_deviation(&self, computed: f64) -> f64 {
        if self.value == 0.0 {
            if computed == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.value - computed).abs() / self.value.abs()
        }
    }

    /// The computed constant does not undercut the printed one by more than
    /// its rounding: `computed <= printed + half_ulp`.
    pub fn not_undercut_by(&self, computed: f64) -> bool {
        computed <= self.value + self.half_ulp()
    }
}

/// How the constants of a row are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowMethod {
    /// General `(C1, C2, C3)` formula.
    General,
    /// The `n^2 + 1` specialization `(1.216, 4.332, 0)`.
    UnitSpecialized,
}

#[derive(Debug, Clone, Copy)]
pub struct PublishedRow {
    pub b: i64,
    pub c: i64,
    pub lambda: Option<f64>,
    pub constants: [Printed; 3],
    pub method: RowMethod,
}

/// The five example polynomials with their printed `λ(δ)` and constants.
pub const PUBLISHED_ROWS: [PublishedRow; 5] = [
    PublishedRow {
        b: 0,
        c: 1,
        lambda: Some(0.955),
        constants: [printed(1.216, 3), printed(4.332, 3), printed(0.0, 0)],
        method: RowMethod::UnitSpecialized,
    },
    PublishedRow {
        b: 5,
        c: 27,
        lambda: Some(1.351),
        constants: [printed(4.68, 2), printed(30.15, 2), printed(76.02, 2)],
        method: RowMethod::General,
    },
    PublishedRow {
        b: 2,
        c: 10,
        lambda: Some(1.56),
        constants: [printed(5.7, 1), printed(46.0, 0), printed(110.0, 0)],
        method: RowMethod::General,
    },
    PublishedRow {
        b: 26,
        c: 706,
        lambda: Some(1.395),
        constants: [printed(6.9, 1), printed(115.0, 0), printed(2126.0, 0)],
        method: RowMethod::General,
    },
    PublishedRow {
        b: 5,
        c: -26,
        lambda: None,
        constants: [printed(7.4, 1), printed(138.0, 0), printed(662.0, 0)],
        method: RowMethod::General,
    },
];

/// The general-formula constants printed for `n^2 + 1`.
pub const UNIT_GENERAL_PRINTED: [Printed; 3] = [printed(4.051, 3), printed(16.8, 1), printed(7.58, 2)];

/// One recomputed row.
#[derive(Debug, Clone)]
pub struct TableRow {
    pub poly: QuadraticPoly,
    pub published: PublishedRow,
    pub computed: [f64; 3],
    /// `S(N) / (N log N)` at the requested N, where `λ` is printed.
    pub empirical_ratio: Option<f64>,
    pub note: Option<String>,
}

impl TableRow {
    pub fn max_relative_deviation(&self) -> f64 {
        self.published
            .constants
            .iter()
            .zip(self.computed)
            .map(|(p, c)| p.relative_deviation(c))
            .fold(0.0, f64::max)
    }

    /// Every constant within `tolerance` relative of the printed value and
    /// none below it by more than the printed rounding.
    pub fn reproduces(&self, tolerance: f64) -> bool {
        self.published.constants.iter().zip(self.computed).all(|(p, c)| {
            p.relative_deviation(c) <= tolerance && p.not_undercut_by(c)
        })
    }
}

/// Recomputes [`PUBLISHED_ROWS`]. With `empirical_n`, also sieves
/// `S(N) / (N log N)` for rows that print `λ`.
pub fn example_table(empirical_n: Option<u64>, limits: &WorkLimits) -> Result<Vec<TableRow>> {
    PUBLISHED_ROWS
        .iter()
        .map(|row| {
            let poly = make_poly(row.b, row.c);
            let computed = match row.method {
                RowMethod::UnitSpecialized => {
                    let (c1, c2) = theorem2_constants_derivation();
                    [c1, c2, 0.0]
                }
                RowMethod::General => {
                    let bc = constants_for(&poly, Positivity::Waive)?;
                    [bc.c1, bc.c2, bc.c3]
                }
            };
            let positive = poly.check_hypotheses().positive_nondecreasing;
            let note = (!positive).then(|| {
                let last_bad = (1..=u64::MAX)
                    .take_while(|&n| poly.eval(n).is_ok_and(|v| v <= 0))
                    .last()
                    .unwrap_or(0);
                format!("positivity hypothesis fails for n <= {last_bad}")
            });
            let empirical_ratio = match (empirical_n, row.lambda) {
                (Some(n), Some(_)) if positive && n >= 2 => {
                    let s = *running_sums(&poly, n, limits)?.last().expect("n >= 2");
                    Some(s as f64 / (n as f64 * (n as f64).ln()))
                }
                _ => None,
            };
            Ok(TableRow { poly, published: *row, computed, empirical_ratio, note })
        })
        .collect()
}
