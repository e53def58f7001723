//! The polynomial family `f(n) = n^2 + 2bn + c = (n + b)^2 - delta`.

use std::fmt;
use std::str::FromStr;

use crate::arith::{ceil_sqrt, is_squarefree};
use crate::error::{Error, Result};

/// `n^2 + 2bn + c` together with its discriminant `delta = b^2 - c` and the
/// scale constants `xi` and `a_shift`.
///
/// For every `n >= 1`, `f(n) <= (xi n)^2` and `f(n) <= (n + a_shift)^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticPoly {
    b: i64,
    c: i64,
    delta: i128,
    xi: f64,
    a_shift: u64,
}

/// Which hypotheses of the explicit bound a polynomial satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HypothesisReport {
    pub delta_nonzero: bool,
    /// `|delta| <= MAX_DELTA`, so squarefreeness can be decided quickly.
    pub delta_in_range: bool,
    pub delta_squarefree: bool,
    pub delta_not_1_mod_4: bool,
    pub positive_nondecreasing: bool,
    pub all_satisfied: bool,
}

/// Largest `|delta|` for which the hypotheses are checked. Deciding
/// squarefreeness means factoring `delta`, which is quick below 2^64 and
/// can take hours near 2^126.
pub const MAX_DELTA: u128 = u64::MAX as u128;

/// Builds `n^2 + 2bn + c` and its derived constants.
pub fn make_poly(b: i64, c: i64) -> QuadraticPoly {
    QuadraticPoly::new(b, c)
}

impl QuadraticPoly {
    pub fn new(b: i64, c: i64) -> Self {
        let (b_abs, c_abs) = (b.unsigned_abs(), c.unsigned_abs());
        let delta = i128::from(b) * i128::from(b) - i128::from(c);
        let xi = (1.0 + 2.0 * b_abs as f64 + c_abs as f64).sqrt();
        // ceil_sqrt(|c|) < 2^32, so the max fits comfortably
        let a_shift = b_abs.max(ceil_sqrt(u128::from(c_abs)) as u64).max(1);
        QuadraticPoly { b, c, delta, xi, a_shift }
    }

    /// Half the linear coefficient.
    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    /// `b^2 - c`.
    pub fn delta(&self) -> i128 {
        self.delta
    }

    /// `sqrt(1 + 2|b| + |c|)`.
    pub fn xi(&self) -> f64 {
        self.xi
    }

    /// Least positive integer `A >= max(|b|, sqrt|c|)`.
    pub fn a_shift(&self) -> u64 {
        self.a_shift
    }

    /// Exact value `f(n)`; overflow is reported, never wrapped.
    pub fn eval(&self, n: u64) -> Result<i128> {
        let shifted = i128::from(n) + i128::from(self.b);
        shifted
            .checked_mul(shifted)
            .and_then(|sq| sq.checked_sub(self.delta))
            .ok_or(Error::Overflow("f(n)"))
    }

    pub fn check_hypotheses(&self) -> HypothesisReport {
        let delta_nonzero = self.delta != 0;
        let delta_in_range = self.delta.unsigned_abs() <= MAX_DELTA;
        let delta_squarefree =
            delta_nonzero && delta_in_range && is_squarefree(self.delta).unwrap_or(false);
        let delta_not_1_mod_4 = self.delta.rem_euclid(4) != 1;
        // f(n+1) - f(n) = 2n + 1 + 2b, smallest at n = 1; once f is
        // non-decreasing, positivity at n = 1 carries over to all n.
        let f1 = 1 + 2 * i128::from(self.b) + i128::from(self.c);
        let positive_nondecreasing = self.b >= -1 && f1 > 0;
        HypothesisReport {
            delta_nonzero,
            delta_in_range,
            delta_squarefree,
            delta_not_1_mod_4,
            positive_nondecreasing,
            all_satisfied: delta_nonzero
                && delta_in_range
                && delta_squarefree
                && delta_not_1_mod_4
                && positive_nondecreasing,
        }
    }

    /// The conditions on `delta` alone: nonzero, squarefree, not 1 mod 4,
    /// and no larger than [`MAX_DELTA`] in absolute value.
    pub fn require_delta_conditions(&self) -> Result<()> {
        let report = self.check_hypotheses();
        if !report.delta_nonzero {
            Err(Error::DeltaZero)
        } else if !report.delta_not_1_mod_4 {
            Err(Error::DeltaOneModFour(self.delta))
        } else if !report.delta_in_range {
            Err(Error::DeltaOutOfRange(self.delta))
        } else if !report.delta_squarefree {
            Err(Error::DeltaNotSquarefree(self.delta))
        } else {
            Ok(())
        }
    }

    /// Every hypothesis, including positivity and monotonicity of `f`.
    pub fn require_all(&self) -> Result<()> {
        self.require_delta_conditions()?;
        if !self.check_hypotheses().positive_nondecreasing {
            return Err(Error::NotPositiveNondecreasing { b: self.b, c: self.c });
        }
        Ok(())
    }
}

/// Free-function form of [`QuadraticPoly::check_hypotheses`].
pub fn check_hypotheses(p: &QuadraticPoly) -> HypothesisReport {
    p.check_hypotheses()
}

/// Free-function form of [`QuadraticPoly::eval`].
pub fn eval_f(p: &QuadraticPoly, n: u64) -> Result<i128> {
    p.eval(n)
}

impl fmt::Display for QuadraticPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n^2")?;
        let linear = 2 * i128::from(self.b);
        if linear != 0 {
            write!(f, "{}{}n", if linear < 0 { '-' } else { '+' }, linear.unsigned_abs())?;
        }
        if self.c != 0 {
            write!(f, "{}{}", if self.c < 0 { '-' } else { '+' }, self.c.unsigned_abs())?;
        }
        Ok(())
    }
}

/// Parses `n^2 + 2bn + c` written as a sum of terms, e.g. `n^2+10n-26`.
///
/// The leading term must be `n^2` (`n**2` and `n²` are also accepted); the
/// linear and constant terms are optional, may appear in either order, and
/// each at most once. The linear coefficient must be even.
impl FromStr for QuadraticPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |msg: &str| Error::Parse(format!("{msg} in polynomial {s:?}"));
        let rest = ["n^2", "n**2", "n²"]
            .iter()
            .find_map(|lead| compact.strip_prefix(lead))
            .ok_or_else(|| err("expected leading n^2"))?;

        let mut linear: Option<i128> = None;
        let mut constant: Option<i128> = None;
        let mut chars = rest;
        while !chars.is_empty() {
            let negative = match chars.as_bytes()[0] {
                b'+' => false,
                b'-' => true,
                _ => return Err(err("expected + or -")),
            };
            chars = &chars[1..];
            let digits_end = chars.find(|c: char| !c.is_ascii_digit()).unwrap_or(chars.len());
            let (digits, tail) = chars.split_at(digits_end);
            let (is_linear, tail) = if let Some(t) = tail.strip_prefix("*n") {
                if digits.is_empty() {
                    return Err(err("missing coefficient before *n"));
                }
                (true, t)
            } else if let Some(t) = tail.strip_prefix('n') {
                (true, t)
            } else {
                if digits.is_empty() {
                    return Err(err("empty term"));
                }
                (false, tail)
            };
            let magnitude: i128 = if digits.is_empty() {
                1
            } else {
                digits.parse().map_err(|_| err("coefficient out of range"))?
            };
            let value = if negative { -magnitude } else { magnitude };
            let slot = if is_linear { &mut linear } else { &mut constant };
            if slot.replace(value).is_some() {
                return Err(err("repeated term"));
            }
            chars = tail;
        }

        let linear = linear.unwrap_or(0);
        if linear % 2 != 0 {
            return Err(err("linear coefficient must be even"));
        }
        let b = i64::try_from(linear / 2).map_err(|_| err("linear coefficient out of range"))?;
        let c = i64::try_from(constant.unwrap_or(0))
            .map_err(|_| err("constant term out of range"))?;
        Ok(QuadraticPoly::new(b, c))
    }
}
