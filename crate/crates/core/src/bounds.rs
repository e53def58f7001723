//! Explicit constants and the upper bounds built from them.
//!
//! For `f(n) = n^2 + 2bn + c` with squarefree `delta ≢ 1 (mod 4)`:
//!
//! ```text
//! Σ_{n<=N} τ(f(n)) < C1 N log N + C2 N + C3
//! C1 = 1.216 (log κ + 2)
//! C2 = 2 (κ + (log κ + 2)(0.608 log ξ + 1.166))
//! C3 = 2 κ A
//! ```
//!
//! and for `n^2 + 1` specifically `1.216 N log N + 4.332 N` (all `N >= 1`)
//! and `1.216 N log N + 3.336 N` (`N >= 1000`).
//!
//! The decimal constants are kept exactly as published rather than
//! recomputed from `6/π²`; [`theorem2_constants_derivation`] rebuilds the
//! `n^2 + 1` coefficients from the ingredients.

use crate::character::kappa;
use crate::error::{Error, Result};
use crate::quadratic::QuadraticPoly;

/// `6/π²` rounded, the slope in `Σ_{n<=x} μ²(n)/n <= 0.608 log x + 1.166`.
pub const SQUAREFREE_HARMONIC_SLOPE: f64 = 0.608;
/// Additive constant in the squarefree harmonic bound, valid for `x >= 1`.
pub const SQUAREFREE_HARMONIC_CONST: f64 = 1.166;
/// Additive constant valid for `x >= 1000`.
pub const SQUAREFREE_HARMONIC_CONST_LARGE: f64 = 1.048;
/// `Σ_{l<=N} μ²(l) <= 0.62 N` for `N >= 1000`.
pub const SQUAREFREE_DENSITY_CAP: f64 = 0.62;
/// `2 × 0.608`.
pub const NLOGN_FACTOR: f64 = 1.216;
pub const UNIT_LINEAR: f64 = 4.332;
pub const UNIT_LINEAR_REFINED: f64 = 3.336;
/// First N for which the refined `n^2 + 1` bound is claimed.
pub const REFINED_MIN_N: u64 = 1000;

// the same constants in thousandths, for exact derivations
const SLOPE_MILLI: u64 = 608;
const HARMONIC_CONST_MILLI: u64 = 1166;
const HARMONIC_CONST_LARGE_MILLI: u64 = 1048;
const DENSITY_CAP_MILLI: u64 = 620;
const ONE_MILLI: u64 = 1000;

/// `(κ, ξ, A)` and the resulting `(C1, C2, C3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConstants {
    pub kappa: f64,
    pub xi: f64,
    pub a_shift: u64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

/// Whether [`constants_for`] insists that `f` is positive and
/// non-decreasing on `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Positivity {
    Require,
    Waive,
}

/// `(C1, C2, C3)` for `p`. The conditions on `delta` are always enforced.
pub fn constants_for(p: &QuadraticPoly, positivity: Positivity) -> Result<BoundConstants> {
    match positivity {
        Positivity::Require => p.require_all()?,
        Positivity::Waive => p.require_delta_conditions()?,
    }
    Ok(constants_from(kappa(p.delta()), p.xi(), p.a_shift()))
}

/// Assembles `(C1, C2, C3)` from `κ`, `ξ` and `A`.
pub fn constants_from(kappa: f64, xi: f64, a_shift: u64) -> BoundConstants {
    let log_factor = kappa.ln() + 2.0;
    BoundConstants {
        kappa,
        xi,
        a_shift,
        c1: NLOGN_FACTOR * log_factor,
        c2: 2.0
            * (kappa
                + log_factor * (SQUAREFREE_HARMONIC_SLOPE * xi.ln() + SQUAREFREE_HARMONIC_CONST)),
        c3: 2.0 * kappa * a_shift as f64,
    }
}

/// `N log N`, continued by 0 at `N = 0`.
fn n_log_n(n: u64) -> f64 {
    if n == 0 {
        0.0
    } else {
        let n = n as f64;
        n * n.ln()
    }
}

/// `C1 N log N + C2 N + C3`.
pub fn theorem1_bound(bc: &BoundConstants, n: u64) -> f64 {
    bc.c1 * n_log_n(n) + bc.c2 * n as f64 + bc.c3
}

/// The sharper intermediate bound with the true `√f(N)` in place of `ξN`
/// and `N + A`:
/// `2N (log κ + 2)(0.608 log √f(N) + 1.166) + 2 κ √f(N)`.
pub fn sqrtf_bound(p: &QuadraticPoly, n: u64) -> Result<f64> {
    p.require_delta_conditions()?;
    if n == 0 {
        return Err(Error::ZeroN);
    }
    let value = p.eval(n)?;
    if value <= 0 {
        return Err(Error::NonPositiveValue { n, value });
    }
    let root = (value as f64).sqrt();
    let k = kappa(p.delta());
    Ok(2.0 * n as f64
        * (k.ln() + 2.0)
        * (SQUAREFREE_HARMONIC_SLOPE * root.ln() + SQUAREFREE_HARMONIC_CONST)
        + 2.0 * k * root)
}

/// `1.216 N log N + 4.332 N`, for `n^2 + 1`.
pub fn theorem2_bound(n: u64) -> f64 {
    NLOGN_FACTOR * n_log_n(n) + UNIT_LINEAR * n as f64
}

/// `1.216 N log N + 3.336 N`, for `n^2 + 1` and `N >= 1000`.
pub fn refined_bound(n: u64) -> Result<f64> {
    if n < REFINED_MIN_N {
        return Err(Error::RefinedBelowRange(n));
    }
    Ok(NLOGN_FACTOR * n_log_n(n) + UNIT_LINEAR_REFINED * n as f64)
}

/// `Σ_{d<=x} ρ(d) <= κ x`.
pub fn rho_sum_bound(kappa: f64, x: f64) -> f64 {
    kappa * x
}

/// `Σ_{d<=x} ρ(d)/d < (log κ + 2)(0.608 log x + 1.166)`.
pub fn rho_harmonic_bound(kappa: f64, x: f64) -> f64 {
    (kappa.ln() + 2.0) * (SQUAREFREE_HARMONIC_SLOPE * x.ln() + SQUAREFREE_HARMONIC_CONST)
}

/// `Σ_{n<=x} μ²(n)/n <= 0.608 log x + 1.166`.
pub fn squarefree_harmonic_bound(x: f64) -> f64 {
    SQUAREFREE_HARMONIC_SLOPE * x.ln() + SQUAREFREE_HARMONIC_CONST
}

/// Upper bound for `Σ_{m<=x} χ(m)/m` from partial summation.
///
/// Up to `x = κ` the trivial `|X(u)| <= u` is stronger and gives
/// `1 + log x`; beyond it `|X(u)| < κ` gives `2 + log κ - κ/x`. Both stay
/// below `log κ + 2`.
pub fn char_harmonic_cap(kappa: f64, x: f64) -> f64 {
    if x <= kappa {
        1.0 + x.ln()
    } else {
        2.0 + kappa.ln() - kappa / x
    }
}

/// Coefficients of `N log N` and `N` for `n^2 + 1`, rebuilt from the
/// general pipeline: with `χ` the character mod 4, `X(N) ∈ {0, 1}`, so both
/// `κ` and `log κ + 2` become 1, and the divisor range `d <= √(N² + 1)` is
/// `d <= N`. That leaves
/// `2N (0.608 log N + 1.166) + 2 Σ_{l<=N} μ²(l)` with `Σ μ² <= N`.
pub fn theorem2_constants_derivation() -> (f64, f64) {
    unit_coefficients(HARMONIC_CONST_MILLI, ONE_MILLI)
}

/// Same as [`theorem2_constants_derivation`] for `N >= 1000`, where the
/// harmonic constant drops to 1.048 and `Σ μ²(l) <= 0.62 N`.
pub fn refined_constants_derivation() -> (f64, f64) {
    unit_coefficients(HARMONIC_CONST_LARGE_MILLI, DENSITY_CAP_MILLI)
}

// Integer arithmetic in thousandths keeps the result exact.
fn unit_coefficients(harmonic_const_milli: u64, density_milli: u64) -> (f64, f64) {
    let nlogn = 2 * SLOPE_MILLI;
    let linear = 2 * harmonic_const_milli + 2 * density_milli;
    (nlogn as f64 / 1000.0, linear as f64 / 1000.0)
}
