//! The real character attached to `delta`, its partial sums, and the
//! explicit Pólya-Vinogradov constant κ.
//!
//! For squarefree `delta ≢ 1 (mod 4)` the character
//! `χ(n) = (delta/n)` on `n` coprime to `2 delta` (zero elsewhere) coincides
//! with the Kronecker symbol `(4 delta/n)`, and is primitive of conductor
//! `q = 4|delta|`. One period of values is stored explicitly.

use std::f64::consts::PI;

use crate::arith::{jacobi, kronecker, CompensatedSum};
use crate::error::{Error, Result};
use crate::quadratic::make_poly;

/// χ(n) for one discriminant, stored as one period `χ(0), ..., χ(q - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealCharacter {
    delta: i64,
    conductor: u64,
    period: Vec<i8>,
    // prefix[k] = X(k) for 0 <= k < q; χ(0) = 0 so the scan below starts cleanly
    prefix: Vec<i64>,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Largest conductor for which the period table is built (about 150 MB).
pub const MAX_CONDUCTOR: u64 = 1 << 24;

/// Builds χ for `delta` from the Jacobi form and checks every entry of the
/// period against the Kronecker form `(4 delta / n)`.
pub fn make_character(delta: i64) -> Result<RealCharacter> {
    let conductor = 4 * u128::from(delta.unsigned_abs());
    if conductor > u128::from(MAX_CONDUCTOR) {
        return Err(Error::WorkLimit(format!(
            "conductor {conductor} exceeds {MAX_CONDUCTOR}"
        )));
    }
    let conductor = conductor as u64;
    // same conditions as the polynomial n^2 - delta
    make_poly(0, -delta).require_delta_conditions()?;
    let two_delta = 2 * u128::from(delta.unsigned_abs());
    let mut period = Vec::with_capacity(conductor as usize);
    for n in 0..conductor {
        let via_jacobi = if gcd(u128::from(n), two_delta) > 1 {
            0
        } else {
            jacobi(i128::from(delta), i128::from(n))?
        };
        let via_kronecker = kronecker(4 * i128::from(delta), i128::from(n));
        if via_jacobi != via_kronecker {
            return Err(Error::CharacterMismatch { n, jacobi: via_jacobi, kronecker: via_kronecker });
        }
        period.push(via_jacobi);
    }
    let prefix = period
        .iter()
        .scan(0i64, |acc, &v| {
            *acc += i64::from(v);
            Some(*acc)
        })
        .collect::<Vec<_>>();
    Ok(RealCharacter { delta, conductor, period, prefix })
}

impl RealCharacter {
    pub fn delta(&self) -> i64 {
        self.delta
    }

    /// `q = 4|delta|`.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `χ(0), ..., χ(q - 1)`.
    pub fn period_values(&self) -> &[i8] {
        &self.period
    }

    pub fn value(&self, n: u64) -> i8 {
        self.period[(n % self.conductor) as usize]
    }

    /// `X(N) = Σ_{1 <= n <= N} χ(n)`, in constant time.
    pub fn partial_sum(&self, n: u64) -> i64 {
        // a full period sums to zero
        self.prefix[(n % self.conductor) as usize]
    }

    /// `max |X(N)|` over `1 <= N <= n_max` and the least `N` attaining it.
    ///
    /// `X` is periodic, so at most one period is scanned. Returns `(0, 0)`
    /// when `n_max = 0`.
    pub fn max_abs_partial_sum(&self, n_max: u64) -> (u64, u64) {
        let scan = n_max.min(self.conductor);
        let mut best = (0u64, 0u64);
        for n in 1..=scan {
            let v = self.partial_sum(n).unsigned_abs();
            if v > best.0 {
                best = (v, n);
            }
        }
        best
    }

    /// `Σ_{m <= x} χ(m)/m`.
    pub fn char_harmonic_sum(&self, x: f64) -> Result<f64> {
        if !(x >= 1.0) {
            return Err(Error::BelowOne(x));
        }
        let mut acc = CompensatedSum::default();
        for m in 1..=x.floor() as u64 {
            let v = self.value(m);
            if v != 0 {
                acc.add(f64::from(v) / m as f64);
            }
        }
        Ok(acc.value())
    }

    /// Running values of `Σ_{m <= x} χ(m)/m` for `x = 1..=upto`.
    pub fn char_harmonic_prefix(&self, upto: u64) -> Vec<f64> {
        let mut acc = CompensatedSum::default();
        (1..=upto)
            .map(|m| {
                let v = self.value(m);
                if v != 0 {
                    acc.add(f64::from(v) / m as f64);
                }
                acc.value()
            })
            .collect()
    }

    /// Smallest `d` dividing `q` for which `χ(n + d) = χ(n)` on all `n`.
    /// Equals `q` exactly when no proper divisor is a period.
    pub fn minimal_period(&self) -> u64 {
        let q = self.conductor;
        (1..=q)
            .filter(|d| q.is_multiple_of(*d))
            .find(|&d| (0..q).all(|n| self.value(n) == self.value(n + d)))
            .unwrap_or(q)
    }

    /// Smallest modulus `d | q` that induces χ: some character mod `d`
    /// agrees with χ on all `n` coprime to `q`.
    ///
    /// For a primitive character this is `q` itself.
    pub fn inducing_modulus(&self) -> u64 {
        let q = self.conductor;
        (1..=q)
            .filter(|d| q.is_multiple_of(*d))
            .find(|&d| {
                (0..q).all(|n| {
                    let v = self.value(n);
                    v == 0 || (0..q).filter(|m| m % d == n % d).all(|m| {
                        let w = self.value(m);
                        w == 0 || w == v
                    })
                })
            })
            .unwrap_or(q)
    }
}

/// `g(q) = ½ √q log q + 1.2 √q`.
pub fn g_of(q: f64) -> f64 {
    let root = q.sqrt();
    0.5 * root * q.ln() + 1.2 * root
}

/// `κ(delta) = g(4|delta|)`, the uniform bound on `|X(N)|`.
pub fn kappa(delta: i128) -> f64 {
    g_of(4.0 * delta.unsigned_abs() as f64)
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    gcd(u128::from(a), u128::from(b)) as u64
}

/// Qiu's explicit bound for a primitive character mod `q`, with the actual
/// `gcd(N, q)`:
/// `4/π² √q log q + 0.38 √q + 0.608/√q + 0.116 gcd(N, q)² / q^{3/2}`.
pub fn qiu_rhs(q: u64, n: u64) -> f64 {
    let qf = q as f64;
    let root = qf.sqrt();
    let g = gcd_u64(n, q) as f64;
    4.0 / (PI * PI) * root * qf.ln() + 0.38 * root + 0.608 / root + 0.116 * g * g / qf.powf(1.5)
}

/// Qiu's bound after `gcd(N, q)² <= q²`:
/// `4/π² √q log q + 0.496 √q + 0.608/√q`.
pub fn qiu_rhs_trivialized(q: u64) -> f64 {
    let qf = q as f64;
    let root = qf.sqrt();
    4.0 / (PI * PI) * root * qf.ln() + (0.38 + 0.116) * root + 0.608 / root
}

/// The same bound with `4/π²` rounded up to the printed `0.406`.
pub fn qiu_rhs_rounded(q: u64) -> f64 {
    k_majorant((q as f64).sqrt())
}

/// `K(x) = 0.812 x log x + 0.496 x + 0.608/x`, so that the rounded Qiu
/// bound is `K(√q)`.
pub fn k_majorant(x: f64) -> f64 {
    0.812 * x * x.ln() + 0.496 * x + 0.608 / x
}
