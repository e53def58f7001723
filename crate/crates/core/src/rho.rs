//! ρ(d), the number of roots of `f(m) ≡ 0 (mod d)` with `0 <= m < d`.
//!
//! Three independent evaluations are provided: direct enumeration, the
//! multiplicative closed form from the local values at prime powers, and
//! the Dirichlet convolution `ρ = μ² * χ`. Their agreement is the identity
//! this module exists to check.

use rayon::prelude::*;

use crate::arith::{build_sieves, factorize, jacobi, CompensatedSum, SieveTables};
use crate::character::{make_character, RealCharacter};
use crate::error::{Error, Result};
use crate::quadratic::QuadraticPoly;

/// ρ(d) computed three ways.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RhoTriple {
    pub d: u64,
    pub brute: u64,
    pub closed: u64,
    pub convolved: u64,
}

impl RhoTriple {
    pub fn agrees(&self) -> bool {
        self.brute == self.closed && self.closed == self.convolved
    }
}

/// Counts `m in [0, d)` with `(m + b)^2 ≡ delta (mod d)`. Cost O(d).
pub fn rho_brute(p: &QuadraticPoly, d: u64) -> u64 {
    assert!(d >= 1, "rho_brute needs d >= 1");
    let d128 = u128::from(d);
    let target = p.delta().rem_euclid(i128::from(d)) as u128;
    let shift = i128::from(p.b()).rem_euclid(i128::from(d)) as u128;
    let mut count = 0;
    for m in 0..d128 {
        let x = (m + shift) % d128;
        if x * x % d128 == target {
            count += 1;
        }
    }
    count
}

/// ρ(d) assembled from its values at prime powers:
/// `ρ(2) = 1`, `ρ(2^k) = 0` for `k >= 2`; for odd `p | delta`, `ρ(p) = 1` and
/// `ρ(p^k) = 0` for `k >= 2`; for odd `p ∤ delta`, `ρ(p^k) = 1 + (delta/p)`.
///
/// These local values hold only for squarefree `delta ≢ 1 (mod 4)`; other
/// polynomials are refused.
pub fn rho_closed(p: &QuadraticPoly, d: u64) -> Result<u64> {
    p.require_delta_conditions()?;
    if d == 0 {
        return Err(Error::ZeroArgument("rho_closed"));
    }
    let delta = p.delta();
    let mut out = 1u64;
    for (prime, exp) in factorize(u128::from(d)).iter() {
        let prime = prime as i128;
        let local = if prime == 2 || delta % prime == 0 {
            u64::from(exp == 1)
        } else {
            (1 + jacobi(delta.rem_euclid(prime), prime)?) as u64
        };
        out *= local;
        if out == 0 {
            break;
        }
    }
    Ok(out)
}

/// Evaluation context for the convolution form `ρ(d) = Σ_{lm = d} μ²(l) χ(m)`:
/// the polynomial, its character, and a Möbius table.
#[derive(Debug, Clone)]
pub struct RhoContext {
    poly: QuadraticPoly,
    character: RealCharacter,
    sieve: SieveTables,
}

impl RhoContext {
    /// Prepares ρ evaluations for `1 <= d <= d_max`.
    pub fn new(poly: QuadraticPoly, d_max: u64) -> Result<Self> {
        poly.require_delta_conditions()?;
        let delta = i64::try_from(poly.delta()).map_err(|_| Error::Overflow("delta"))?;
        Ok(RhoContext {
            poly,
            character: make_character(delta)?,
            sieve: build_sieves(d_max.max(1))?,
        })
    }

    pub fn poly(&self) -> &QuadraticPoly {
        &self.poly
    }

    pub fn character(&self) -> &RealCharacter {
        &self.character
    }

    pub fn d_max(&self) -> u64 {
        self.sieve.limit()
    }

    /// Literal divisor-pair sum `Σ_{lm = d} μ²(l) χ(m)`.
    pub fn rho_convolved(&self, d: u64) -> Result<u64> {
        if d == 0 || d > self.sieve.limit() {
            return Err(Error::BeyondSieve { x: d as f64, limit: self.sieve.limit() });
        }
        let mut total = 0i64;
        let mut l = 1u64;
        while l * l <= d {
            if d.is_multiple_of(l) {
                let m = d / l;
                total += self.term(l, m);
                if m != l {
                    total += self.term(m, l);
                }
            }
            l += 1;
        }
        // a negative total would contradict the identity; report it as 0 so
        // the triple check flags the mismatch
        Ok(u64::try_from(total).unwrap_or(0))
    }

    fn term(&self, l: u64, m: u64) -> i64 {
        let mu = self.sieve.mobius(l).unwrap_or(0);
        i64::from(mu * mu) * i64::from(self.character.value(m))
    }

    pub fn triple(&self, d: u64) -> Result<RhoTriple> {
        Ok(RhoTriple {
            d,
            brute: rho_brute(&self.poly, d),
            closed: rho_closed(&self.poly, d)?,
            convolved: self.rho_convolved(d)?,
        })
    }

    /// Every `d <= d_max` at which the three evaluations disagree.
    pub fn mismatches(&self) -> Result<Vec<RhoTriple>> {
        let triples = (1..=self.d_max())
            .into_par_iter()
            .map(|d| self.triple(d))
            .collect::<Result<Vec<_>>>()?;
        Ok(triples.into_iter().filter(|t| !t.agrees()).collect())
    }
}

/// ρ(1), ..., ρ(upto) by the closed form.
pub fn rho_table(p: &QuadraticPoly, upto: u64) -> Result<Vec<u64>> {
    (1..=upto).map(|d| rho_closed(p, d)).collect()
}

fn floor_at_least_one(x: f64) -> Result<u64> {
    if !(x >= 1.0) {
        return Err(Error::BelowOne(x));
    }
    Ok(x.floor() as u64)
}

/// `Σ_{d <= x} ρ(d)`.
pub fn sum_rho(p: &QuadraticPoly, x: f64) -> Result<u64> {
    Ok(rho_table(p, floor_at_least_one(x)?)?.iter().sum())
}

/// `Σ_{d <= x} ρ(d)/d`.
pub fn sum_rho_over_d(p: &QuadraticPoly, x: f64) -> Result<f64> {
    let mut acc = CompensatedSum::default();
    for (i, r) in rho_table(p, floor_at_least_one(x)?)?.into_iter().enumerate() {
        if r != 0 {
            acc.add(r as f64 / (i + 1) as f64);
        }
    }
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::make_poly;

    fn unit() -> QuadraticPoly {
        make_poly(0, 1)
    }

    #[test]
    fn brute_values() {
        let p = unit();
        assert_eq!(rho_brute(&p, 1), 1);
        assert_eq!(rho_brute(&p, 2), 1);
        assert_eq!(rho_brute(&p, 4), 0);
        assert_eq!(rho_brute(&p, 5), 2);
        assert_eq!(rho_brute(&p, 25), 2);
    }

    #[test]
    fn closed_values() {
        assert_eq!(rho_closed(&unit(), 25).unwrap(), 2);
        assert_eq!(rho_closed(&make_poly(5, 27), 2).unwrap(), 1);
        assert_eq!(rho_closed(&make_poly(2, 10), 9).unwrap(), 0);
        assert_eq!(rho_brute(&make_poly(2, 10), 9), 0);
        assert_eq!(rho_closed(&make_poly(1, 0), 3), Err(Error::DeltaOneModFour(1)));
        assert!(rho_closed(&unit(), 0).is_err());
    }

    #[test]
    fn convolved_values() {
        let ctx = RhoContext::new(unit(), 100).unwrap();
        assert_eq!(ctx.rho_convolved(1).unwrap(), 1);
        assert_eq!(ctx.rho_convolved(5).unwrap(), 2);
        assert_eq!(ctx.rho_convolved(4).unwrap(), 0);
        assert!(ctx.rho_convolved(101).is_err());
        assert!(ctx.rho_convolved(0).is_err());
    }

    #[test]
    fn sums() {
        let p = unit();
        assert_eq!(sum_rho(&p, 1.0).unwrap(), 1);
        assert_eq!(sum_rho(&p, 10.0).unwrap(), 6);
        assert_eq!(sum_rho(&p, 10.7).unwrap(), 6);
        assert!(sum_rho(&p, 0.5).is_err());
        let k = crate::character::kappa(-1);
        assert!(sum_rho(&p, 1e4).unwrap() as f64 <= k * 1e4);
        let cap = (k.ln() + 2.0) * (0.608 * 1e4f64.ln() + 1.166);
        assert!(sum_rho_over_d(&p, 1e4).unwrap() < cap);
    }

    #[test]
    fn multiplicative_and_small() {
        let p = make_poly(26, 706);
        let table = rho_table(&p, 1000).unwrap();
        let gcd = |mut a: u64, mut b: u64| {
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        };
        for d1 in 1..=1000u64 {
            assert!(table[d1 as usize - 1] <= d1);
            for d2 in 1..=(1000 / d1) {
                if gcd(d1, d2) == 1 {
                    let lhs = table[(d1 * d2) as usize - 1];
                    assert_eq!(lhs, table[d1 as usize - 1] * table[d2 as usize - 1]);
                }
            }
        }
    }
}
