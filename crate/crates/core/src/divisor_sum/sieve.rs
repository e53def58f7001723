//! Root sieve for `τ(f(n))` over `1 <= n <= N`.
//!
//! A prime `ℓ` divides `f(n) = (n + b)^2 - delta` exactly when `n` lies in
//! one of at most two residue classes mod `ℓ`. For each prime up to
//! `√f(N)` those classes are found once, then every segment of `n` walks the
//! classes, strips all powers of `ℓ` from the stored value, and multiplies
//! the running divisor count by `e + 1`. Whatever is left above 1 is a
//! single prime larger than `√f(N)` and contributes a factor 2.

use rayon::prelude::*;

use super::WorkLimits;
use crate::arith::{primes_up_to, sqrt_mod_prime};
use crate::error::{Error, Result};
use crate::quadratic::QuadraticPoly;

/// Default number of `n` per segment.
pub const DEFAULT_SEGMENT_LEN: usize = 1 << 16;

#[derive(Debug, Clone, Copy)]
struct RootClass {
    prime: u64,
    roots: [u64; 2],
    count: u8,
}

/// Prepared sieve for one polynomial and one range `1..=n_max`.
#[derive(Debug, Clone)]
pub struct RootSieve {
    poly: QuadraticPoly,
    n_max: u64,
    classes: Vec<RootClass>,
}

impl RootSieve {
    pub fn new(poly: QuadraticPoly, n_max: u64, limits: &WorkLimits) -> Result<Self> {
        poly.require_all()?;
        if n_max == 0 {
            return Err(Error::ZeroN);
        }
        limits.check_n(n_max)?;
        let top = poly.eval(n_max)?;
        if top > i128::from(u64::MAX) {
            return Err(Error::Overflow("f(N) exceeds the 64-bit sieve word"));
        }
        let root_bound = (top as u128).isqrt() as u64;
        // τ values, one segment of words per worker, and the class table
        let bytes = n_max
            .saturating_mul(4)
            .saturating_add((DEFAULT_SEGMENT_LEN as u64) * 12 * rayon::current_num_threads() as u64)
            .saturating_add(root_bound.saturating_mul(3));
        limits.check_bytes(bytes)?;

        let delta = poly.delta();
        let b = i128::from(poly.b());
        let mut classes = Vec::new();
        for prime in primes_up_to(root_bound) {
            let l = i128::from(prime);
            let shift = |s: i128| (s - b).rem_euclid(l) as u64;
            let class = if prime == 2 {
                let roots: Vec<u64> = (0..2u64)
                    .filter(|&m| (i128::from(m) + b).pow(2).rem_euclid(2) == delta.rem_euclid(2))
                    .collect();
                match roots.as_slice() {
                    [] => None,
                    [r] => Some(RootClass { prime, roots: [*r, 0], count: 1 }),
                    _ => Some(RootClass { prime, roots: [0, 1], count: 2 }),
                }
            } else if delta % l == 0 {
                Some(RootClass { prime, roots: [shift(0), 0], count: 1 })
            } else {
                sqrt_mod_prime(delta.rem_euclid(l) as u128, prime as u128).map(|s| {
                    let s = s as i128;
                    RootClass { prime, roots: [shift(s), shift(-s)], count: 2 }
                })
            };
            classes.extend(class);
        }
        Ok(RootSieve { poly, n_max, classes })
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    /// `τ(f(n))` for `lo <= n <= hi`, `1 <= lo <= hi <= n_max`.
    pub fn segment(&self, lo: u64, hi: u64) -> Vec<u32> {
        assert!(1 <= lo && lo <= hi && hi <= self.n_max, "segment {lo}..={hi} out of range");
        let len = (hi - lo + 1) as usize;
        // f is positive and non-decreasing on 1..=n_max, bounded by f(n_max) < 2^64
        let mut values: Vec<u64> = (lo..=hi)
            .map(|n| self.poly.eval(n).expect("checked at construction") as u64)
            .collect();
        let mut tau = vec![1u32; len];
        for class in &self.classes {
            let l = class.prime;
            for &r in &class.roots[..class.count as usize] {
                let mut idx = ((r + l - lo % l) % l) as usize;
                while idx < len {
                    let v = &mut values[idx];
                    let mut e = 0;
                    while (*v).is_multiple_of(l) {
                        *v /= l;
                        e += 1;
                    }
                    tau[idx] *= e + 1;
                    idx += l as usize;
                }
            }
        }
        for (t, v) in tau.iter_mut().zip(&values) {
            if *v > 1 {
                *t *= 2;
            }
        }
        tau
    }

    fn segments(&self, segment_len: usize) -> Vec<(u64, u64)> {
        let step = segment_len.max(1) as u64;
        (0..self.n_max.div_ceil(step))
            .map(|k| (k * step + 1, ((k + 1) * step).min(self.n_max)))
            .collect()
    }

    /// `τ(f(1)), ..., τ(f(n_max))`, segments processed in parallel.
    pub fn tau_values(&self, segment_len: usize) -> Vec<u32> {
        self.segments(segment_len)
            .into_par_iter()
            .map(|(lo, hi)| self.segment(lo, hi))
            .collect::<Vec<_>>()
            .concat()
    }

    /// `Σ_{n <= n_max} τ(f(n))`.
    pub fn total(&self, segment_len: usize) -> u64 {
        self.segments(segment_len)
            .into_par_iter()
            .map(|(lo, hi)| self.segment(lo, hi).iter().map(|&t| u64::from(t)).sum::<u64>())
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::tau_of;
    use crate::quadratic::make_poly;

    #[test]
    fn matches_per_value_factorization() {
        for (b, c) in [(0, 1), (5, 27), (2, 10), (26, 706), (-1, 3), (0, 2), (1, 3)] {
            let p = make_poly(b, c);
            let sieve = RootSieve::new(p, 2000, &WorkLimits::default()).unwrap();
            let tau = sieve.tau_values(97);
            for n in 1..=2000u64 {
                let expected = tau_of(p.eval(n).unwrap() as u128).unwrap();
                assert_eq!(u64::from(tau[n as usize - 1]), expected, "f = {p}, n = {n}");
            }
        }
    }

    #[test]
    fn segmentation_does_not_change_results() {
        let sieve = RootSieve::new(make_poly(0, 1), 50_000, &WorkLimits::default()).unwrap();
        let reference = sieve.tau_values(50_000);
        for len in [1, 7, 1000, 4096, 65_536] {
            assert_eq!(sieve.tau_values(len), reference);
            assert_eq!(sieve.total(len), reference.iter().map(|&t| u64::from(t)).sum::<u64>());
        }
    }

    #[test]
    fn refuses_invalid_input() {
        let limits = WorkLimits::default();
        assert!(RootSieve::new(make_poly(5, -26), 10, &limits).is_err());
        assert!(RootSieve::new(make_poly(1, 0), 10, &limits).is_err());
        assert!(RootSieve::new(make_poly(0, 1), 0, &limits).is_err());
        let tight = WorkLimits { max_n: 100, ..WorkLimits::default() };
        assert!(matches!(RootSieve::new(make_poly(0, 1), 101, &tight), Err(Error::WorkLimit(_))));
    }
}
