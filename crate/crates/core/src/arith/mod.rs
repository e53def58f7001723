//! Exact integer arithmetic: residue symbols, sieves, factorization.
//!
//! All logarithms in this crate are natural logarithms.

mod factor;
mod sieve;
mod symbols;

pub use factor::{factorize, is_prime, FactorList};
pub(crate) use factor::{mul_mod, pow_mod};
pub(crate) use sieve::CompensatedSum;
pub use sieve::{
    build_sieves, build_sieves_with_ceiling, primes_up_to, SieveTables, DEFAULT_SIEVE_CEILING,
};
pub use symbols::{jacobi, kronecker};

use crate::error::{Error, Result};

/// True if no square of a prime divides `|n|`.
pub fn is_squarefree(n: i128) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroArgument("is_squarefree"));
    }
    Ok(factorize(n.unsigned_abs()).max_exponent() <= 1)
}

pub fn is_perfect_square(n: i128) -> bool {
    n >= 0 && {
        let r = (n as u128).isqrt();
        r * r == n as u128
    }
}

/// Number of positive divisors of `n`.
pub fn tau_of(n: u128) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroArgument("tau_of"));
    }
    Ok(factorize(n).divisor_count())
}

/// Smallest integer `r` with `r * r >= n`.
pub fn ceil_sqrt(n: u128) -> u128 {
    let r = n.isqrt();
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// A square root of `a` modulo the odd prime `p`, if `a` is a residue.
///
/// Tonelli-Shanks; the non-residue is the least one, found by a Jacobi scan.
pub fn sqrt_mod_prime(a: u128, p: u128) -> Option<u128> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if symbols::jacobi_odd(a, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let z = (2..p).find(|&z| symbols::jacobi_odd(z, p) == -1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}
