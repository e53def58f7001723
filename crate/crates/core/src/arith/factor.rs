//! Integer factorization for the 128-bit working width.
//!
//! Small factors are stripped by trial division with a mod-30 wheel. Whatever
//! remains is either certified prime by Miller-Rabin with fixed bases or split
//! by Brent's variant of Pollard rho. No randomness is involved: the rho
//! increments are tried in a fixed order, so results and timings are
//! reproducible.

use std::fmt;

/// Trial division stops once the candidate divisor reaches this bound.
const TRIAL_LIMIT: u128 = 1 << 14;

/// Prime factorization as strictly increasing `(prime, exponent)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactorList(Vec<(u128, u32)>);

impl FactorList {
    pub fn factors(&self) -> &[(u128, u32)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u128, u32)> + '_ {
        self.0.iter().copied()
    }

    /// Multiplies the factorization back out. `None` on overflow.
    pub fn product(&self) -> Option<u128> {
        self.iter()
            .try_fold(1u128, |acc, (p, e)| acc.checked_mul(p.checked_pow(e)?))
    }

    /// Number of divisors, `Π (e + 1)`.
    pub fn divisor_count(&self) -> u64 {
        self.iter().map(|(_, e)| u64::from(e) + 1).product()
    }

    /// Largest exponent, 0 for the empty factorization.
    pub fn max_exponent(&self) -> u32 {
        self.iter().map(|(_, e)| e).max().unwrap_or(0)
    }

    fn from_unsorted(mut primes: Vec<u128>) -> Self {
        primes.sort_unstable();
        let mut out: Vec<(u128, u32)> = Vec::new();
        for p in primes {
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
        FactorList(out)
    }
}

impl fmt::Display for FactorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Complete prime factorization of `n`. `factorize(0)` and `factorize(1)`
/// both return the empty list.
pub fn factorize(n: u128) -> FactorList {
    let mut primes = Vec::new();
    if n <= 1 {
        return FactorList(Vec::new());
    }
    let rest = trial_divide(n, &mut primes);
    if rest > 1 {
        split_into(rest, &mut primes);
    }
    FactorList::from_unsorted(primes)
}

/// Divides out every prime below `TRIAL_LIMIT`; returns the cofactor.
fn trial_divide(mut n: u128, primes: &mut Vec<u128>) -> u128 {
    for p in [2u128, 3, 5] {
        while n.is_multiple_of(p) {
            primes.push(p);
            n /= p;
        }
    }
    const WHEEL: [u128; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut d = 7u128;
    let mut i = 0;
    while d < TRIAL_LIMIT && d * d <= n {
        while n.is_multiple_of(d) {
            primes.push(d);
            n /= d;
        }
        d += WHEEL[i];
        i = (i + 1) % WHEEL.len();
    }
    if n > 1 && d * d > n {
        // every prime below d was removed, so the cofactor is prime
        primes.push(n);
        return 1;
    }
    n
}

fn split_into(n: u128, primes: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        primes.push(n);
        return;
    }
    let d = rho_split(n);
    split_into(d, primes);
    split_into(n / d, primes);
}

pub(crate) fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return (a % m) * (b % m) % m;
    }
    let (mut a, mut b) = (a % m, b % m);
    // with m < 2^(128-k), shifting a residue by k bits or multiplying it by a
    // k-bit digit cannot overflow, so b is consumed k bits at a time
    let k = m.leading_zeros();
    if k > 0 {
        let digits = (128 - b.leading_zeros()).div_ceil(k);
        let mask = (1u128 << k) - 1;
        let mut out = 0u128;
        for i in (0..digits).rev() {
            let digit = (b >> (i * k)) & mask;
            out = add_mod((out << k) % m, a * digit % m, m);
        }
        return out;
    }
    if a < b {
        std::mem::swap(&mut a, &mut b);
    }
    let mut out = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            out = add_mod(out, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    out
}

fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    if a >= m - b {
        a - (m - b)
    } else {
        a + b
    }
}

pub(crate) fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut out = 1u128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            out = mul_mod(out, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    out
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Miller-Rabin with fixed bases.
///
/// Below 2^64 the seven-base set is a proven certificate. Above that the
/// first twenty prime bases are used; these are proven up to 3.3e24 and have
/// no known failure beyond.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let small: &[u128] = &[2, 325, 9375, 28178, 450775, 9780504, 1795265022];
    let large: &[u128] = &[
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    let bases = if n <= u64::MAX as u128 { small } else { large };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in bases {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Finds a nontrivial divisor of the odd composite `n`.
fn rho_split(n: u128) -> u128 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let root = n.isqrt();
    if root * root == n {
        return root;
    }
    for c in 1u128.. {
        if let Some(d) = brent(n, c) {
            return d;
        }
    }
    unreachable!("rho increments exhausted")
}

fn brent(n: u128, c: u128) -> Option<u128> {
    const BATCH: u64 = 128;
    let step = |x: u128| add_mod(mul_mod(x, x, n), c % n, n);
    let mut y = 2u128;
    let mut r: u64 = 1;
    let mut q = 1u128;
    let mut g = 1u128;
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = step(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += BATCH;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = step(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert!(factorize(1).is_empty());
        assert_eq!(factorize(12).factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(9_999_999_967).factors(), &[(9_999_999_967, 1)]);
        assert_eq!(factorize(2).factors(), &[(2, 1)]);
        assert_eq!(factorize(1 << 40).factors(), &[(2, 40)]);
        assert_eq!(factorize(12).to_string(), "2^2 * 3");
    }

    #[test]
    fn primality_by_trial_division() {
        let oracle = |n: u128| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..20_000u128 {
            assert_eq!(is_prime(n), oracle(n), "{n}");
        }
        for n in 1_000_000_000u128..1_000_002_000 {
            assert_eq!(is_prime(n), oracle(n), "{n}");
        }
    }

    #[test]
    fn strong_pseudoprimes_are_rejected() {
        // strong pseudoprimes to several small bases
        for n in [2047u128, 3215031751, 3825123056546413051, 318665857834031151167461] {
            assert!(!is_prime(n), "{n}");
        }
    }

    #[test]
    fn large_semiprimes_split() {
        let p = 4_294_967_311u128; // next prime after 2^32
        let q = 4_294_967_357u128;
        assert_eq!(factorize(p * q).factors(), &[(p, 1), (q, 1)]);
        let m = 1_000_000_007u128;
        assert_eq!(factorize(m * m * 3).factors(), &[(3, 1), (m, 2)]);
        // a prime above 2^64
        let big = 18_446_744_073_709_551_629u128;
        assert!(is_prime(big));
        assert_eq!(factorize(big * 6).factors(), &[(2, 1), (3, 1), (big, 1)]);
    }

    #[test]
    fn mul_mod_wide_modulus() {
        let m = (1u128 << 127) - 1;
        let a = m - 1;
        assert_eq!(mul_mod(a, a, m), 1);
        assert_eq!(pow_mod(3, m - 1, m), 1);
        let m = (1u128 << 127) + 45;
        assert_eq!(mul_mod(m - 1, m - 1, m), 1);
        let m = 999_999_999_989u128 * 999_999_999_959;
        assert_eq!(mul_mod(m - 2, m - 3, m), 6);
        assert_eq!(mul_mod(1 << 70, 1 << 70, m), pow_mod(2, 140, m));
    }
}
