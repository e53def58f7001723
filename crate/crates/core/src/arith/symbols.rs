//! Quadratic residue symbols.

use crate::error::{Error, Result};

/// Jacobi symbol `(a/n)` for odd `n >= 1`.
pub fn jacobi(a: i128, n: i128) -> Result<i8> {
    if n <= 0 || n % 2 == 0 {
        return Err(Error::EvenOrNonPositiveModulus(n));
    }
    Ok(jacobi_odd(a.rem_euclid(n) as u128, n as u128))
}

/// Binary Jacobi algorithm. `n` odd, `a < n`.
pub(crate) fn jacobi_odd(mut a: u128, mut n: u128) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        // (2/n) = -1 iff n = ±3 mod 8
        if tz % 2 == 1 && matches!(n % 8, 3 | 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Kronecker symbol `(a/n)`, total on all integer pairs.
///
/// Conventions: `(a/0)` is 1 for `a = ±1` and 0 otherwise, `(a/-1)` is the
/// sign of `a` (1 at `a = 0`), and `(a/2)` is 0 for even `a` and otherwise
/// 1 or -1 as `a ≡ ±1` or `±3 (mod 8)`.
pub fn kronecker(a: i128, n: i128) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut sign = 1i8;
    if n < 0 && a < 0 {
        sign = -1;
    }
    let mut m = n.unsigned_abs();
    let twos = m.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            sign = -sign;
        }
        m >>= twos;
    }
    // m is odd and at most 2^127 - 1 here, so it fits in i128
    let reduced = a.rem_euclid(m as i128) as u128;
    sign * jacobi_odd(reduced, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcd(mut a: i128, mut b: i128) -> i128 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a.abs()
    }

    fn legendre_brute(a: i128, p: i128) -> i8 {
        let a = a.rem_euclid(p);
        if a == 0 {
            return 0;
        }
        if (1..p).any(|x| (x * x) % p == a) {
            1
        } else {
            -1
        }
    }

    fn small_primes(limit: i128) -> Vec<i128> {
        (2..=limit)
            .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
            .collect()
    }

    // Jacobi from the definition: product of Legendre symbols over the factorization.
    fn jacobi_brute(a: i128, mut n: i128, primes: &[i128]) -> i8 {
        let mut out = 1;
        for &p in primes {
            if p * p > n {
                break;
            }
            while n % p == 0 {
                out *= legendre_brute(a, p);
                n /= p;
            }
        }
        if n > 1 {
            out *= legendre_brute(a, n);
        }
        out
    }

    #[test]
    fn spec_examples() {
        assert_eq!(jacobi(1, 1).unwrap(), 1);
        assert_eq!(jacobi(2, 15).unwrap(), 1);
        assert_eq!(jacobi(-1, 5).unwrap(), 1);
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(-8, 3), 1);
    }

    #[test]
    fn jacobi_rejects_bad_moduli() {
        assert!(jacobi(3, 0).is_err());
        assert!(jacobi(3, 4).is_err());
        assert!(jacobi(3, -7).is_err());
    }

    #[test]
    fn kronecker_conventions() {
        assert_eq!(kronecker(1, 0), 1);
        assert_eq!(kronecker(-1, 0), 1);
        assert_eq!(kronecker(2, 0), 0);
        assert_eq!(kronecker(0, 0), 0);
        assert_eq!(kronecker(5, -1), 1);
        assert_eq!(kronecker(-5, -1), -1);
        assert_eq!(kronecker(0, -1), 1);
        assert_eq!(kronecker(0, 1), 1);
        assert_eq!(kronecker(1, 2), 1);
        assert_eq!(kronecker(3, 2), -1);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(7, 2), 1);
        assert_eq!(kronecker(-1, 2), 1);
        assert_eq!(kronecker(i128::MAX, i128::MIN), 1);
        assert_eq!(kronecker(i128::MIN, 3), jacobi(i128::MIN, 3).unwrap());
    }

    #[test]
    fn jacobi_matches_definition() {
        let primes = small_primes(200);
        for n in (1..400i128).step_by(2) {
            for a in -150..150i128 {
                let expected = if gcd(a, n) > 1 { 0 } else { jacobi_brute(a, n, &primes) };
                assert_eq!(jacobi(a, n).unwrap(), expected, "({a}/{n})");
            }
        }
    }

    #[test]
    fn kronecker_extends_jacobi() {
        for n in (1..999i128).step_by(2) {
            for a in -500..500i128 {
                if gcd(a, n) == 1 {
                    assert_eq!(kronecker(a, n), jacobi(a, n).unwrap());
                }
            }
        }
    }

    #[test]
    fn kronecker_is_multiplicative_in_n() {
        for a in -40..40i128 {
            for m in (-30..30i128).filter(|&m| m != 0) {
                for n in (-30..30i128).filter(|&n| n != 0) {
                    assert_eq!(kronecker(a, m * n), kronecker(a, m) * kronecker(a, n), "a={a} m={m} n={n}");
                }
            }
        }
    }
}
