#![no_main]

//! Jacobi against Kronecker and against Euler's criterion for prime moduli.

use libfuzzer_sys::fuzz_target;
use quadtau::arith::{is_prime, jacobi, kronecker};

fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fuzz_target!(|input: (i64, i64, u32)| {
    let (a, n, m) = input;
    let (a, n) = (i128::from(a), i128::from(n));
    let k = kronecker(a, n);
    assert!((-1..=1).contains(&k));
    if n > 0 && n % 2 == 1 {
        assert_eq!(jacobi(a, n).unwrap(), k);
    } else {
        assert!(jacobi(a, n).is_err());
    }
    // Euler's criterion at a 32-bit prime
    let p = u128::from(m | 1);
    if p > 2 && is_prime(p) {
        let r = a.rem_euclid(p as i128) as u128;
        let euler = pow_mod(r, (p - 1) / 2, p);
        let expected = if r == 0 { 0 } else if euler == 1 { 1 } else { -1 };
        assert_eq!(jacobi(a, p as i128).unwrap(), expected);
    }
});
