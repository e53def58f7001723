#![no_main]

use libfuzzer_sys::fuzz_target;
use quadtau::arith::{factorize, is_prime, tau_of};

fuzz_target!(|n: u64| {
    let n = u128::from(n);
    let f = factorize(n);
    if n <= 1 {
        assert!(f.is_empty());
        return;
    }
    assert_eq!(f.product(), Some(n));
    let mut last = 1;
    for (p, e) in f.iter() {
        assert!(p > last && e >= 1 && is_prime(p));
        last = p;
    }
    assert_eq!(tau_of(n).unwrap(), f.divisor_count());
});
