//! Möbius and divisor-count tables, plus a plain prime sieve.

use crate::error::{Error, Result};

/// Default memory ceiling for table construction (2 GiB).
pub const DEFAULT_SIEVE_CEILING: u64 = 2 << 30;

/// Bytes of storage per table entry: one `i8` for μ and one `u32` for τ.
const BYTES_PER_ENTRY: u64 = 5;

/// μ(n) and τ(n) for `1 <= n <= limit`.
///
/// Immutable once built and cheap to share by reference across threads.
#[derive(Debug, Clone)]
pub struct SieveTables {
    limit: u64,
    // index 0 is padding so that mobius[n] = μ(n)
    mobius: Vec<i8>,
    tau: Vec<u32>,
}

/// Builds the tables up to `limit` under the default memory ceiling.
pub fn build_sieves(limit: u64) -> Result<SieveTables> {
    build_sieves_with_ceiling(limit, DEFAULT_SIEVE_CEILING)
}

pub fn build_sieves_with_ceiling(limit: u64, ceiling_bytes: u64) -> Result<SieveTables> {
    if limit == 0 {
        return Err(Error::ZeroArgument("build_sieves"));
    }
    let bytes = (limit + 1).saturating_mul(BYTES_PER_ENTRY);
    if bytes > ceiling_bytes || usize::try_from(limit).is_err() {
        return Err(Error::SieveTooLarge { limit, bytes, ceiling: ceiling_bytes });
    }
    let len = limit as usize + 1;

    let mut tau = vec![0u32; len];
    for d in 1..len {
        for m in (d..len).step_by(d) {
            tau[m] += 1;
        }
    }

    let mut mobius = vec![1i8; len];
    mobius[0] = 0;
    for p in primes_up_to(limit) {
        let p = p as usize;
        for m in (p..len).step_by(p) {
            mobius[m] = -mobius[m];
        }
        if let Some(sq) = p.checked_mul(p) {
            for m in (sq..len).step_by(sq) {
                mobius[m] = 0;
            }
        }
    }

    Ok(SieveTables { limit, mobius, tau })
}

impl SieveTables {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// μ(1), ..., μ(limit).
    pub fn mobius_values(&self) -> &[i8] {
        &self.mobius[1..]
    }

    /// τ(1), ..., τ(limit).
    pub fn tau_values(&self) -> &[u32] {
        &self.tau[1..]
    }

    /// μ(n), or `None` outside `1..=limit`.
    pub fn mobius(&self, n: u64) -> Option<i8> {
        (n >= 1 && n <= self.limit).then(|| self.mobius[n as usize])
    }

    pub fn tau(&self, n: u64) -> Option<u32> {
        (n >= 1 && n <= self.limit).then(|| self.tau[n as usize])
    }

    pub fn is_squarefree(&self, n: u64) -> Option<bool> {
        self.mobius(n).map(|m| m != 0)
    }

    fn floor_in_range(&self, x: f64) -> Result<usize> {
        if !(x >= 1.0) {
            return Err(Error::BelowOne(x));
        }
        let n = x.floor();
        if n > self.limit as f64 {
            return Err(Error::BeyondSieve { x, limit: self.limit });
        }
        Ok(n as usize)
    }

    /// Σ_{n ≤ x} μ²(n)/n.
    ///
    /// Terms are accumulated with Neumaier compensation, keeping the relative
    /// error near one ulp for every x within reach of the tables.
    pub fn squarefree_harmonic_sum(&self, x: f64) -> Result<f64> {
        let n = self.floor_in_range(x)?;
        let mut acc = CompensatedSum::default();
        for k in 1..=n {
            if self.mobius[k] != 0 {
                acc.add(1.0 / k as f64);
            }
        }
        Ok(acc.value())
    }

    /// Number of squarefree integers in `1..=x`.
    pub fn squarefree_count(&self, x: f64) -> Result<u64> {
        let n = self.floor_in_range(x)?;
        Ok(self.mobius[1..=n].iter().filter(|&&m| m != 0).count() as u64)
    }

    /// Running values of Σ_{n ≤ x} μ²(n)/n; entry `x - 1` holds the sum up to `x`.
    pub fn squarefree_harmonic_prefix(&self) -> Vec<f64> {
        let mut acc = CompensatedSum::default();
        self.mobius[1..]
            .iter()
            .enumerate()
            .map(|(i, &m)| {
                if m != 0 {
                    acc.add(1.0 / (i + 1) as f64);
                }
                acc.value()
            })
            .collect()
    }

    /// Running squarefree counts; entry `x - 1` holds the count up to `x`.
    pub fn squarefree_count_prefix(&self) -> Vec<u64> {
        let mut count = 0u64;
        self.mobius[1..]
            .iter()
            .map(|&m| {
                count += u64::from(m != 0);
                count
            })
            .collect()
    }
}

/// Neumaier's improved Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// All primes `<= limit`, by the sieve of Eratosthenes over odd numbers.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    // composite[i] describes the odd number 2i + 1
    let half = (limit as usize - 1) / 2 + 1;
    let mut composite = vec![false; half];
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= limit as usize {
        if !composite[i] {
            let p = 2 * i + 1;
            for j in ((p * p - 1) / 2..half).step_by(p) {
                composite[j] = true;
            }
        }
        i += 1;
    }
    let mut out = vec![2];
    out.extend(
        composite
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &c)| !c)
            .map(|(i, _)| 2 * i as u64 + 1),
    );
    out
}
