//! Divisor counts and the sets `<tau(d) : d | m>`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::multiset::{unit_set, CsSet, Multiset};

/// Prime factorization as `(prime, exponent)` pairs with increasing primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Trial division with a 2-3-5 wheel.
    pub fn of(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::NonPositive(0));
        }
        let mut rest = m;
        let mut factors = Vec::new();
        let mut take = |p: u64, rest: &mut u64| {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                *rest /= p;
                e += 1;
            }
            if e > 0 {
                factors.push((p, e));
            }
        };
        for p in [2, 3, 5] {
            take(p, &mut rest);
        }
        const GAPS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
        let mut p = 7u64;
        let mut i = 0;
        while p.saturating_mul(p) <= rest {
            take(p, &mut rest);
            p += GAPS[i];
            i = (i + 1) % GAPS.len();
        }
        if rest > 1 {
            factors.push((rest, 1));
        }
        Ok(Factorization { factors })
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn value(&self) -> u128 {
        self.factors.iter().map(|&(p, e)| (p as u128).pow(e)).product()
    }

    /// Number of divisors, `prod (e + 1)`.
    pub fn tau(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64 + 1).product()
    }

    /// `(divisor, tau(divisor))` for every divisor, divisors increasing.
    pub fn divisors_with_tau(&self) -> Vec<(u64, u64)> {
        let mut out = vec![(1u64, 1u64)];
        for &(p, e) in &self.factors {
            let base = out.clone();
            let mut pk = 1u64;
            for k in 1..=e as u64 {
                pk *= p;
                out.extend(base.iter().map(|&(d, t)| (d * pk, t * (k + 1))));
            }
        }
        out.sort_unstable();
        out
    }
}

fn positive(m: i128) -> Result<u64> {
    if m < 1 || m > u64::MAX as i128 {
        return Err(Error::NonPositive(m));
    }
    Ok(m as u64)
}

/// Number of positive divisors of `m`.
pub fn tau(m: i128) -> Result<u64> {
    Ok(Factorization::of(positive(m)?)?.tau())
}

/// `<tau(d) : d | m>`, verified.
pub fn liouville_set(m: i128) -> Result<CsSet> {
    let f = Factorization::of(positive(m)?)?;
    let taus = f.divisors_with_tau().into_iter().map(|(_, t)| t);
    Multiset::canonicalize(taus)?.verify_cs()
}

/// Bag product of `<1, ..., e + 1>` over the prime powers of `m`.
pub fn liouville_by_bag_product(m: i128) -> Result<CsSet> {
    let f = Factorization::of(positive(m)?)?;
    f.factors()
        .iter()
        .fold(unit_set(), |acc, &(_, e)| {
            acc.bag_product(&Multiset::range(e as usize + 1))
        })
        .verify_cs()
}

/// Sum of `tau(d)` over divisors, as a big integer.
pub fn tau_sum(m: i128) -> Result<BigInt> {
    Ok(liouville_set(m)?.sum().clone())
}
