use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};
use serde::Serialize;

use super::{binomial, int_valuation, pow_int, rat_int, staudt_primes, Int, Rational};
use crate::error::{invalid, Result};

/// Environment variable bounding the number of Bernoulli values kept in the
/// process-wide cache. Indices at or above the bound are still computed
/// exactly, just not retained.
pub const CACHE_MAX_ENV: &str = "RADEMACHER_CACHE_MAX";
const DEFAULT_CACHE_MAX: usize = 4096;

struct Cache {
    values: RwLock<Vec<Rational>>,
    max: usize,
}

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| {
        let max = std::env::var(CACHE_MAX_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .unwrap_or(DEFAULT_CACHE_MAX)
            .max(2);
        Cache {
            values: RwLock::new(vec![Rational::one()]),
            max,
        }
    })
}

/// Appends `B_k` for `k = values.len() ..= n` using
/// `sum_{j=0}^{k} C(k+1, j) B_j = 0`.
fn extend(values: &mut Vec<Rational>, n: usize) {
    while values.len() <= n {
        let k = values.len();
        if k >= 3 && k % 2 == 1 {
            values.push(Rational::zero());
            continue;
        }
        let mut acc = Rational::zero();
        for (j, b) in values.iter().enumerate() {
            if !b.is_zero() {
                acc += b * rat_int(binomial(k as i64 + 1, j as i64));
            }
        }
        values.push(-acc / rat_int(k as i64 + 1));
    }
}

/// Number of Bernoulli values currently cached.
pub fn cache_len() -> usize {
    cache().values.read().unwrap().len()
}

/// The Bernoulli number `B_n`, with `B_1 = -1/2`.
///
/// Values below the cache bound are computed once and then served from a
/// grow-only table shared by all threads.
pub fn bernoulli(n: usize) -> Rational {
    let cache = cache();
    {
        let values = cache.values.read().unwrap();
        if n < values.len() {
            return values[n].clone();
        }
    }
    if n < cache.max {
        let mut values = cache.values.write().unwrap();
        extend(&mut values, n);
        return values[n].clone();
    }
    let mut local = {
        let values = cache.values.read().unwrap();
        values.clone()
    };
    extend(&mut local, n);
    local.swap_remove(n)
}

/// `B_n / n` for `n >= 1`.
pub fn bernoulli_over_index(n: usize) -> Rational {
    assert!(n >= 1, "B_n/n needs n >= 1");
    bernoulli(n) / rat_int(n as i64)
}

/// `beta_m = zeta(-m) = (-1)^m B_{m+1} / (m+1)`.
pub fn beta(m: usize) -> Rational {
    let v = bernoulli_over_index(m + 1);
    if m % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Numerator and positive denominator of `zeta(1 - 2n) = -B_{2n}/(2n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZetaPair {
    #[serde(with = "crate::json::int")]
    pub i: Int,
    #[serde(with = "crate::json::int")]
    pub j: Int,
}

pub fn zeta_pair(n: usize) -> Result<ZetaPair> {
    if n == 0 {
        return invalid("zeta_pair needs n >= 1");
    }
    let v = -bernoulli_over_index(2 * n);
    let pair = ZetaPair {
        i: v.numer().clone(),
        j: v.denom().clone(),
    };
    assert_eq!(
        pair.j,
        von_staudt_denominator(2 * n as u64)?,
        "denominator of B_2n/2n disagrees with the von Staudt product"
    );
    Ok(pair)
}

/// `prod_{(p-1) | n} p^(1 + nu_p(n))`, the denominator of `B_n / n`.
pub fn von_staudt_denominator(n: u64) -> Result<Int> {
    if n == 0 || n % 2 == 1 {
        return invalid(format!("von Staudt denominator needs even n >= 2, got {n}"));
    }
    let nn = Int::from(n);
    Ok(staudt_primes(n).into_iter().fold(Int::one(), |acc, p| {
        let e = 1 + int_valuation(&nn, p).expect("n is nonzero");
        acc * pow_int(&Int::from(p), e)
    }))
}

/// `1^r + 2^r + ... + k^r` from the closed Bernoulli form
/// `(1/(r+1)) sum_{l<=r} C(r+1, l) B_l (k+1)^(r+1-l) - [r = 0]`.
pub fn power_sum(r: usize, k: u64) -> Rational {
    let k1 = Int::from(k + 1);
    let mut acc = Rational::zero();
    for l in 0..=r {
        let b = bernoulli(l);
        if b.is_zero() {
            continue;
        }
        acc += b * rat_int(binomial(r as i64 + 1, l as i64) * pow_int(&k1, (r + 1 - l) as u64));
    }
    acc /= rat_int(r as i64 + 1);
    if r == 0 {
        acc -= Rational::one();
    }
    acc
}
