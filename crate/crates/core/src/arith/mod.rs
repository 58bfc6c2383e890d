//! Exact arithmetic: big rationals, integer helpers, and the Bernoulli-number
//! machinery built on top of them.
//!
//! Every rational quantity in the crate is a [`Rational`], which is kept in
//! lowest terms with a positive denominator after each operation. Integrality
//! tests therefore reduce to `denom() == 1`.

mod bernoulli;
mod clarke;
mod kummer;
mod reciprocity;

pub use bernoulli::{
    bernoulli, bernoulli_over_index, beta, cache_len, power_sum, von_staudt_denominator,
    zeta_pair, ZetaPair,
};
pub use clarke::{clarke_decompose, ClarkeDecomposition, ClarkePart};
pub use kummer::{kummer_defect, KummerDefect, DEFAULT_KUMMER_CAP};
pub use reciprocity::{nielsen_check, saalschutz_check};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Int::from(num), Int::from(den))
}

pub fn rat_int(v: impl Into<Int>) -> Rational {
    Rational::from_integer(v.into())
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn sign(x: &Int) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> Int {
    if n < 0 || k < 0 || k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> Int {
    (1..=n).fold(Int::one(), |acc, i| acc * i)
}

pub fn pow_int(base: &Int, exp: u64) -> Int {
    num_traits::pow(base.clone(), exp as usize)
}

pub fn pow_rat(base: &Rational, exp: u64) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&p| is_prime(p)).collect()
}

/// Primes `p` with `(p - 1) | n`, in increasing order.
pub fn staudt_primes(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n)
        .filter(|d| n.is_multiple_of(*d) && is_prime(d + 1))
        .map(|d| d + 1)
        .collect();
    out.sort_unstable();
    out
}

/// `nu_p(x)` for a nonzero integer.
pub fn int_valuation(x: &Int, p: u64) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let p = Int::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Ok(v);
        }
        x = q;
        v += 1;
    }
}

/// The p-adic valuation of a nonzero rational: the `m` with
/// `x = p^m * alpha / beta` and `p` dividing neither `alpha` nor `beta`.
pub fn padic_valuation(x: &Rational, p: u64) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let num = int_valuation(x.numer(), p)? as i64;
    let den = int_valuation(x.denom(), p)? as i64;
    Ok(num - den)
}

/// Inverse of `a` modulo `m`, normalized into `[0, m)`.
pub fn mod_inverse(a: &Int, m: &Int) -> Option<Int> {
    let ext = a.mod_floor(m).extended_gcd(m);
    if !ext.gcd.is_one() {
        return None;
    }
    Some(ext.x.mod_floor(m))
}

/// `x - floor(x)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// Least common multiple of the denominators of a sequence of rationals.
pub fn denominator_lcm<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Int {
    xs.into_iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()))
}
