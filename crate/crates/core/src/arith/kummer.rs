use num_traits::{One, Zero};
use serde::Serialize;

use super::{bernoulli_over_index, is_prime, padic_valuation, pow_int, rat, rat_int, Int, Rational};
use crate::error::{invalid, Result};

/// Upper bound on the exponent `N` searched by [`kummer_defect`].
pub const DEFAULT_KUMMER_CAP: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KummerDefect {
    pub p: u64,
    pub n: u64,
    pub m: u64,
    /// Largest `N <= cap` with `n = m mod (p-1) p^N`.
    pub level: u32,
    #[serde(with = "crate::json::rational")]
    pub h: Rational,
    #[serde(with = "crate::json::rational")]
    pub defect: Rational,
    /// `nu_p(defect)`, absent when the defect is zero.
    pub valuation: Option<i64>,
}

impl KummerDefect {
    /// `nu_p(defect) >= N + 1`, vacuously true for a zero defect.
    pub fn holds(&self) -> bool {
        match self.valuation {
            None => true,
            Some(v) => v > self.level as i64,
        }
    }
}

/// Cohen's correction term `H_p(n, m)`.
fn correction(p: u64, n: u64, m: u64) -> Rational {
    if !n.is_multiple_of(p - 1) {
        return Rational::zero();
    }
    let mut h = (Rational::one() - rat(1, p as i64)) * (rat(1, n as i64) - rat(1, m as i64));
    if p == 3 {
        h -= rat_int(n as i64 - m as i64);
    }
    h
}

fn euler_factor(p: u64, n: u64) -> Rational {
    Rational::one() - rat_int(pow_int(&Int::from(p), n - 1))
}

/// Evaluates `(1 - p^{n-1}) B_n/n - (1 - p^{m-1}) B_m/m - H_p(n, m)` and the
/// level `N` at which the congruence is claimed.
pub fn kummer_defect(p: u64, n: u64, m: u64, cap: u32) -> Result<KummerDefect> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    if n == 0 || m == 0 || n % 2 == 1 || m % 2 == 1 {
        return invalid(format!("n and m must be even and positive, got {n}, {m}"));
    }
    let diff = n.abs_diff(m);
    if !diff.is_multiple_of(p - 1) {
        return invalid(format!("(p-1) = {} does not divide n - m = {diff}", p - 1));
    }
    let mut level = 0;
    if diff == 0 {
        level = cap;
    } else {
        let mut rest = diff / (p - 1);
        while level < cap && rest.is_multiple_of(p) {
            rest /= p;
            level += 1;
        }
    }
    let h = correction(p, n, m);
    let defect = euler_factor(p, n) * bernoulli_over_index(n as usize)
        - euler_factor(p, m) * bernoulli_over_index(m as usize)
        - &h;
    let valuation = if defect.is_zero() {
        None
    } else {
        Some(padic_valuation(&defect, p)?)
    };
    Ok(KummerDefect {
        p,
        n,
        m,
        level,
        h,
        defect,
        valuation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_four_eight() {
        let k = kummer_defect(5, 4, 8, DEFAULT_KUMMER_CAP).unwrap();
        assert_eq!(k.level, 0);
        assert_eq!(k.h, rat(1, 10));
        assert_eq!(k.defect, rat(-19475, 60));
        assert!(k.valuation.unwrap() >= 1);
        assert!(k.holds());
    }

    #[test]
    fn classical_case() {
        let k = kummer_defect(7, 2, 8, DEFAULT_KUMMER_CAP).unwrap();
        assert_eq!(k.h, rat(0, 1));
        assert!(k.valuation.unwrap() >= 1);
        assert!(k.holds());
    }

    #[test]
    fn identical_arguments() {
        let k = kummer_defect(11, 10, 10, DEFAULT_KUMMER_CAP).unwrap();
        assert!(k.defect.is_zero());
        assert!(k.h.is_zero());
        assert!(k.holds());
    }

    #[test]
    fn rejects_inadmissible() {
        assert!(kummer_defect(5, 4, 6, 12).is_err());
        assert!(kummer_defect(4, 4, 6, 12).is_err());
        assert!(kummer_defect(5, 3, 7, 12).is_err());
    }

    #[test]
    fn level_is_maximal() {
        // 34 - 2 = 32 = 2 * 16
        assert_eq!(kummer_defect(3, 2, 34, 12).unwrap().level, 0);
        // 56 - 2 = 54 = 2 * 27
        assert_eq!(kummer_defect(3, 2, 56, 12).unwrap().level, 3);
        assert_eq!(kummer_defect(3, 2, 56, 2).unwrap().level, 2);
    }
}
