//! Two reciprocity identities for `beta_m = zeta(-m)`, evaluated as finite
//! sums. Each check returns `LHS - RHS`, which should be zero.

use super::{beta, binomial, factorial, rat, rat_int, Rational};

fn sign(j: usize) -> Rational {
    if j.is_multiple_of(2) {
        rat(1, 1)
    } else {
        rat(-1, 1)
    }
}

fn factorial_ratio(k: usize, m: usize) -> Rational {
    Rational::new(
        factorial(k as u64) * factorial(m as u64),
        factorial((k + m + 1) as u64),
    )
}

/// Saalschütz:
/// `sum_j (-1)^j C(k,j) beta_{m+j} + sum_j (-1)^j C(m,j) beta_{k+j} = -k! m! / (k+m+1)!`.
pub fn saalschutz_check(k: usize, m: usize) -> Rational {
    let left: Rational = (0..=k)
        .map(|j| sign(j) * rat_int(binomial(k as i64, j as i64)) * beta(m + j))
        .sum();
    let right: Rational = (0..=m)
        .map(|j| sign(j) * rat_int(binomial(m as i64, j as i64)) * beta(k + j))
        .sum();
    left + right + factorial_ratio(k, m)
}

/// Nielsen:
/// `sum_j (-1)^j C(k,j) beta_{m+j} beta_{k-j} + sum_j (-1)^j C(m,j) beta_{k+j} beta_{m-j}
///  = beta_k beta_m - (k! m!/(k+m+1)! + (-1)^k/(k+1) + (-1)^m/(m+1)) beta_{k+m+1}`.
pub fn nielsen_check(k: usize, m: usize) -> Rational {
    let left: Rational = (0..=k)
        .map(|j| sign(j) * rat_int(binomial(k as i64, j as i64)) * beta(m + j) * beta(k - j))
        .sum::<Rational>()
        + (0..=m)
            .map(|j| {
                sign(j) * rat_int(binomial(m as i64, j as i64)) * beta(k + j) * beta(m - j)
            })
            .sum::<Rational>();
    let bracket = factorial_ratio(k, m) + sign(k) * rat(1, k as i64 + 1) + sign(m) * rat(1, m as i64 + 1);
    let right = beta(k) * beta(m) - bracket * beta(k + m + 1);
    left - right
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn saalschutz_anchors() {
        // (0, 0): 2 beta_0 = -1 on the left, -0!0!/1! = -1 on the right.
        assert_eq!(beta(0) + beta(0), rat(-1, 1));
        assert!(saalschutz_check(0, 0).is_zero());
        assert!(saalschutz_check(1, 0).is_zero());
        assert!(saalschutz_check(7, 5).is_zero());
    }

    #[test]
    fn nielsen_anchors() {
        assert!(nielsen_check(0, 0).is_zero());
        assert!(nielsen_check(2, 2).is_zero());
        assert!(nielsen_check(9, 4).is_zero());
    }

    #[test]
    fn sweep_to_forty() {
        for k in 0..=40 {
            for m in 0..=40 {
                assert!(saalschutz_check(k, m).is_zero(), "saalschutz {k} {m}");
                assert!(nielsen_check(k, m).is_zero(), "nielsen {k} {m}");
            }
        }
    }
}
