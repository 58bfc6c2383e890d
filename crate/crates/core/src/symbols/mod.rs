//! Higher Rademacher symbols evaluated by every available formula: the
//! Dedekind-sum definition, the direct and closed forms of the spanning
//! symbols, the `G_n` formula, and Zagier's formula.

mod report;

pub use report::{symbol_report, Formula, SymbolReport};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{
    bernoulli_over_index, beta, binomial, pow_int, rat, rat_int, sign, zeta_pair, Int, Rational,
};
use crate::dedekind::{hypergeom_f, ScaledBernoulliTable};
use crate::error::{invalid, Error, Result};
use crate::modular::{Mat2, Word};
use crate::period::xi;

/// Coefficients of `(c z^2 + (d - a) z - b)^(n-1)`, lowest power first.
pub fn f_coefficients(n: u32, a: &Mat2) -> Vec<Int> {
    let q = [-a.b(), a.d() - a.a(), a.c().clone()];
    let mut out = vec![Int::one()];
    for _ in 1..n {
        let mut next = vec![Int::zero(); out.len() + 2];
        for (i, x) in out.iter().enumerate() {
            for (k, y) in q.iter().enumerate() {
                next[i + k] += x * y;
            }
        }
        out = next;
    }
    out
}

/// `[z^r] (c z^2 + (d - a) z - b)^(n-1)`.
pub fn f_coefficient(n: u32, a: &Mat2, r: usize) -> Result<Int> {
    if n == 0 || r > 2 * n as usize - 2 {
        return invalid(format!("f_{r} is not defined for n = {n}"));
    }
    Ok(f_coefficients(n, a).swap_remove(r))
}

fn star(n: u32, r: usize) -> usize {
    2 * n as usize - 2 - r
}

fn parity(r: usize) -> i64 {
    if r.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn check_word_args(n: u32) -> Result<()> {
    if n < 2 {
        return invalid(format!("word formulas need n >= 2, got {n}"));
    }
    Ok(())
}

fn u_power(n: u32, w: &Word) -> Int {
    pow_int(&w.matrix(crate::modular::Form::Tv).u_of(), (n - 1) as u64)
}

// ---------------------------------------------------------------------------
// Definition through Dedekind sums

/// The matrix the definition is evaluated on: `±T^k` is replaced by
/// `±V^{-k}`; `None` for `±I`.
fn definition_matrix(a: &Mat2) -> Option<Mat2> {
    if !a.c().is_zero() {
        return Some(a.clone());
    }
    if a.b().is_zero() {
        return None;
    }
    // a = d = ±1, so k = b / a = a b
    let s = a.a().clone();
    let k = a.a() * a.b();
    Some(Mat2::new(s.clone(), 0, -(&s * k), s).expect("determinant one"))
}

/// `Psi_n(A)` for `n = 1..=n_max`, sharing one Bernoulli table.
pub fn psi_definition_upto(n_max: u32, a: &Mat2) -> Result<Vec<Rational>> {
    if n_max == 0 {
        return invalid("n must be positive");
    }
    let Some(m) = definition_matrix(a) else {
        return Ok(vec![Rational::zero(); n_max as usize]);
    };
    let c = m.c();
    let modulus: u64 = c
        .abs()
        .try_into()
        .map_err(|_| Error::InvalidArgument(format!("|c| = {} is too large", c.abs())))?;
    let table = ScaledBernoulliTable::new(modulus, 2 * n_max as usize);
    let trace = rat_int(m.trace());
    let v = rat_int(m.v_of());
    let sgn_c = sign(c);
    (1..=n_max)
        .map(|n| {
            let two_n = 2 * n as usize;
            let mut sum = Rational::zero();
            for r in 0..=two_n {
                let s = two_n - r;
                let f = hypergeom_f(r, s, &trace)?;
                if !f.is_zero() {
                    sum += f * table.dedekind_sum(r, s, m.a(), c);
                }
            }
            let j = rat_int(zeta_pair(n as usize)?.j);
            let vpow = crate::arith::pow_rat(&v, (n - 1) as u64);
            let mut psi = rat_int(-sgn_c) * vpow * j * sum;
            if n == 1 {
                psi -= rat_int(3 * sgn_c * sign(&m.trace()));
            }
            Ok(psi)
        })
        .collect()
}

/// `Psi_n(A)` from the Dedekind-sum definition.
pub fn psi_definition(n: u32, a: &Mat2) -> Result<Rational> {
    Ok(psi_definition_upto(n, a)?.pop().expect("n >= 1"))
}

// ---------------------------------------------------------------------------
// Word formulas

/// `Psi_n^(m)` summed literally over the single-letter rotations.
pub fn psi_spanning_direct(n: u32, m: usize, w: &Word) -> Result<Rational> {
    check_word_args(n)?;
    if m > 2 * n as usize - 2 {
        return invalid(format!("m = {m} out of range for n = {n}"));
    }
    let ms = star(n, m);
    let mut total = Int::zero();
    for a in w.cyclic_tv() {
        let f = f_coefficients(n, &a);
        total += &f[ms] - &f[m] * parity(m);
    }
    let up = u_power(n, w);
    let (q, rem) = total.div_rem(&up);
    if !rem.is_zero() {
        return Err(Error::Inconsistent(format!(
            "u^(n-1) = {up} does not divide the cyclic sum {total} for {w}"
        )));
    }
    Ok(rat_int(q))
}

/// Closed form of `Psi_n^(0)` over the block rotations.
pub fn psi_spanning_hv(n: u32, w: &Word) -> Result<Rational> {
    check_word_args(n)?;
    let top = 2 * n as usize - 2;
    let corr = |r: usize| -> Rational {
        let rs = star(n, r);
        let half = rat(i64::from(r == 0) + i64::from(rs == 0), 2);
        let ones = rat(i64::from(r == 1) + i64::from(rs == 1), 2 * n as i64 - 2);
        half - ones
    };
    let mut total = Rational::zero();
    for (k, a) in w.cyclic_ts() {
        let f = f_coefficients(n, &a);
        let k = Int::from(k);
        for r in 0..=top {
            let rs = star(n, r);
            let weight = bernoulli_over_index(r + 1) + bernoulli_over_index(rs + 1)
                - Rational::new(pow_int(&k, (r + 1) as u64), Int::from(r + 1))
                + corr(r);
            total += weight * rat_int(f[r].clone());
        }
    }
    Ok(total / rat_int(u_power(n, w)))
}

/// `C(top, bottom) * beta(top - bottom)`, zero outside `0 <= bottom <= top`.
fn binomial_beta(top: usize, bottom: usize) -> Rational {
    if bottom > top {
        return Rational::zero();
    }
    rat_int(binomial(top as i64, bottom as i64)) * beta(top - bottom)
}

/// `C(top, bottom) k^(top-bottom+1) / (top-bottom+1)`, same convention.
fn binomial_power(top: usize, bottom: usize, k: &Int) -> Rational {
    if bottom > top {
        return Rational::zero();
    }
    let e = top - bottom + 1;
    rat_int(binomial(top as i64, bottom as i64)) * Rational::new(pow_int(k, e as u64), Int::from(e))
}

/// Closed form of `Psi_n^(m)` over the block rotations.
pub fn psi_spanning_hvx(n: u32, m: usize, w: &Word) -> Result<Rational> {
    check_word_args(n)?;
    let top = 2 * n as usize - 2;
    if m > top {
        return invalid(format!("m = {m} out of range for n = {n}"));
    }
    let ms = star(n, m);
    let sm = rat_int(parity(m));
    let mut total = Rational::zero();
    for (k, a) in w.cyclic_ts() {
        let f = f_coefficients(n, &a);
        let k = Int::from(k);
        for r in 0..=top {
            let rs = star(n, r);
            let weight = binomial_beta(r, ms) - binomial_beta(rs, m) - &sm * binomial_beta(r, m)
                + &sm * binomial_beta(rs, ms)
                - &sm * binomial_power(r, m, &k)
                + binomial_power(r, ms, &k);
            total += weight * rat_int(f[r].clone());
        }
    }
    Ok(total / rat_int(u_power(n, w)))
}

/// `u^(1-n) j_n sum_j sum_r xi_r f_r(A_j)`, the `G_n` part of the formula.
pub fn gn_contribution(n: u32, w: &Word) -> Result<Rational> {
    check_word_args(n)?;
    let xis = (0..=2 * n as usize - 2).map(|r| xi(n, r)).collect::<Result<Vec<_>>>()?;
    let mut total = Rational::zero();
    for (_, a) in w.cyclic_ts() {
        let f = f_coefficients(n, &a);
        for (x, fr) in xis.iter().zip(&f) {
            if !x.is_zero() {
                total += x * rat_int(fr.clone());
            }
        }
    }
    let j = rat_int(zeta_pair(n as usize)?.j);
    Ok(total * j / rat_int(u_power(n, w)))
}

/// `i_n Psi_n^(0) + (G_n part)` with the direct cyclic sum for `Psi_n^(0)`.
pub fn psi_via_gn(n: u32, w: &Word) -> Result<Rational> {
    let zero = psi_spanning_direct(n, 0, w)?;
    combine_with_gn(n, zero, w)
}

/// `i_n * spanning + (G_n part)`.
pub fn combine_with_gn(n: u32, spanning_zero: Rational, w: &Word) -> Result<Rational> {
    let i = rat_int(zeta_pair(n as usize)?.i);
    Ok(i * spanning_zero + gn_contribution(n, w)?)
}

/// Zagier's formula over the block rotations.
pub fn psi_zagier(n: u32, w: &Word) -> Result<Rational> {
    check_word_args(n)?;
    let two_n = 2 * n as usize;
    let z = bernoulli_over_index(two_n);
    let mut total = Rational::zero();
    for (k, a) in w.cyclic_ts() {
        let f = f_coefficients(n, &a);
        let k = Int::from(k);
        for r in 1..two_n {
            let weight = &z * Rational::new(pow_int(&k, r as u64), Int::from(r))
                - bernoulli_over_index(r) * bernoulli_over_index(two_n - r);
            total += weight * rat_int(f[r - 1].clone());
        }
    }
    let j = rat_int(zeta_pair(n as usize)?.j);
    Ok(total * j / rat_int(u_power(n, w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, is_integer};
    use crate::modular::{Form, Mat2};
    use crate::period::{g_polynomial, scaled_value_at_fixed_points};
    use proptest::prelude::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
        Mat2::from_i64(a, b, c, d).unwrap()
    }

    fn golden() -> Word {
        Word::from_tv(vec![(1, 1)]).unwrap()
    }

    #[test]
    fn f_small_weight() {
        let a = m(2, 1, 1, 1);
        assert_eq!(f_coefficients(2, &a), vec![int(-1), int(-1), int(1)]);
        assert_eq!(f_coefficients(1, &a), vec![int(1)]);
        // (n-1) c^(n-2) (d-a) at r = 2n-3
        let b = m(5, 7, 2, 3);
        let f = f_coefficients(4, &b);
        assert_eq!(f[0], int(-343));
        assert_eq!(f[5], int(3 * 4 * -2));
        assert!(f_coefficient(2, &b, 3).is_err());
    }

    fn small_matrix() -> impl Strategy<Value = Mat2> {
        prop::collection::vec((0u8..3, -3i64..=3), 1..5).prop_map(|steps| {
            steps.into_iter().fold(Mat2::identity(), |acc, (g, e)| {
                let gen = match g {
                    0 => Mat2::t(),
                    1 => Mat2::s(),
                    _ => Mat2::v(),
                };
                &acc * &gen.pow(e)
            })
        })
    }

    proptest! {
        #[test]
        fn f_transforms_under_s_and_t(a in small_matrix(), n in 1u32..=6, k in 0i64..=5) {
            let f = f_coefficients(n, &a);
            let fs = f_coefficients(n, &a.conjugate_by(&Mat2::s()));
            for r in 0..f.len() {
                prop_assert_eq!(&fs[r], &(&f[star(n, r)] * parity(r)));
            }
            let ft = f_coefficients(n, &a.conjugate_by(&Mat2::t_pow(k)));
            for r in 0..f.len() {
                let want: Int = (r..f.len())
                    .map(|mm| binomial(mm as i64, r as i64) * pow_int(&Int::from(k), (mm - r) as u64) * &f[mm])
                    .sum();
                prop_assert_eq!(&ft[r], &want);
            }
        }
    }

    #[test]
    fn definition_anchors() {
        assert_eq!(psi_definition(1, &Mat2::t()).unwrap(), rat(1, 1));
        assert_eq!(psi_definition(2, &m(2, 1, 1, 1)).unwrap(), rat(4, 1));
        for n in 1..=4 {
            assert!(psi_definition(n, &Mat2::identity()).unwrap().is_zero());
            assert!(psi_definition(n, &-Mat2::identity()).unwrap().is_zero());
        }
    }

    #[test]
    fn word_formula_anchors() {
        let w = golden();
        assert_eq!(psi_spanning_direct(2, 0, &w).unwrap(), rat(4, 1));
        assert_eq!(psi_spanning_hv(2, &w).unwrap(), rat(4, 1));
        assert_eq!(psi_spanning_hvx(2, 0, &w).unwrap(), rat(4, 1));
        assert_eq!(psi_via_gn(2, &w).unwrap(), rat(4, 1));
        assert_eq!(psi_zagier(2, &w).unwrap(), rat(4, 1));
        let same = Word::from_ts(vec![3]).unwrap();
        assert_eq!(psi_spanning_hv(2, &same).unwrap(), rat(4, 1));
        assert!(psi_zagier(1, &w).is_err());
    }

    #[test]
    fn spanning_cancels_at_middle_index() {
        for n in [3u32, 5] {
            let w = Word::from_ts(vec![3, 5, 2]).unwrap();
            assert!(psi_spanning_direct(n, n as usize - 1, &w).unwrap().is_zero());
        }
    }

    #[test]
    fn below_six_the_gn_part_vanishes() {
        let w = Word::from_ts(vec![4, 2, 3]).unwrap();
        for n in 2..=5 {
            assert!(gn_contribution(n, &w).unwrap().is_zero());
        }
        assert!(!gn_contribution(6, &w).unwrap().is_zero());
    }

    #[test]
    fn formulas_agree_on_small_words() {
        for ks in [vec![3], vec![5], vec![4, 2], vec![3, 3, 2], vec![2, 6, 2, 3], vec![7, 7]] {
            let w = Word::from_ts(ks).unwrap();
            let a = w.matrix(Form::Tv);
            let defs = psi_definition_upto(8, &a).unwrap();
            for n in 2..=8u32 {
                let d = &defs[n as usize - 1];
                assert!(is_integer(d), "n = {n}, {w}: {d}");
                assert_eq!(&psi_via_gn(n, &w).unwrap(), d, "gn, n = {n}, {w}");
                assert_eq!(&psi_zagier(n, &w).unwrap(), d, "zagier, n = {n}, {w}");
                let hv = psi_spanning_hv(n, &w).unwrap();
                assert_eq!(hv, psi_spanning_direct(n, 0, &w).unwrap());
                for mm in 0..=2 * n as usize - 2 {
                    assert_eq!(
                        psi_spanning_hvx(n, mm, &w).unwrap(),
                        psi_spanning_direct(n, mm, &w).unwrap(),
                        "n = {n}, m = {mm}, {w}"
                    );
                }
            }
        }
    }

    #[test]
    fn gn_at_fixed_points_matches_f_form() {
        let g = g_polynomial(6).unwrap().monomial;
        let j = rat_int(zeta_pair(6).unwrap().j);
        for a in [m(2, 1, 1, 1), m(7, -4, 2, -1), m(11, 30, 4, 11), m(3, -1, 1, 0)] {
            let f = f_coefficients(6, &a);
            let via_f: Rational = (0..=10).map(|r| xi(6, r).unwrap() * rat_int(f[r].clone())).sum::<Rational>() * &j;
            assert_eq!(scaled_value_at_fixed_points(&g, &a).unwrap(), via_f);
        }
    }

    #[test]
    fn elliptic_and_parabolic() {
        for n in 2..=6 {
            assert!(psi_definition(n, &Mat2::s()).unwrap().is_zero());
            assert!(psi_definition(n, &Mat2::u()).unwrap().is_zero());
            let i = rat_int(zeta_pair(n as usize).unwrap().i);
            for k in [-4i64, -1, 1, 3] {
                let q = psi_definition(n, &Mat2::t_pow(k)).unwrap() / &i;
                assert!(is_integer(&q), "n = {n}, k = {k}: {q}");
            }
        }
    }

    #[test]
    fn sign_and_conjugation() {
        let a = m(7, -4, 2, -1);
        let base = psi_definition_upto(4, &a).unwrap();
        assert_eq!(psi_definition_upto(4, &-a.clone()).unwrap(), base);
        for b in [Mat2::t(), Mat2::s(), m(2, 1, 1, 1), m(1, -3, 0, 1)] {
            assert_eq!(psi_definition_upto(4, &a.conjugate_by(&b)).unwrap(), base);
        }
    }
}
