//! Periodized Bernoulli polynomials, general Dedekind sums
//! `S_{r,s}(a, c) = sum_{h mod |c|} B~_r(ah/c) B~_s(h/c)`, and the terminating
//! hypergeometric polynomial `F_{r,s}`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{
    bernoulli, binomial, denominator_lcm, factorial, frac, is_integer, pow_int, rat, rat_int, Int,
    Rational,
};
use crate::error::{invalid, Error, Result};

/// `B_m(t) = sum_k C(m, k) B_k t^(m-k)`.
pub fn bernoulli_polynomial(m: usize, t: &Rational) -> Rational {
    let mut acc = Rational::zero();
    let mut power = Rational::one();
    // accumulate from k = m down to 0 so that t^(m-k) grows with the loop
    for k in (0..=m).rev() {
        let b = bernoulli(k);
        if !b.is_zero() {
            acc += b * rat_int(binomial(m as i64, k as i64)) * &power;
        }
        power *= t;
    }
    acc
}

/// `B~_m(x) = B_m(x - floor x)`, with `B~_1` vanishing at integers.
pub fn periodized_bernoulli(m: usize, x: &Rational) -> Rational {
    if m == 1 && is_integer(x) {
        return Rational::zero();
    }
    bernoulli_polynomial(m, &frac(x))
}

/// Values `scale * N^m * B~_m(t / N)` for `t = 0..N`, all integers.
///
/// `scale` is the lcm of the denominators of `B_0..B_max`, shared by every row
/// so the Dedekind sum of any pair is one integer sum over a common
/// denominator.
#[derive(Debug, Clone)]
pub struct ScaledBernoulliTable {
    modulus: u64,
    scale: Int,
    rows: Vec<Vec<Int>>,
}

impl ScaledBernoulliTable {
    pub fn new(modulus: u64, max_index: usize) -> Self {
        assert!(modulus >= 1);
        let bs: Vec<Rational> = (0..=max_index).map(bernoulli).collect();
        let scale = denominator_lcm(&bs);
        let scaled_b: Vec<Int> = bs.iter().map(|b| (b * rat_int(scale.clone())).to_integer()).collect();
        let n = Int::from(modulus);
        let n_pows: Vec<Int> = (0..=max_index).map(|k| pow_int(&n, k as u64)).collect();
        let half = modulus / 2;
        let mut rows = Vec::with_capacity(max_index + 1);
        for m in 0..=max_index {
            let coeffs: Vec<Int> = (0..=m)
                .map(|k| binomial(m as i64, k as i64) * &scaled_b[k] * &n_pows[k])
                .collect();
            let mut row = vec![Int::zero(); modulus as usize];
            for t in 0..=half {
                let tt = Int::from(t);
                // Horner in t over k = 0..m of coeffs[k] t^(m-k)
                let mut v = Int::zero();
                for c in &coeffs {
                    v = v * &tt + c;
                }
                row[t as usize] = v;
            }
            // B_m(1 - x) = (-1)^m B_m(x)
            for t in (half + 1)..modulus {
                let mirror = row[(modulus - t) as usize].clone();
                row[t as usize] = if m % 2 == 0 { mirror } else { -mirror };
            }
            if m == 1 {
                row[0] = Int::zero();
            }
            rows.push(row);
        }
        ScaledBernoulliTable { modulus, scale, rows }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn max_index(&self) -> usize {
        self.rows.len() - 1
    }

    /// `scale * N^m * B~_m(t / N)` for `0 <= t < N`.
    pub fn scaled(&self, m: usize, t: u64) -> &Int {
        &self.rows[m][t as usize]
    }

    /// `B~_m(t / N)` as a rational.
    pub fn value(&self, m: usize, t: u64) -> Rational {
        Rational::new(
            self.scaled(m, t).clone(),
            &self.scale * pow_int(&Int::from(self.modulus), m as u64),
        )
    }

    /// `S_{r,s}(a, c)` for `|c|` equal to this table's modulus.
    pub fn dedekind_sum(&self, r: usize, s: usize, a: &Int, c: &Int) -> Rational {
        assert_eq!(c.abs(), Int::from(self.modulus), "table built for another modulus");
        let n = self.modulus;
        let nn = Int::from(n);
        // h/c = (h * sgn c)/N, so reduce sgn(c) * a and sgn(c) mod N once
        let signed_a = if c.is_negative() { -a } else { a.clone() };
        let step_a: u64 = signed_a
            .mod_floor(&nn)
            .try_into()
            .expect("residue below a u64 modulus");
        let step_h: u64 = if c.is_negative() { n - 1 } else { 1 } % n.max(1);
        let mut acc = Int::zero();
        let (mut xa, mut xh) = (0u64, 0u64);
        for _ in 0..n {
            acc += self.scaled(r, xa) * self.scaled(s, xh);
            xa = ((xa as u128 + step_a as u128) % n as u128) as u64;
            xh = ((xh as u128 + step_h as u128) % n as u128) as u64;
        }
        let den = &self.scale * &self.scale * pow_int(&nn, (r + s) as u64);
        Rational::new(acc, den)
    }
}

fn modulus_of(c: &Int) -> Result<u64> {
    if c.is_zero() {
        return invalid("Dedekind sum needs c != 0");
    }
    c.abs()
        .try_into()
        .map_err(|_| Error::InvalidArgument(format!("|c| = {} is too large to sum over", c.abs())))
}

/// `S_{r,s}(a, c)`.
pub fn dedekind_sum(r: usize, s: usize, a: &Int, c: &Int) -> Result<Rational> {
    let n = modulus_of(c)?;
    let table = ScaledBernoulliTable::new(n, r.max(s));
    Ok(table.dedekind_sum(r, s, a, c))
}

/// `F_{r,s}(z) = (r+s-2)!/(r! s!) * 2F1(1-r, 1-s; (3-r-s)/2; (z+2)/4)`.
///
/// The series is summed term by term until an upper Pochhammer factor
/// vanishes; `j` never needs to exceed `r + s`.
pub fn hypergeom_f(r: usize, s: usize, z: &Rational) -> Result<Rational> {
    if r + s < 2 {
        return invalid(format!("F_(r,s) needs r + s >= 2, got r = {r}, s = {s}"));
    }
    let prefactor = Rational::new(
        factorial((r + s - 2) as u64),
        factorial(r as u64) * factorial(s as u64),
    );
    let upper_r = rat_int(1 - r as i64);
    let upper_s = rat_int(1 - s as i64);
    let lower = rat(3 - (r + s) as i64, 2);
    let w = (z + rat(2, 1)) / rat(4, 1);

    let mut sum = Rational::zero();
    let mut term = Rational::one();
    for j in 0..=(r + s) {
        sum += &term;
        let jj = rat_int(j as i64);
        let numer = (&upper_r + &jj) * (&upper_s + &jj);
        if numer.is_zero() {
            return Ok(prefactor * sum);
        }
        let denom = (&lower + &jj) * (&jj + rat(1, 1));
        if denom.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "F_({r},{s}): lower parameter reaches zero before the series terminates"
            )));
        }
        term = term * numer / denom * &w;
    }
    Err(Error::Inconsistent(format!(
        "F_({r},{s}) did not terminate within r + s terms"
    )))
}
