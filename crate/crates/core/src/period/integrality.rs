use num_traits::Zero;
use serde::Serialize;

use super::MonomialPoly2;
use crate::arith::{
    bernoulli_over_index, binomial, int_valuation, is_integer, is_prime, pow_rat, rat, rat_int,
    zeta_pair, Int, Rational,
};
use crate::error::{invalid, Error, Result};
use crate::modular::Mat2;

/// Outcome of the two integrality tests for `G_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegralityReport {
    pub n: u32,
    /// Every monomial coefficient has denominator 1.
    pub monomial_integral: bool,
    /// Number of `(u, v, w)` triples evaluated.
    pub triples: usize,
    /// Triples whose term is not an integer.
    pub failures: Vec<(u32, u32, u32)>,
}

impl IntegralityReport {
    pub fn holds(&self) -> bool {
        self.monomial_integral && self.failures.is_empty()
    }

    pub fn consistent(&self) -> bool {
        self.monomial_integral == self.failures.is_empty()
    }
}

/// The term for one triple: with `x = B_2w/2w`, `y = B_{2n-2w}/(2n-2w)`,
/// `z = B_2n/2n`,
/// `j_n C(n-1,u) C(n-1,v) (z (x + y) - x y) + [w = 1]/2`.
pub fn integrality_term(n: u32, u: u32, v: u32, w: u32) -> Result<Rational> {
    let j = rat_int(zeta_pair(n as usize)?.j);
    let top = n as i64 - 1;
    let x = bernoulli_over_index(2 * w as usize);
    let y = bernoulli_over_index(2 * (n - w) as usize);
    let z = bernoulli_over_index(2 * n as usize);
    let bino = rat_int(binomial(top, u.into()) * binomial(top, v.into()));
    let half = if w == 1 { rat(1, 2) } else { Rational::zero() };
    Ok(j * bino * (z * (&x + &y) - x * y) + half)
}

/// Checks integrality of `G_n` on its monomial form and, independently,
/// through the per-triple terms over `1 <= w <= n/2`, `u + v = 2w - 1`.
pub fn check_g_integrality(n: u32) -> Result<IntegralityReport> {
    if n < 3 {
        return invalid(format!("the triple test needs n >= 3, got {n}"));
    }
    let g = super::g_polynomial(n)?;
    let mut failures = Vec::new();
    let mut triples = 0;
    for w in 1..=n / 2 {
        for u in 0..2 * w {
            let v = 2 * w - 1 - u;
            triples += 1;
            if !is_integer(&integrality_term(n, u, v, w)?) {
                failures.push((u, v, w));
            }
        }
    }
    Ok(IntegralityReport {
        n,
        monomial_integral: g.monomial.has_integer_coefficients(),
        triples,
        failures,
    })
}

/// The two lower bounds on `nu_p(C(n-1,u) C(n-1,v))` for a given `w`.
pub fn binomial_valuation_bounds(n: u32, w: u32, p: u64) -> Result<(Rational, Rational)> {
    let nu = |m: u64| int_valuation(&Int::from(m), p).map(|v| rat_int(v as i64));
    let (w64, n64) = (w as u64, n as u64);
    let first = nu(2 * w64)?;
    let second = nu(2 * n64 - 2 * w64)?;
    if p == 2 {
        Ok((first - rat_int((n64 - w64) as i64), second - rat_int(w64 as i64)))
    } else {
        let pm1 = p as i64 - 1;
        Ok((
            first + rat(2 - (2 * n64 as i64 - 2 * w64 as i64), pm1),
            second + rat(2 - 2 * w64 as i64, pm1),
        ))
    }
}

/// Whether `nu_p(C(n-1,u) C(n-1,v))` meets both lower bounds.
pub fn binomial_valuation_check(n: u32, u: u32, v: u32, w: u32, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    if n < 2 || w == 0 || w > n - 1 || u > n - 1 || v > n - 1 || u + v != 2 * w - 1 {
        return invalid(format!("inadmissible (n, u, v, w) = ({n}, {u}, {v}, {w})"));
    }
    let top = n as i64 - 1;
    let product = binomial(top, u.into()) * binomial(top, v.into());
    let nu = rat_int(int_valuation(&product, p)? as i64);
    let (lo1, lo2) = binomial_valuation_bounds(n, w, p)?;
    Ok(nu >= lo1 && nu >= lo2)
}

/// One term `coeff * e1^e1_exp * e2^e2_exp` with `e1 = x1 + x2`, `e2 = x1 x2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementaryTerm {
    #[serde(with = "crate::json::int")]
    pub coeff: Int,
    pub e1_exp: u32,
    pub e2_exp: u32,
}

/// `(x1 x2)^m (x1^l + x2^l) = sum_k (-1)^k (l/(l-k)) C(l-k, k) e1^(l-2k) e2^(m+k)`.
///
/// Each coefficient is certified integral through
/// `(l/(l-k)) C(l-k, k) = C(l-k, k) + C(l-k-1, k-1)`.
pub fn power_to_elementary(m: u32, l: u32) -> Result<Vec<ElementaryTerm>> {
    if l == 0 {
        return invalid("power_to_elementary needs l >= 1");
    }
    let l64 = l as i64;
    let mut out = Vec::new();
    for k in 0..=l / 2 {
        let k64 = k as i64;
        let c = binomial(l64 - k64, k64);
        let magnitude = if k == 0 {
            Int::from(1)
        } else {
            let scaled = &c * l64;
            let den = Int::from(l64 - k64);
            let via_sum = &c + binomial(l64 - k64 - 1, k64 - 1);
            if &scaled % &den != Int::zero() || &scaled / &den != via_sum {
                return Err(Error::Inconsistent(format!(
                    "power-sum coefficient l = {l}, k = {k} is not integral"
                )));
            }
            via_sum
        };
        out.push(ElementaryTerm {
            coeff: if k % 2 == 0 { magnitude } else { -magnitude },
            e1_exp: l - 2 * k,
            e2_exp: m + k,
        });
    }
    Ok(out)
}

/// Rewrites a symmetric polynomial in `e1, e2`.
pub fn symmetric_to_elementary(p: &MonomialPoly2) -> Result<Vec<(Rational, u32, u32)>> {
    if !p.is_symmetric() {
        return invalid("polynomial is not symmetric");
    }
    let mut out = Vec::new();
    for (&(i, j), c) in p.terms() {
        if i < j {
            continue;
        }
        if i == j {
            out.push((c.clone(), 0, j));
            continue;
        }
        for t in power_to_elementary(j, i - j)? {
            out.push((c * rat_int(t.coeff), t.e1_exp, t.e2_exp));
        }
    }
    Ok(out)
}

/// `c^(n-1) P(w, w')` at the fixed points `w, w'` of `A`, using only the
/// rational symmetric functions `w + w' = (a-d)/c`, `w w' = -b/c`.
pub fn scaled_value_at_fixed_points(p: &MonomialPoly2, a: &Mat2) -> Result<Rational> {
    let (e1, e2) = a.fixed_point_symmetrics()?;
    let mut acc = Rational::zero();
    for (coeff, i, j) in symmetric_to_elementary(p)? {
        acc += coeff * pow_rat(&e1, i as u64) * pow_rat(&e2, j as u64);
    }
    let scale = pow_rat(&rat_int(a.c().clone()), (p.n() - 1) as u64);
    Ok(acc * scale)
}
