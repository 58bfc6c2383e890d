//! The space of two-variable polynomials spanned by the `Q_r` basis, its
//! slash actions, period-polynomial membership, and the polynomial `G_n`.

mod integrality;
mod monomial;

pub use integrality::{
    binomial_valuation_bounds, binomial_valuation_check, check_g_integrality, integrality_term,
    power_to_elementary, scaled_value_at_fixed_points, symmetric_to_elementary, ElementaryTerm,
    IntegralityReport,
};
pub use monomial::MonomialPoly2;

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{beta, binomial, rat_int, zeta_pair, Rational};
use crate::error::{invalid, Result};

/// Element `sum_r c_r Q_r` of the weight-`n` space, `r = 0..=2n-2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PnElement {
    n: u32,
    #[serde(with = "crate::json::rational_vec")]
    coeffs: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slash {
    T,
    S,
    U,
    U2,
}

fn dim(n: u32) -> usize {
    2 * n as usize - 1
}

fn star(n: u32, r: usize) -> usize {
    2 * n as usize - 2 - r
}

fn sign(r: usize) -> i64 {
    if r.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl PnElement {
    pub fn new(n: u32, coeffs: Vec<Rational>) -> Result<Self> {
        if n == 0 {
            return invalid("weight index n must be positive");
        }
        if coeffs.len() != dim(n) {
            return invalid(format!("expected {} coefficients, got {}", dim(n), coeffs.len()));
        }
        Ok(PnElement { n, coeffs })
    }

    pub fn zero(n: u32) -> Self {
        PnElement {
            n,
            coeffs: vec![Rational::zero(); dim(n)],
        }
    }

    /// The basis vector `Q_r`.
    pub fn basis(n: u32, r: usize) -> Result<Self> {
        let mut e = PnElement::zero(n);
        if r >= e.coeffs.len() {
            return invalid(format!("index {r} out of range for n = {n}"));
        }
        e.coeffs[r] = rat_int(1);
        Ok(e)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &PnElement) -> PnElement {
        assert_eq!(self.n, other.n);
        PnElement {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn to_monomial(&self) -> MonomialPoly2 {
        let mut out = MonomialPoly2::zero(self.n);
        for (r, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(&qr_monomials(self.n, r).expect("index in range"), c);
            }
        }
        out
    }

    /// Right action `f | g`.
    pub fn slash(&self, g: Slash) -> PnElement {
        let n = self.n;
        let d = dim(n);
        let c = &self.coeffs;
        let mut out = vec![Rational::zero(); d];
        match g {
            Slash::S => {
                for r in 0..d {
                    out[star(n, r)] = &c[r] * rat_int(sign(r));
                }
            }
            Slash::T => {
                for (l, slot) in out.iter_mut().enumerate() {
                    for (r, cr) in c.iter().enumerate().take(l + 1) {
                        let w = binomial(l as i64, r as i64) * sign(l + r);
                        *slot += cr * rat_int(w);
                    }
                }
            }
            Slash::U => {
                for (l, slot) in out.iter_mut().enumerate() {
                    for (r, cr) in c.iter().enumerate() {
                        let w = binomial(star(n, l) as i64, r as i64) * sign(r);
                        *slot += cr * rat_int(w);
                    }
                }
            }
            Slash::U2 => {
                for (l, slot) in out.iter_mut().enumerate() {
                    for (r, cr) in c.iter().enumerate() {
                        let w = binomial(l as i64, star(n, r) as i64) * sign(r);
                        *slot += cr * rat_int(w);
                    }
                }
            }
        }
        PnElement { n, coeffs: out }
    }
}

/// `Q_r = [z^r] ((z - x1)(z - x2))^(n-1)` in monomial form.
pub fn qr_monomials(n: u32, r: usize) -> Result<MonomialPoly2> {
    if n == 0 || r >= dim(n) {
        return invalid(format!("Q_{r} is not defined for n = {n}"));
    }
    let top = n as i64 - 1;
    let r = r as i64;
    let mut out = MonomialPoly2::zero(n);
    for u in 0.max(r - top)..=r.min(top) {
        let v = r - u;
        let coeff = binomial(top, u) * binomial(top, v) * sign(r as usize);
        // (x1 x2)^(n-1-r) x1^u x2^v
        let i = (top - r + u) as u32;
        let j = (top - r + v) as u32;
        out.add_term(i, j, &rat_int(coeff));
    }
    Ok(out)
}

/// Result of the two independent membership tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PeriodCheck {
    /// Coefficient conditions for `1 + S` and `1 + U + U^2`.
    pub by_conditions: bool,
    /// Applying the slash actions and summing.
    pub by_slash: bool,
}

impl PeriodCheck {
    pub fn holds(&self) -> bool {
        self.by_conditions && self.by_slash
    }

    pub fn consistent(&self) -> bool {
        self.by_conditions == self.by_slash
    }
}

fn conditions_hold(f: &PnElement) -> bool {
    let n = f.n;
    let d = dim(n);
    let c = &f.coeffs;
    let s_ok = (0..d).all(|r| (&c[star(n, r)] + &c[r] * rat_int(sign(r))).is_zero());
    let u_ok = (0..d).all(|l| {
        let mut acc = Rational::zero();
        for (r, cr) in c.iter().enumerate() {
            let delta = i64::from(r == l);
            let w = binomial(star(n, l) as i64, r as i64) + binomial(l as i64, star(n, r) as i64);
            acc += cr * rat_int(w * sign(r) + delta);
        }
        acc.is_zero()
    });
    s_ok && u_ok
}

fn slash_sums_vanish(f: &PnElement) -> bool {
    let one_s = f.add(&f.slash(Slash::S));
    let one_u_u2 = f.add(&f.slash(Slash::U)).add(&f.slash(Slash::U2));
    one_s.is_zero() && one_u_u2.is_zero()
}

/// Membership in the period-polynomial subspace, tested two ways.
pub fn is_period_polynomial(f: &PnElement) -> PeriodCheck {
    PeriodCheck {
        by_conditions: conditions_hold(f),
        by_slash: slash_sums_vanish(f),
    }
}

/// `xi_r`, zero at both ends and at even `r`.
pub fn xi(n: u32, r: usize) -> Result<Rational> {
    if n == 0 || r >= dim(n) {
        return invalid(format!("xi_{r} is not defined for n = {n}"));
    }
    let rs = star(n, r);
    if r == 0 || rs == 0 {
        return Ok(Rational::zero());
    }
    let top = beta(2 * n as usize - 1);
    let delta = i64::from(r == 1) + i64::from(rs == 1);
    let (br, brs) = (beta(r), beta(rs));
    Ok(top * (&br + &brs + Rational::new(delta.into(), (2 * n as i64 - 2).into())) - br * brs)
}

/// `G_n = j_n sum_r xi_r Q_r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GPolynomial {
    pub qr: PnElement,
    pub monomial: MonomialPoly2,
}

pub fn g_polynomial(n: u32) -> Result<GPolynomial> {
    if n == 0 {
        return invalid("G_n needs n >= 1");
    }
    let j = rat_int(zeta_pair(n as usize)?.j);
    let coeffs = (0..dim(n))
        .map(|r| xi(n, r).map(|x| x * &j))
        .collect::<Result<Vec<_>>>()?;
    let qr = PnElement::new(n, coeffs)?;
    let monomial = qr.to_monomial();
    Ok(GPolynomial { qr, monomial })
}
