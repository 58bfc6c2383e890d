use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::arith::{binomial, is_integer, rat_int, Rational};
use crate::json::RationalRepr;

/// Polynomial in `x1, x2` keyed by `(deg x1, deg x2)`; zero terms are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialPoly2 {
    n: u32,
    terms: BTreeMap<(u32, u32), Rational>,
}

impl MonomialPoly2 {
    pub fn zero(n: u32) -> Self {
        MonomialPoly2 {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Rational> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn add_scaled(&mut self, other: &MonomialPoly2, k: &Rational) {
        for (&(i, j), c) in &other.terms {
            self.add_term(i, j, &(c * k));
        }
    }

    pub fn times_monomial(&self, di: u32, dj: u32) -> MonomialPoly2 {
        MonomialPoly2 {
            n: self.n,
            terms: self.terms.iter().map(|(&(i, j), c)| ((i + di, j + dj), c.clone())).collect(),
        }
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(is_integer)
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(&(i, j), c)| self.coeff(j, i) == *c)
    }

    /// `(x1 x2)^(n-1) f(1/x1, 1/x2) = f`.
    pub fn is_reciprocal(&self) -> bool {
        let top = self.n - 1;
        self.terms
            .iter()
            .all(|(&(i, j), c)| i <= top && j <= top && self.coeff(top - i, top - j) == *c)
    }

    /// `f(x1 + 1, x2 + 1)`
    pub fn shift_both(&self) -> MonomialPoly2 {
        let mut out = MonomialPoly2::zero(self.n);
        for (&(i, j), c) in &self.terms {
            for a in 0..=i {
                for b in 0..=j {
                    let w = binomial(i.into(), a.into()) * binomial(j.into(), b.into());
                    out.add_term(a, b, &(c * rat_int(w)));
                }
            }
        }
        out
    }

    /// `(x1 x2)^(n-1) f(-1/x1, -1/x2)`; needs every partial degree `<= n-1`.
    pub fn invert_both(&self) -> MonomialPoly2 {
        let top = self.n - 1;
        let mut out = MonomialPoly2::zero(self.n);
        for (&(i, j), c) in &self.terms {
            assert!(i <= top && j <= top, "partial degree above n - 1");
            let c = if (i + j) % 2 == 0 { c.clone() } else { -c };
            out.add_term(top - i, top - j, &c);
        }
        out
    }

    /// Evaluates at a point given as rationals.
    pub fn eval(&self, x1: &Rational, x2: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(i, j), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..i {
                t *= x1;
            }
            for _ in 0..j {
                t *= x2;
            }
            acc += t;
        }
        acc
    }

    fn format_coeff(c: &Rational) -> String {
        if c.denom().is_one() {
            c.numer().to_string()
        } else {
            format!("{}/{}", c.numer(), c.denom())
        }
    }
}

/// `"c * x1^i * x2^j + ..."` sorted by `(i, j)`, or `"0"`.
impl fmt::Display for MonomialPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| format!("{} * x1^{i} * x2^{j}", Self::format_coeff(c)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// JSON object `{"i,j": {"num": .., "den": ..}}`.
impl Serialize for MonomialPoly2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (&(i, j), c) in &self.terms {
            map.serialize_entry(&format!("{i},{j}"), &RationalRepr::from(c))?;
        }
        map.end()
    }
}
