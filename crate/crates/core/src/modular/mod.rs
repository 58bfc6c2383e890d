//! Integer matrices of determinant one and the word representatives of
//! hyperbolic conjugacy classes.

mod parse;
mod word;

pub use parse::{parse_input, Input};
pub use word::{reduce_hyperbolic, tv_word_of, Form, Letter, Reduction, Word};

use std::fmt;
use std::ops::{Mul, Neg};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{int, sign, Int, Rational};
use crate::error::{invalid, Result};

/// `(a b; c d)` with `ad - bc = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Mat2 {
    #[serde(with = "crate::json::int")]
    a: Int,
    #[serde(with = "crate::json::int")]
    b: Int,
    #[serde(with = "crate::json::int")]
    c: Int,
    #[serde(with = "crate::json::int")]
    d: Int,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Class {
    IdentityLike,
    Parabolic,
    Elliptic,
    Hyperbolic,
}

impl Mat2 {
    pub fn new(a: impl Into<Int>, b: impl Into<Int>, c: impl Into<Int>, d: impl Into<Int>) -> Result<Self> {
        let m = Mat2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        };
        if m.det() != Int::one() {
            return invalid(format!("determinant of {m} is {}, not 1", m.det()));
        }
        Ok(m)
    }

    fn raw(a: Int, b: Int, c: Int, d: Int) -> Self {
        let m = Mat2 { a, b, c, d };
        debug_assert!(m.det().is_one());
        m
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Mat2::new(a, b, c, d)
    }

    pub fn identity() -> Self {
        Mat2::raw(int(1), int(0), int(0), int(1))
    }

    pub fn t() -> Self {
        Mat2::raw(int(1), int(1), int(0), int(1))
    }

    pub fn s() -> Self {
        Mat2::raw(int(0), int(-1), int(1), int(0))
    }

    pub fn u() -> Self {
        Mat2::raw(int(1), int(-1), int(1), int(0))
    }

    pub fn v() -> Self {
        Mat2::raw(int(1), int(0), int(1), int(1))
    }

    /// `T^k`
    pub fn t_pow(k: impl Into<Int>) -> Self {
        Mat2::raw(int(1), k.into(), int(0), int(1))
    }

    /// `V^k`
    pub fn v_pow(k: impl Into<Int>) -> Self {
        Mat2::raw(int(1), int(0), k.into(), int(1))
    }

    pub fn a(&self) -> &Int {
        &self.a
    }
    pub fn b(&self) -> &Int {
        &self.b
    }
    pub fn c(&self) -> &Int {
        &self.c
    }
    pub fn d(&self) -> &Int {
        &self.d
    }

    pub fn det(&self) -> Int {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> Int {
        &self.a + &self.d
    }

    pub fn inverse(&self) -> Self {
        Mat2::raw(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Mat2::identity();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// `B^{-1} A B`
    pub fn conjugate_by(&self, b: &Mat2) -> Self {
        &(&b.inverse() * self) * b
    }

    pub fn is_plus_minus_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero()
    }

    /// `u(A) = gcd(b, c, d - a)`, with `u(±I) = 1`.
    pub fn u_of(&self) -> Int {
        let g = self.b.gcd(&self.c).gcd(&(&self.d - &self.a));
        if g.is_zero() {
            Int::one()
        } else {
            g
        }
    }

    /// `v(A) = sgn(a + d) c / u(A)`.
    pub fn v_of(&self) -> Int {
        Int::from(sign(&self.trace())) * &self.c / self.u_of()
    }

    pub fn classify(&self) -> Class {
        if self.is_plus_minus_identity() && self.a.abs().is_one() {
            return Class::IdentityLike;
        }
        let t = self.trace().abs();
        let two = int(2);
        if t > two {
            Class::Hyperbolic
        } else if t == two {
            Class::Parabolic
        } else {
            Class::Elliptic
        }
    }

    /// Sum and product of the fixed points: `((a - d)/c, -b/c)`.
    pub fn fixed_point_symmetrics(&self) -> Result<(Rational, Rational)> {
        if self.c.is_zero() {
            return invalid("fixed points need c != 0");
        }
        Ok((
            Rational::new(&self.a - &self.d, self.c.clone()),
            Rational::new(-&self.b, self.c.clone()),
        ))
    }

    /// Entrywise nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        !(self.a.is_negative() || self.b.is_negative() || self.c.is_negative() || self.d.is_negative())
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}

impl<'a> Mul<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;

    fn mul(self, o: &'a Mat2) -> Mat2 {
        Mat2::raw(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, o: Mat2) -> Mat2 {
        &self * &o
    }
}

impl Neg for &Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        Mat2::raw(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        -&self
    }
}
