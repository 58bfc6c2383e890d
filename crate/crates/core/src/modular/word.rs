use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{Class, Mat2};
use crate::arith::Int;
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Letter {
    T,
    V,
}

impl Letter {
    fn matrix(self) -> Mat2 {
        match self {
            Letter::T => Mat2::t(),
            Letter::V => Mat2::v(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    /// `T^{n_1} V^{m_1} ... T^{n_r} V^{m_r}`
    Tv,
    /// `T^{k_1} S ... T^{k_q} S`
    Ts,
}

/// A hyperbolic conjugacy-class representative, held in both word forms.
///
/// The two forms are aligned so that `T * tv_matrix * T^{-1} == ts_matrix`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Word {
    tv: Vec<(u64, u64)>,
    ts: Vec<u64>,
}

fn tv_to_ts(tv: &[(u64, u64)]) -> Vec<u64> {
    let mut ts = Vec::new();
    for &(n, m) in tv {
        ts.push(n + 2);
        ts.extend(std::iter::repeat_n(2, (m - 1) as usize));
    }
    ts
}

impl Word {
    pub fn from_tv(pairs: Vec<(u64, u64)>) -> Result<Self> {
        if pairs.is_empty() {
            return invalid("empty word is not hyperbolic");
        }
        if pairs.iter().any(|&(n, m)| n == 0 || m == 0) {
            return invalid("TV-word exponents must be positive");
        }
        let ts = tv_to_ts(&pairs);
        Ok(Word { tv: pairs, ts })
    }

    /// Builds the word from `T^{k_1} S ... T^{k_q} S`. The block list is
    /// rotated to start at the first `k_i >= 3` so the TV form begins with `T`.
    pub fn from_ts(ks: Vec<u64>) -> Result<Self> {
        if ks.is_empty() {
            return invalid("empty word is not hyperbolic");
        }
        if ks.iter().any(|&k| k < 2) {
            return invalid("T^k S exponents must be at least 2");
        }
        let start = ks
            .iter()
            .position(|&k| k >= 3)
            .ok_or_else(|| Error::InvalidArgument("all exponents equal 2: parabolic".into()))?;
        let ts: Vec<u64> = ks[start..].iter().chain(&ks[..start]).copied().collect();
        let mut tv: Vec<(u64, u64)> = Vec::new();
        for &k in &ts {
            if k > 2 {
                tv.push((k - 2, 1));
            } else {
                tv.last_mut().expect("starts with k >= 3").1 += 1;
            }
        }
        debug_assert_eq!(tv_to_ts(&tv), ts);
        Ok(Word { tv, ts })
    }

    pub fn tv_exponents(&self) -> &[(u64, u64)] {
        &self.tv
    }

    pub fn ts_exponents(&self) -> &[u64] {
        &self.ts
    }

    /// Total number of `T` and `V` letters.
    pub fn letter_count(&self) -> u64 {
        self.tv.iter().map(|&(n, m)| n + m).sum()
    }

    pub fn block_count(&self) -> usize {
        self.ts.len()
    }

    pub fn matrix(&self, form: Form) -> Mat2 {
        match form {
            Form::Tv => self.tv.iter().fold(Mat2::identity(), |acc, &(n, m)| {
                &(&acc * &Mat2::t_pow(n)) * &Mat2::v_pow(m)
            }),
            Form::Ts => self
                .ts
                .iter()
                .fold(Mat2::identity(), |acc, &k| &acc * &ts_block(k)),
        }
    }

    /// The word rotated to the lexicographically smallest rotation of its
    /// `(n_i, m_i)` sequence.
    pub fn canonical(&self) -> Word {
        let shift = least_rotation(&self.tv);
        let tv: Vec<(u64, u64)> = self.tv[shift..].iter().chain(&self.tv[..shift]).copied().collect();
        Word::from_tv(tv).expect("rotation of a valid word")
    }

    fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.tv.iter().flat_map(|&(n, m)| {
            std::iter::repeat_n(Letter::T, n as usize)
                .chain(std::iter::repeat_n(Letter::V, m as usize))
        })
    }

    /// The `p` single-letter rotations of the TV form:
    /// `A~_1 = A`, `A~_{j+1} = L_j^{-1} A~_j L_j`.
    pub fn cyclic_tv(&self) -> Vec<Mat2> {
        let mut current = self.matrix(Form::Tv);
        let mut out = Vec::with_capacity(self.letter_count() as usize);
        for letter in self.letters() {
            let next = current.conjugate_by(&letter.matrix());
            out.push(current);
            current = next;
        }
        debug_assert_eq!(current, self.matrix(Form::Tv));
        out
    }

    /// The `q` block rotations of the TS form, each paired with the exponent
    /// `k_j` of its leading block:
    /// `A_1 = A`, `A_{j+1} = (T^{k_j} S)^{-1} A_j (T^{k_j} S)`.
    pub fn cyclic_ts(&self) -> Vec<(u64, Mat2)> {
        let mut current = self.matrix(Form::Ts);
        let mut out = Vec::with_capacity(self.ts.len());
        for &k in &self.ts {
            let next = current.conjugate_by(&ts_block(k));
            out.push((k, current));
            current = next;
        }
        debug_assert_eq!(current, self.matrix(Form::Ts));
        out
    }
}

fn ts_block(k: u64) -> Mat2 {
    &Mat2::t_pow(k) * &Mat2::s()
}

fn least_rotation<T: Ord>(xs: &[T]) -> usize {
    let n = xs.len();
    (0..n)
        .min_by(|&i, &j| {
            let a = xs[i..].iter().chain(&xs[..i]);
            let b = xs[j..].iter().chain(&xs[..j]);
            a.cmp(b)
        })
        .unwrap_or(0)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .tv
            .iter()
            .map(|(n, m)| format!("T^{n} V^{m}"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Result of reducing a hyperbolic matrix to a TV word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub word: Word,
    /// `X` with `word.matrix(Tv) == X^{-1} (sign * A) X`.
    pub conjugator: Mat2,
    /// True when `-A` (rather than `A`) was conjugated to the word.
    pub negated: bool,
}

/// Floors of the two real roots of `C z^2 + B z + A0` with discriminant `D`
/// (not a square), returned as `(floor(lower), floor(upper))`.
fn root_floors(c: &Int, b: &Int, disc: &Int) -> (Int, Int) {
    let s = disc.sqrt();
    let (mut x, mut y) = (-b, c * Int::from(2));
    if y.is_negative() {
        x = -x;
        y = -y;
    }
    // roots are (x ± sqrt(D)) / y with y > 0
    let hi = (&x + &s).div_floor(&y);
    let lo = (&x - &s - Int::from(1)).div_floor(&y);
    (lo, hi)
}

fn to_u64(k: &Int) -> Result<u64> {
    k.to_u64()
        .ok_or_else(|| Error::InvalidArgument(format!("exponent {k} does not fit in 64 bits")))
}

/// Conjugates a hyperbolic matrix (up to sign) to a positive TV word.
///
/// 1. Negate if the trace is negative.
/// 2. Move the two fixed points apart with `T^k` and `S` conjugations until
///    an integer separates them; shift that integer to zero. The matrix then
///    has `b, c` of one sign, and one more `S` makes all entries positive.
/// 3. Peel maximal `T^k` / `V^k` runs from the left.
/// 4. Rotate so the word starts with `T`, ends with `V`, and is the least
///    rotation. Every step is a conjugation and the conjugator is tracked.
pub fn reduce_hyperbolic(a: &Mat2) -> Result<Reduction> {
    if a.classify() != Class::Hyperbolic {
        return Err(Error::NotHyperbolic {
            trace: a.trace().to_string(),
        });
    }
    let negated = a.trace().is_negative();
    let target = if negated { -a } else { a.clone() };
    let disc = target.trace() * target.trace() - Int::from(4);

    let mut m = target.clone();
    let mut x = Mat2::identity();
    let conj = |m: &mut Mat2, x: &mut Mat2, g: Mat2| {
        *m = m.conjugate_by(&g);
        *x = &*x * &g;
    };

    let budget = 64 + 4 * disc.bits() as usize;
    let mut steps = 0;
    while !(m.c().is_positive() && m.b().is_positive()) {
        steps += 1;
        if steps > budget {
            return Err(Error::Inconsistent(format!("reduction of {a} did not terminate")));
        }
        let (lo, hi) = root_floors(m.c(), &(m.d() - m.a()), &disc);
        if lo < hi {
            conj(&mut m, &mut x, Mat2::t_pow(hi));
            if m.c().is_negative() {
                conj(&mut m, &mut x, Mat2::s());
            }
        } else {
            conj(&mut m, &mut x, Mat2::t_pow(lo));
            conj(&mut m, &mut x, Mat2::s());
        }
    }
    debug_assert!(m.is_nonnegative());

    let mut runs: Vec<(Letter, Int)> = Vec::new();
    let mut rest = m.clone();
    while rest != Mat2::identity() {
        let (a_, b_, c_, d_) = (rest.a(), rest.b(), rest.c(), rest.d());
        let quota = |num: &Int, den: &Int| if den.is_zero() { None } else { Some(num / den) };
        if a_ >= c_ && b_ >= d_ {
            let k = [quota(a_, c_), quota(b_, d_)].into_iter().flatten().min().expect("det 1");
            rest = &Mat2::t_pow(-&k) * &rest;
            runs.push((Letter::T, k));
        } else if c_ >= a_ && d_ >= b_ {
            let k = [quota(c_, a_), quota(d_, b_)].into_iter().flatten().min().expect("det 1");
            rest = &Mat2::v_pow(-&k) * &rest;
            runs.push((Letter::V, k));
        } else {
            return Err(Error::Inconsistent(format!("{rest} is not a positive word")));
        }
    }

    let run_matrix = |l: Letter, k: &Int| match l {
        Letter::T => Mat2::t_pow(k.clone()),
        Letter::V => Mat2::v_pow(k.clone()),
    };
    // cyclic rotation, merging runs of equal letters that become adjacent
    if runs.first().map(|r| r.0) == Some(Letter::V) {
        let (l, k) = runs.remove(0);
        x = &x * &run_matrix(l, &k);
        match runs.last_mut() {
            Some(last) if last.0 == l => last.1 += k,
            _ => runs.push((l, k)),
        }
    }
    if runs.len() > 1 && runs.last().map(|r| r.0) == Some(Letter::T) {
        let (l, k) = runs.pop().expect("nonempty");
        x = &x * &run_matrix(l, &(-&k));
        runs[0].1 += k;
    }
    if runs.len() < 2 || runs.len() % 2 == 1 {
        return Err(Error::Inconsistent(format!("{a} reduced to a non-alternating word")));
    }
    let mut tv = Vec::with_capacity(runs.len() / 2);
    for pair in runs.chunks(2) {
        tv.push((to_u64(&pair[0].1)?, to_u64(&pair[1].1)?));
    }
    let word = Word::from_tv(tv)?;

    let shift = least_rotation(&word.tv);
    for &(n, mm) in &word.tv[..shift] {
        x = &(&x * &Mat2::t_pow(n)) * &Mat2::v_pow(mm);
    }
    let word = word.canonical();

    if word.matrix(Form::Tv) != target.conjugate_by(&x) {
        return Err(Error::Inconsistent(format!("conjugator check failed for {a}")));
    }
    Ok(Reduction {
        word,
        conjugator: x,
        negated,
    })
}

/// Canonical TV word of the conjugacy class of `±A`.
pub fn tv_word_of(a: &Mat2) -> Result<Word> {
    reduce_hyperbolic(a).map(|r| r.word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
        Mat2::from_i64(a, b, c, d).unwrap()
    }

    #[test]
    fn golden_class() {
        let w = tv_word_of(&m(2, 1, 1, 1)).unwrap();
        assert_eq!(w.tv_exponents(), &[(1, 1)]);
        assert_eq!(w.ts_exponents(), &[3]);
        assert_eq!(w.matrix(Form::Ts), m(3, -1, 1, 0));
    }

    #[test]
    fn round_trips() {
        for tv in [vec![(2, 3)], vec![(1, 1), (1, 1)], vec![(1, 2), (3, 1), (1, 1)]] {
            let w = Word::from_tv(tv).unwrap();
            let back = tv_word_of(&w.matrix(Form::Tv)).unwrap();
            assert_eq!(back, w.canonical());
        }
        let w = tv_word_of(&Word::from_tv(vec![(1, 1), (1, 1)]).unwrap().matrix(Form::Tv)).unwrap();
        assert_eq!(w.tv_exponents(), &[(1, 1), (1, 1)]);
    }

    #[test]
    fn word_matrices() {
        let w = Word::from_tv(vec![(1, 1)]).unwrap();
        assert_eq!(w.matrix(Form::Tv), m(2, 1, 1, 1));
        let w = Word::from_ts(vec![3]).unwrap();
        assert_eq!(w.matrix(Form::Ts), m(3, -1, 1, 0));
        assert!(Word::from_tv(vec![]).is_err());
        assert!(Word::from_ts(vec![]).is_err());
        assert!(Word::from_ts(vec![2, 2]).is_err());
        assert!(Word::from_ts(vec![1, 3]).is_err());
        assert!(Word::from_tv(vec![(0, 1)]).is_err());
    }

    #[test]
    fn ts_rotation_aligns_forms() {
        let w = Word::from_ts(vec![2, 4, 2, 3]).unwrap();
        assert_eq!(w.ts_exponents(), &[4, 2, 3, 2]);
        assert_eq!(w.tv_exponents(), &[(2, 2), (1, 2)]);
        let t = Mat2::t();
        assert_eq!(&(&t * &w.matrix(Form::Tv)) * &t.inverse(), w.matrix(Form::Ts));
    }

    #[test]
    fn cyclic_permutations() {
        let w = Word::from_tv(vec![(1, 1)]).unwrap();
        assert_eq!(w.cyclic_tv(), vec![m(2, 1, 1, 1), m(1, 1, 1, 2)]);
        let w = Word::from_ts(vec![3]).unwrap();
        assert_eq!(w.cyclic_ts(), vec![(3, m(3, -1, 1, 0))]);
        let w = Word::from_tv(vec![(2, 3)]).unwrap();
        assert_eq!(w.cyclic_tv().len(), 5);
    }

    #[test]
    fn rejects_non_hyperbolic() {
        for a in [Mat2::t(), Mat2::s(), Mat2::identity(), -Mat2::t_pow(3), Mat2::u()] {
            assert!(matches!(tv_word_of(&a), Err(Error::NotHyperbolic { .. })));
        }
    }

    #[test]
    fn negative_trace_and_awkward_signs() {
        let a = -m(2, 1, 1, 1);
        let r = reduce_hyperbolic(&a).unwrap();
        assert!(r.negated);
        assert_eq!(r.word.tv_exponents(), &[(1, 1)]);
        // entries of mixed sign, fixed points both in (0, 1)-type windows
        for a in [m(7, -4, 2, -1), m(-8, 3, -3, 1), m(11, 30, 4, 11), m(1, -5, -1, 6)] {
            let r = reduce_hyperbolic(&a).unwrap();
            let sgn = if r.negated { -&a } else { a.clone() };
            assert_eq!(r.word.matrix(Form::Tv), sgn.conjugate_by(&r.conjugator));
        }
    }

    fn word_strategy() -> impl Strategy<Value = Word> {
        prop::collection::vec(2u64..=7, 1..=5)
            .prop_filter("not all 2", |ks| ks.iter().any(|&k| k > 2))
            .prop_map(|ks| Word::from_ts(ks).unwrap())
    }

    fn conjugator() -> impl Strategy<Value = Mat2> {
        prop::collection::vec((0u8..2, -3i64..=3), 1..4).prop_map(|steps| {
            steps.into_iter().fold(Mat2::identity(), |acc, (g, e)| {
                let gen = if g == 0 { Mat2::t() } else { Mat2::s() };
                &acc * &gen.pow(e)
            })
        })
    }

    proptest! {
        #[test]
        fn reduction_is_a_class_invariant(w in word_strategy(), b in conjugator(), neg in any::<bool>()) {
            let a = w.matrix(Form::Tv).conjugate_by(&b);
            let a = if neg { -a } else { a };
            let r = reduce_hyperbolic(&a).unwrap();
            prop_assert_eq!(r.negated, neg);
            prop_assert_eq!(r.word, w.canonical());
        }

        #[test]
        fn forms_and_rotations_agree(w in word_strategy()) {
            let t = Mat2::t();
            prop_assert_eq!(&(&t * &w.matrix(Form::Tv)) * &t.inverse(), w.matrix(Form::Ts));
            prop_assert_eq!(w.letter_count(), w.ts_exponents().iter().map(|k| k - 1).sum::<u64>());
            let u = w.matrix(Form::Tv).u_of();
            prop_assert!(w.cyclic_tv().iter().all(|m| m.u_of() == u));
            prop_assert!(w.cyclic_ts().iter().all(|(_, m)| m.u_of() == u));
            prop_assert_eq!(w.matrix(Form::Tv).trace(), w.matrix(Form::Ts).trace());
        }
    }

    #[test]
    fn bulk_exponents() {
        let w = Word::from_tv(vec![(1000, 1), (1, 250)]).unwrap();
        assert_eq!(tv_word_of(&w.matrix(Form::Tv)).unwrap(), w.canonical());
    }
}
