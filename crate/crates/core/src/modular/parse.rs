//! Text formats for matrices and words:
//!
//! - matrix: `"a b c d"` (whitespace-separated integers, row-major)
//! - TV word: `"T^2 V^3 T^1 V^1"` (a bare `T` or `V` means exponent 1)
//! - TS word: `"ts: 3 4 2"`

use std::str::FromStr;

use super::{Mat2, Word};
use crate::arith::Int;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Matrix(Mat2),
    Word(Word),
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

impl FromStr for Mat2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries: Vec<Int> = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<Int>().map_err(|_| parse_err(format!("bad integer {t:?}"))))
            .collect::<Result<_>>()?;
        let [a, b, c, d]: [Int; 4] = entries
            .try_into()
            .map_err(|v: Vec<Int>| parse_err(format!("expected 4 entries, got {}", v.len())))?;
        Mat2::new(a, b, c, d).map_err(|e| parse_err(e.to_string()))
    }
}

fn parse_ts(body: &str) -> Result<Word> {
    let ks: Vec<u64> = body
        .split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|_| parse_err(format!("bad exponent {t:?}"))))
        .collect::<Result<_>>()?;
    Word::from_ts(ks).map_err(|e| parse_err(e.to_string()))
}

fn parse_tv(s: &str) -> Result<Word> {
    let mut letters: Vec<(char, u64)> = Vec::new();
    for token in s.split_whitespace() {
        let (letter, exp) = match token.split_once('^') {
            Some((l, e)) => (
                l,
                e.parse::<u64>()
                    .map_err(|_| parse_err(format!("bad exponent in {token:?}")))?,
            ),
            None => (token, 1),
        };
        let letter = match letter {
            "T" | "t" => 'T',
            "V" | "v" => 'V',
            _ => return Err(parse_err(format!("unknown letter in {token:?}"))),
        };
        if exp == 0 {
            return Err(parse_err(format!("zero exponent in {token:?}")));
        }
        letters.push((letter, exp));
    }
    if letters.is_empty() {
        return Err(parse_err("empty word"));
    }
    if letters.len() % 2 == 1 {
        return Err(parse_err("a TV word alternates T^n V^m pairs"));
    }
    let mut pairs = Vec::with_capacity(letters.len() / 2);
    for chunk in letters.chunks(2) {
        match (chunk[0], chunk[1]) {
            (('T', n), ('V', m)) => pairs.push((n, m)),
            _ => return Err(parse_err("a TV word alternates T^n V^m pairs, starting with T")),
        }
    }
    Word::from_tv(pairs).map_err(|e| parse_err(e.to_string()))
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.strip_prefix("ts:") {
            Some(body) => parse_ts(body),
            None => parse_tv(s),
        }
    }
}

/// Accepts either a matrix or a word.
pub fn parse_input(s: &str) -> Result<Input> {
    let t = s.trim();
    let looks_like_word = t.starts_with("ts:") || t.chars().any(|c| matches!(c, 'T' | 'V' | 't' | 'v'));
    if looks_like_word {
        t.parse::<Word>().map(Input::Word)
    } else {
        t.parse::<Mat2>().map(Input::Matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices() {
        assert_eq!("2 1 1 1".parse::<Mat2>().unwrap(), Mat2::from_i64(2, 1, 1, 1).unwrap());
        assert_eq!(" 0 -1  1 0 ".parse::<Mat2>().unwrap(), Mat2::s());
        assert!("1 1 1".parse::<Mat2>().is_err());
        assert!("1 1 1 1".parse::<Mat2>().is_err());
        assert!("1 x 0 1".parse::<Mat2>().is_err());
    }

    #[test]
    fn words() {
        let w: Word = "T^2 V^3 T^1 V^1".parse().unwrap();
        assert_eq!(w.tv_exponents(), &[(2, 3), (1, 1)]);
        let w: Word = "T V".parse().unwrap();
        assert_eq!(w.tv_exponents(), &[(1, 1)]);
        let w: Word = "ts: 3 4 2".parse().unwrap();
        assert_eq!(w.ts_exponents(), &[3, 4, 2]);
        assert!("V^2 T^1".parse::<Word>().is_err());
        assert!("T^2".parse::<Word>().is_err());
        assert!("ts: 2 2".parse::<Word>().is_err());
        assert!("T^0 V^1".parse::<Word>().is_err());
        assert!("".parse::<Word>().is_err());
    }

    #[test]
    fn either() {
        assert!(matches!(parse_input("1 0 0 1").unwrap(), Input::Matrix(_)));
        assert!(matches!(parse_input("T V").unwrap(), Input::Word(_)));
        assert!(matches!(parse_input("ts: 5").unwrap(), Input::Word(_)));
        assert!(matches!(parse_input("oops"), Err(Error::Parse(_))));
    }
}
