use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{
    combine_with_gn, psi_definition, psi_spanning_direct, psi_spanning_hv, psi_spanning_hvx,
    psi_via_gn, psi_zagier,
};
use crate::arith::{is_integer, rat_int, zeta_pair, Rational};
use crate::error::{invalid, Error, Result};
use crate::modular::{reduce_hyperbolic, Class, Form, Input, Mat2, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Definition,
    ViaGn,
    Zagier,
    SpanningHv,
    SpanningHvx,
}

impl Formula {
    pub const ALL: [Formula; 5] = [
        Formula::Definition,
        Formula::ViaGn,
        Formula::Zagier,
        Formula::SpanningHv,
        Formula::SpanningHvx,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Formula::Definition => "definition",
            Formula::ViaGn => "via-gn",
            Formula::Zagier => "zagier",
            Formula::SpanningHv => "spanning-hv",
            Formula::SpanningHvx => "spanning-hvx",
        }
    }

    fn needs_word(self) -> bool {
        self != Formula::Definition
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "definition" => Formula::Definition,
            "via-gn" | "gn" => Formula::ViaGn,
            "zagier" => Formula::Zagier,
            "spanning-hv" | "hv" => Formula::SpanningHv,
            "spanning-hvx" | "hvx" => Formula::SpanningHvx,
            _ => return Err(Error::Parse(format!("unknown formula {s:?}"))),
        })
    }
}

/// `Psi_n` of one input by each requested formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolReport {
    pub n: u32,
    pub matrix: Mat2,
    /// TV word of the class, for hyperbolic input.
    pub word: Option<String>,
    pub class: Class,
    #[serde(with = "crate::json::rational_map")]
    pub values: BTreeMap<String, Rational>,
    /// Formulas that could not be evaluated, with the reason.
    pub errors: BTreeMap<String, String>,
    /// Direct cyclic sum for the spanning symbol of index 0.
    #[serde(with = "crate::json::opt_rational")]
    pub spanning_zero: Option<Rational>,
    pub agreement: bool,
    pub is_integer: bool,
    #[serde(with = "crate::json::opt_rational")]
    pub value: Option<Rational>,
    /// `Psi_n / j_n`, the partial zeta value at `1 - n`.
    #[serde(with = "crate::json::opt_rational")]
    pub zeta_ratio: Option<Rational>,
}

impl SymbolReport {
    /// Every formula evaluated, all values equal, and the value integral.
    pub fn ok(&self) -> bool {
        self.errors.is_empty() && self.agreement && self.is_integer
    }
}

fn word_value(f: Formula, n: u32, w: &Word) -> Result<Rational> {
    match f {
        Formula::Definition => unreachable!("not a word formula"),
        Formula::ViaGn => psi_via_gn(n, w),
        Formula::Zagier => psi_zagier(n, w),
        Formula::SpanningHv => combine_with_gn(n, psi_spanning_hv(n, w)?, w),
        Formula::SpanningHvx => combine_with_gn(n, psi_spanning_hvx(n, 0, w)?, w),
    }
}

/// Evaluates the requested formulas (all of them when `formulas` is empty).
///
/// Word formulas are skipped for `n = 1` and for non-hyperbolic input.
pub fn symbol_report(n: u32, input: &Input, formulas: &[Formula]) -> Result<SymbolReport> {
    if n == 0 {
        return invalid("n must be positive");
    }
    let wanted: Vec<Formula> = if formulas.is_empty() {
        Formula::ALL.to_vec()
    } else {
        formulas.to_vec()
    };
    let (matrix, word) = match input {
        Input::Matrix(a) => {
            let w = if a.classify() == Class::Hyperbolic {
                Some(reduce_hyperbolic(a)?.word)
            } else {
                None
            };
            (a.clone(), w)
        }
        Input::Word(w) => (w.matrix(Form::Tv), Some(w.clone())),
    };
    let class = matrix.classify();

    let mut values = BTreeMap::new();
    let mut errors = BTreeMap::new();
    let mut record = |f: Formula, r: Result<Rational>| match r {
        Ok(v) => {
            values.insert(f.name().to_string(), v);
        }
        Err(e) => {
            errors.insert(f.name().to_string(), e.to_string());
        }
    };
    for &f in &wanted {
        if !f.needs_word() {
            record(f, psi_definition(n, &matrix));
            continue;
        }
        match (&word, n) {
            (Some(w), n) if n >= 2 => record(f, word_value(f, n, w)),
            _ => {}
        }
    }
    let spanning_zero = match (&word, n) {
        (Some(w), n) if n >= 2 => psi_spanning_direct(n, 0, w).ok(),
        _ => None,
    };

    let mut distinct = values.values();
    let first = distinct.next().cloned();
    let agreement = values.values().all(|v| Some(v) == first.as_ref());
    let value = if agreement { first } else { None };
    let is_integer = value.as_ref().is_some_and(is_integer);
    let j = rat_int(zeta_pair(n as usize)?.j);
    let zeta_ratio = value.as_ref().map(|v| v / &j);
    Ok(SymbolReport {
        n,
        matrix,
        word: word.map(|w| w.to_string()),
        class,
        values,
        errors,
        spanning_zero,
        agreement,
        is_integer,
        value,
        zeta_ratio,
    })
}
