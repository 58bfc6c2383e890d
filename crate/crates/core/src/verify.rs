//! Seeded verification sweeps over the library's invariants.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{
    bernoulli, bernoulli_over_index, beta, clarke_decompose, is_integer, kummer_defect,
    nielsen_check, power_sum, primes_up_to, rat_int, saalschutz_check, von_staudt_denominator,
    DEFAULT_KUMMER_CAP,
};
use crate::error::{Error, Result};
use crate::modular::{Form, Word};
use crate::period::{binomial_valuation_check, check_g_integrality, g_polynomial, is_period_polynomial};
use crate::symbols::{
    psi_definition_upto, psi_spanning_direct, psi_spanning_hv, psi_spanning_hvx, psi_via_gn,
    psi_zagier,
};

/// Failure messages kept per suite; counts are always exact.
const FAILURE_SAMPLE: usize = 20;

/// Largest weight for which the closed spanning-symbol forms are swept.
pub const SPANNING_N_MAX: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Bernoulli,
    Kummer,
    Period,
    Integrality,
    CrossFormula,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Bernoulli,
        Suite::Kummer,
        Suite::Period,
        Suite::Integrality,
        Suite::CrossFormula,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bernoulli => "bernoulli",
            Suite::Kummer => "kummer",
            Suite::Period => "period",
            Suite::Integrality => "integrality",
            Suite::CrossFormula => "cross-formula",
        }
    }

    /// Range bound used when the config leaves `n_max` unset.
    pub fn default_n_max(self) -> u32 {
        match self {
            Suite::Bernoulli => 300,
            Suite::Kummer => 60,
            Suite::Period => 40,
            Suite::Integrality => 60,
            Suite::CrossFormula => 8,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses a suite name; `all` expands to every suite.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    if s == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    let mut out = Vec::new();
    for name in s.split(',').map(str::trim) {
        let suite = Suite::ALL
            .iter()
            .find(|x| x.name() == name)
            .ok_or_else(|| Error::Parse(format!("unknown suite {name:?}")))?;
        if !out.contains(suite) {
            out.push(*suite);
        }
    }
    Ok(out)
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match parse_suites(s)?.as_slice() {
            [one] => Ok(*one),
            _ => Err(Error::Parse(format!("{s:?} names more than one suite"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    /// Upper end of the swept index range; each suite has its own default.
    pub n_max: Option<u32>,
    pub word_count: usize,
    /// Most `T^k S` blocks in a random word.
    pub max_q: usize,
    /// Largest block exponent in a random word.
    pub max_exponent: u64,
    pub seed: u64,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
    pub p_max: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n_max: None,
            word_count: 200,
            max_q: 5,
            max_exponent: 7,
            seed: 42,
            jobs: 0,
            p_max: 13,
        }
    }
}

impl SweepConfig {
    pub fn n_max_for(&self, suite: Suite) -> u32 {
        self.n_max.unwrap_or_else(|| suite.default_n_max())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub n_max: u32,
    pub passed: u64,
    pub failed: u64,
    /// Up to the first few failure descriptions, in sweep order.
    pub failures: Vec<String>,
}

impl SuiteSummary {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifySummary {
    pub schema: u32,
    pub config: SweepConfig,
    pub suites: Vec<SuiteSummary>,
}

impl VerifySummary {
    pub fn ok(&self) -> bool {
        self.suites.iter().all(SuiteSummary::ok)
    }
}

/// One checked property: `None` on success, otherwise a description.
type Outcome = Option<String>;

fn expect(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        None
    } else {
        Some(what())
    }
}

fn flatten(r: Result<Vec<Outcome>>, label: impl FnOnce() -> String) -> Vec<Outcome> {
    r.unwrap_or_else(|e| vec![Some(format!("{}: {e}", label()))])
}

fn summarize(suite: Suite, n_max: u32, outcomes: Vec<Outcome>) -> SuiteSummary {
    let total = outcomes.len() as u64;
    let failures: Vec<String> = outcomes.into_iter().flatten().collect();
    SuiteSummary {
        suite,
        n_max,
        passed: total - failures.len() as u64,
        failed: failures.len() as u64,
        failures: failures.into_iter().take(FAILURE_SAMPLE).collect(),
    }
}

/// Random hyperbolic words: `q` uniform in `[1, max_q]`, block exponents
/// uniform in `[2, max_exponent]`, redrawn when every exponent is 2.
pub fn random_words(count: usize, max_q: usize, max_exponent: u64, seed: u64) -> Result<Vec<Word>> {
    if max_q == 0 || max_exponent < 3 {
        return Err(Error::InvalidArgument(
            "random words need max_q >= 1 and max_exponent >= 3".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let q = rng.gen_range(1..=max_q);
        let ks: Vec<u64> = (0..q).map(|_| rng.gen_range(2..=max_exponent)).collect();
        if ks.iter().all(|&k| k == 2) {
            continue;
        }
        out.push(Word::from_ts(ks)?);
    }
    Ok(out)
}

fn bernoulli_suite(n_max: u32) -> Vec<Outcome> {
    let evens: Vec<u64> = (2..=n_max as u64).step_by(2).collect();
    let mut out: Vec<Outcome> = evens
        .par_iter()
        .flat_map_iter(|&n| {
            let staudt = flatten(
                von_staudt_denominator(n).map(|d| {
                    vec![expect(bernoulli_over_index(n as usize).denom() == &d, || {
                        format!("von Staudt denominator mismatch at n = {n}")
                    })]
                }),
                || format!("n = {n}"),
            );
            let clarke = flatten(
                clarke_decompose(n).and_then(|c| c.check()).map(|_| vec![None]),
                || format!("Clarke n = {n}"),
            );
            staudt.into_iter().chain(clarke)
        })
        .collect();

    let pairs: Vec<(usize, usize)> = (0..=40).flat_map(|k| (0..=40).map(move |m| (k, m))).collect();
    out.par_extend(pairs.par_iter().flat_map_iter(|&(k, m)| {
        [
            expect(saalschutz_check(k, m).is_zero(), || format!("Saalschutz residual at ({k}, {m})")),
            expect(nielsen_check(k, m).is_zero(), || format!("Nielsen residual at ({k}, {m})")),
        ]
    }));

    for r in 0..=10usize {
        let mut naive = rat_int(0);
        for k in 0..=50u64 {
            if k > 0 {
                naive += rat_int(num_bigint::BigInt::from(k).pow(r as u32));
            }
            out.push(expect(power_sum(r, k) == naive, || format!("power sum r = {r}, k = {k}")));
        }
    }
    for m in 1..=(n_max as usize / 2) {
        out.push(expect(beta(2 * m).is_zero(), || format!("beta({}) != 0", 2 * m)));
        out.push(expect(bernoulli(2 * m + 1).is_zero(), || format!("B_{} != 0", 2 * m + 1)));
    }
    out
}

fn kummer_suite(n_max: u32, p_max: u64) -> Vec<Outcome> {
    let mut cases = Vec::new();
    for p in primes_up_to(p_max) {
        for n in (2..=n_max as u64).step_by(2) {
            for m in (2..=n_max as u64).step_by(2) {
                if n.abs_diff(m) % (p - 1) == 0 {
                    cases.push((p, n, m));
                }
            }
        }
    }
    cases
        .par_iter()
        .map(|&(p, n, m)| match kummer_defect(p, n, m, DEFAULT_KUMMER_CAP) {
            Ok(k) => expect(k.holds(), || {
                format!("Kummer (p, n, m) = ({p}, {n}, {m}): valuation {:?} < N + 1 = {}", k.valuation, k.level + 1)
            }),
            Err(e) => Some(format!("Kummer ({p}, {n}, {m}): {e}")),
        })
        .collect()
}

fn period_suite(n_max: u32) -> Vec<Outcome> {
    (1..=n_max)
        .into_par_iter()
        .flat_map_iter(|n| {
            flatten(
                g_polynomial(n).map(|g| {
                    let check = is_period_polynomial(&g.qr);
                    let mono = &g.monomial;
                    vec![
                        expect(check.by_conditions, || format!("G_{n} fails the coefficient conditions")),
                        expect(check.by_slash, || format!("G_{n} fails the slash sums")),
                        expect(mono.is_symmetric() && mono.is_reciprocal(), || {
                            format!("G_{n} is not symmetric and reciprocal")
                        }),
                        expect(mono.terms().keys().all(|&(i, j)| (i + j) % 2 == 1), || {
                            format!("G_{n} has an even-degree term")
                        }),
                    ]
                }),
                || format!("G_{n}"),
            )
        })
        .collect()
}

fn integrality_suite(n_max: u32, p_max: u64) -> Vec<Outcome> {
    let mut out: Vec<Outcome> = (2..=n_max)
        .into_par_iter()
        .flat_map_iter(|n| {
            let mono = flatten(
                g_polynomial(n).map(|g| {
                    vec![expect(g.monomial.has_integer_coefficients(), || {
                        format!("G_{n} has a non-integral coefficient")
                    })]
                }),
                || format!("G_{n}"),
            );
            let triples = if n >= 3 {
                flatten(
                    check_g_integrality(n).map(|r| {
                        vec![
                            expect(r.failures.is_empty(), || format!("n = {n}: failing triples {:?}", r.failures)),
                            expect(r.consistent(), || format!("n = {n}: monomial and triple tests disagree")),
                        ]
                    }),
                    || format!("integrality n = {n}"),
                )
            } else {
                Vec::new()
            };
            mono.into_iter().chain(triples)
        })
        .collect();

    let primes = primes_up_to(p_max);
    out.par_extend((2..=n_max).into_par_iter().flat_map_iter(|n| {
        let mut local = Vec::new();
        for &p in &primes {
            for w in 1..n {
                for u in 0..2 * w {
                    let v = 2 * w - 1 - u;
                    if u > n - 1 || v > n - 1 {
                        continue;
                    }
                    local.push(match binomial_valuation_check(n, u, v, w, p) {
                        Ok(ok) => expect(ok, || format!("binomial bound (n, u, v, w, p) = ({n}, {u}, {v}, {w}, {p})")),
                        Err(e) => Some(e.to_string()),
                    });
                }
            }
        }
        local
    }));
    out
}

/// Checks one word: three-way agreement and integrality for `2..=n_max`,
/// plus the closed spanning-symbol forms up to [`SPANNING_N_MAX`].
pub fn check_word(w: &Word, n_max: u32) -> Vec<Outcome> {
    let a = w.matrix(Form::Tv);
    let defs = match psi_definition_upto(n_max, &a) {
        Ok(d) => d,
        Err(e) => return vec![Some(format!("{w}: definition: {e}"))],
    };
    let mut out = Vec::new();
    for n in 2..=n_max {
        let def = &defs[n as usize - 1];
        out.push(expect(is_integer(def), || format!("{w}, n = {n}: definition gives {def}")));
        for (name, value) in [("via-gn", psi_via_gn(n, w)), ("zagier", psi_zagier(n, w))] {
            out.push(match value {
                Ok(v) => expect(&v == def, || format!("{w}, n = {n}: {name} {v} != definition {def}")),
                Err(e) => Some(format!("{w}, n = {n}: {name}: {e}")),
            });
        }
        if n > SPANNING_N_MAX {
            continue;
        }
        out.extend(flatten(spanning_checks(n, w), || format!("{w}, n = {n}: spanning")));
    }
    out
}

fn spanning_checks(n: u32, w: &Word) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    let direct0 = psi_spanning_direct(n, 0, w)?;
    let hv = psi_spanning_hv(n, w)?;
    out.push(expect(hv == direct0, || format!("{w}, n = {n}: closed form {hv} != direct {direct0}")));
    for m in 0..=2 * n as usize - 2 {
        let direct = psi_spanning_direct(n, m, w)?;
        let hvx = psi_spanning_hvx(n, m, w)?;
        out.push(expect(hvx == direct && is_integer(&hvx), || {
            format!("{w}, n = {n}, m = {m}: closed form {hvx} != direct {direct}")
        }));
    }
    Ok(out)
}

fn cross_formula_suite(cfg: &SweepConfig, n_max: u32) -> Vec<Outcome> {
    let words = match random_words(cfg.word_count, cfg.max_q, cfg.max_exponent, cfg.seed) {
        Ok(w) => w,
        Err(e) => return vec![Some(e.to_string())],
    };
    words.par_iter().flat_map_iter(|w| check_word(w, n_max)).collect()
}

pub fn run_suite(suite: Suite, cfg: &SweepConfig) -> SuiteSummary {
    let n_max = cfg.n_max_for(suite);
    let outcomes = match suite {
        Suite::Bernoulli => bernoulli_suite(n_max),
        Suite::Kummer => kummer_suite(n_max, cfg.p_max),
        Suite::Period => period_suite(n_max),
        Suite::Integrality => integrality_suite(n_max, cfg.p_max),
        Suite::CrossFormula => cross_formula_suite(cfg, n_max),
    };
    summarize(suite, n_max, outcomes)
}

/// Runs the given suites on a pool of `cfg.jobs` workers.
pub fn verify(suites: &[Suite], cfg: &SweepConfig) -> Result<VerifySummary> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let suites = pool.install(|| suites.iter().map(|&s| run_suite(s, cfg)).collect());
    Ok(VerifySummary {
        schema: 1,
        config: cfg.clone(),
        suites,
    })
}
