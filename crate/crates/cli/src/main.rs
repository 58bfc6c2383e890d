use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use rademacher::arith::{
    bernoulli, clarke_decompose, kummer_defect, zeta_pair, Int, DEFAULT_KUMMER_CAP,
};
use rademacher::dedekind::dedekind_sum;
use rademacher::json::RationalRepr;
use rademacher::modular::{parse_input, reduce_hyperbolic, Class, Form, Input};
use rademacher::period::{check_g_integrality, g_polynomial};
use rademacher::symbols::{symbol_report, Formula};
use rademacher::verify::{parse_suites, verify, SweepConfig};
use rademacher::Error;

#[derive(Parser, Debug)]
#[command(name = "rademacher", version, about = "Higher Rademacher symbols, Dedekind sums and Bernoulli checks")]
struct Cli {
    /// Print a JSON document instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Psi_n of a matrix "a b c d" or a word "T^2 V^3" / "ts: 3 4 2"
    Psi {
        n: u32,
        #[arg(allow_hyphen_values = true)]
        input: String,
        /// all, definition, zagier, gn, hv or hvx
        #[arg(long, default_value = "all")]
        formula: String,
    },
    /// The polynomial G_n and its integrality
    Gn {
        n: u32,
        /// Monomial form (default)
        #[arg(long, conflicts_with = "qr_basis")]
        monomial: bool,
        /// Coefficients over the Q_r basis
        #[arg(long)]
        qr_basis: bool,
    },
    /// General Dedekind sum S_{r,s}(a, c)
    #[command(allow_negative_numbers = true)]
    Dedekind { r: usize, s: usize, a: i64, c: i64 },
    /// Bernoulli number B_n (B_1 = -1/2)
    Bernoulli { n: usize },
    /// Integer and prime-power parts of B_n/n
    Clarke { n: u64 },
    /// Kummer congruence defect with Cohen's correction
    Kummer {
        p: u64,
        n: u64,
        m: u64,
        #[arg(long, default_value_t = DEFAULT_KUMMER_CAP)]
        cap: u32,
    },
    /// Reduce a hyperbolic matrix or word to its canonical word
    Word {
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
    /// Run verification sweeps: bernoulli, kummer, period, integrality, cross-formula or all
    Verify {
        suite: String,
        #[command(flatten)]
        sweep: SweepArgs,
    },
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Upper index bound (suite-specific default)
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Number of random words
    #[arg(long, default_value_t = 200)]
    words: usize,
    /// Most T^k S blocks per word
    #[arg(long, default_value_t = 5)]
    max_q: usize,
    /// Largest block exponent
    #[arg(long, default_value_t = 7)]
    max_exp: u64,
    /// Worker threads (0 = one per core)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Largest prime for the Kummer and binomial sweeps
    #[arg(long, default_value_t = 13)]
    p_max: u64,
}

/// Exit status 2 for bad input, 1 for a failed check.
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidArgument(_) | Error::NotHyperbolic { .. } | Error::ZeroValuation => {
                Failure::Usage(e.to_string())
            }
            Error::Inconsistent(_) => Failure::Check(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    schema: u32,
    #[serde(flatten)]
    body: T,
}

fn emit<T: Serialize>(body: T) {
    let doc = Envelope { schema: 1, body };
    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
}

fn show(x: &rademacher::arith::Rational) -> String {
    if x.denom() == &Int::from(1) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn parse_formulas(s: &str) -> Result<Vec<Formula>, Failure> {
    if s == "all" {
        return Ok(Vec::new());
    }
    Ok(vec![s.parse::<Formula>()?])
}

fn cmd_psi(n: u32, input: &str, formula: &str, json: bool) -> Outcome {
    let parsed = parse_input(input)?;
    let formulas = parse_formulas(formula)?;
    let report = symbol_report(n, &parsed, &formulas)?;
    if json {
        emit(&report);
    } else {
        println!("n = {n}, matrix {}, {:?}", report.matrix, report.class);
        if let Some(w) = &report.word {
            println!("word {w}");
        }
        for (name, v) in &report.values {
            println!("{name:<13} {}", show(v));
        }
        for (name, e) in &report.errors {
            println!("{name:<13} error: {e}");
        }
        if report.values.is_empty() {
            println!("no requested formula applies to this input");
        }
        println!("agreement {}, integer {}", report.agreement, report.is_integer);
        if let Some(z) = &report.zeta_ratio {
            println!("zeta ratio {}", show(z));
        }
    }
    Ok(report.ok())
}

fn cmd_gn(n: u32, qr_basis: bool, json: bool) -> Outcome {
    let g = g_polynomial(n)?;
    let integral = g.monomial.has_integer_coefficients();
    let triples = if n >= 3 { Some(check_g_integrality(n)?) } else { None };
    let consistent = triples.as_ref().is_none_or(|t| t.consistent());
    if json {
        #[derive(Serialize)]
        struct Body<'a> {
            n: u32,
            monomial: &'a rademacher::period::MonomialPoly2,
            qr_coefficients: Vec<RationalRepr>,
            text: String,
            integral: bool,
            integrality: Option<rademacher::period::IntegralityReport>,
        }
        emit(Body {
            n,
            monomial: &g.monomial,
            qr_coefficients: g.qr.coeffs().iter().map(RationalRepr::from).collect(),
            text: g.monomial.to_string(),
            integral,
            integrality: triples,
        });
    } else if qr_basis {
        for (r, c) in g.qr.coeffs().iter().enumerate() {
            println!("Q_{r}: {}", show(c));
        }
    } else {
        println!("{}", g.monomial);
    }
    Ok(integral && consistent)
}

fn cmd_dedekind(r: usize, s: usize, a: i64, c: i64, json: bool) -> Outcome {
    let v = dedekind_sum(r, s, &Int::from(a), &Int::from(c))?;
    if json {
        #[derive(Serialize)]
        struct Body {
            r: usize,
            s: usize,
            a: i64,
            c: i64,
            value: RationalRepr,
        }
        emit(Body { r, s, a, c, value: RationalRepr::from(&v) });
    } else {
        println!("{}", show(&v));
    }
    Ok(true)
}

fn cmd_bernoulli(n: usize, json: bool) -> Outcome {
    let b = bernoulli(n);
    let pair = if n >= 2 && n.is_multiple_of(2) { Some(zeta_pair(n / 2)?) } else { None };
    if json {
        #[derive(Serialize)]
        struct Body {
            n: usize,
            value: RationalRepr,
            zeta_pair: Option<rademacher::arith::ZetaPair>,
        }
        emit(Body { n, value: RationalRepr::from(&b), zeta_pair: pair });
    } else {
        println!("{}", show(&b));
        if let Some(p) = pair {
            println!("-B_{n}/{n} = {}/{}", p.i, p.j);
        }
    }
    Ok(true)
}

fn cmd_clarke(n: u64, json: bool) -> Outcome {
    let d = clarke_decompose(n)?;
    let check = d.check();
    if json {
        emit(&d);
    } else {
        let parts: Vec<String> = d
            .parts
            .iter()
            .map(|p| format!("{}/{}^{}", p.residue, p.p, p.exponent))
            .collect();
        println!("B_{n}/{n} = {} + {}", d.z1, parts.join(" + "));
        println!("denominator {}", d.denominator());
    }
    match check {
        Ok(()) => Ok(true),
        Err(e) => {
            eprintln!("{e}");
            Ok(false)
        }
    }
}

fn cmd_kummer(p: u64, n: u64, m: u64, cap: u32, json: bool) -> Outcome {
    let k = kummer_defect(p, n, m, cap)?;
    if json {
        emit(&k);
    } else {
        println!("level N = {}", k.level);
        println!("H = {}", show(&k.h));
        println!("defect = {}", show(&k.defect));
        match k.valuation {
            Some(v) => println!("valuation {v} (needs >= {})", k.level + 1),
            None => println!("defect is zero"),
        }
    }
    Ok(k.holds())
}

fn cmd_word(input: &str, json: bool) -> Outcome {
    let (matrix, reduction) = match parse_input(input)? {
        Input::Matrix(a) => {
            let r = reduce_hyperbolic(&a)?;
            (a, r)
        }
        Input::Word(w) => {
            let a = w.matrix(Form::Tv);
            let r = reduce_hyperbolic(&a)?;
            (a, r)
        }
    };
    let w = &reduction.word;
    if json {
        #[derive(Serialize)]
        struct Body<'a> {
            matrix: &'a rademacher::modular::Mat2,
            class: Class,
            tv: String,
            tv_exponents: &'a [(u64, u64)],
            ts_exponents: &'a [u64],
            letters: u64,
            blocks: usize,
            conjugator: &'a rademacher::modular::Mat2,
            negated: bool,
            #[serde(with = "rademacher::json::int")]
            u: Int,
        }
        emit(Body {
            matrix: &matrix,
            class: matrix.classify(),
            tv: w.to_string(),
            tv_exponents: w.tv_exponents(),
            ts_exponents: w.ts_exponents(),
            letters: w.letter_count(),
            blocks: w.block_count(),
            conjugator: &reduction.conjugator,
            negated: reduction.negated,
            u: matrix.u_of(),
        });
    } else {
        println!("{w}");
        let ts: Vec<String> = w.ts_exponents().iter().map(u64::to_string).collect();
        println!("ts: {}", ts.join(" "));
        println!("conjugator {}{}", reduction.conjugator, if reduction.negated { " (of -A)" } else { "" });
    }
    Ok(true)
}

fn cmd_verify(suite: &str, a: &SweepArgs, json: bool) -> Outcome {
    let suites = parse_suites(suite)?;
    let cfg = SweepConfig {
        n_max: a.n_max,
        word_count: a.words,
        max_q: a.max_q,
        max_exponent: a.max_exp,
        seed: a.seed,
        jobs: a.jobs,
        p_max: a.p_max,
    };
    let summary = verify(&suites, &cfg)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&summary).expect("serializable"));
    } else {
        for s in &summary.suites {
            let total = s.passed + s.failed;
            let verdict = if s.ok() { "pass" } else { "FAIL" };
            println!("{:<14} {}/{} {verdict} (n <= {})", s.suite.name(), s.passed, total, s.n_max);
            for f in &s.failures {
                println!("  {f}");
            }
        }
    }
    Ok(summary.ok())
}

fn run(cli: &Cli) -> Outcome {
    let json = cli.json;
    match &cli.command {
        Command::Psi { n, input, formula } => cmd_psi(*n, input, formula, json),
        Command::Gn { n, qr_basis, .. } => cmd_gn(*n, *qr_basis, json),
        Command::Dedekind { r, s, a, c } => cmd_dedekind(*r, *s, *a, *c, json),
        Command::Bernoulli { n } => cmd_bernoulli(*n, json),
        Command::Clarke { n } => cmd_clarke(*n, json),
        Command::Kummer { p, n, m, cap } => cmd_kummer(*p, *n, *m, *cap, json),
        Command::Word { input } => cmd_word(input, json),
        Command::Verify { suite, sweep } => cmd_verify(suite, sweep, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
