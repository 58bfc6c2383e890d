//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs under `cargo test` with the default harness disabled.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rademacher::arith::{
    bernoulli_over_index, clarke_decompose, is_integer, kummer_defect, nielsen_check, primes_up_to, rat,
    rat_int, saalschutz_check, von_staudt_denominator, zeta_pair, Rational, DEFAULT_KUMMER_CAP,
};
use rademacher::modular::{Form, Input, Mat2, Word};
use rademacher::period::{binomial_valuation_check, check_g_integrality, g_polynomial, is_period_polynomial};
use rademacher::symbols::{
    psi_definition, psi_definition_upto, psi_spanning_direct, psi_spanning_hv, psi_spanning_hvx, psi_via_gn,
    psi_zagier, symbol_report,
};
use rademacher::verify::random_words;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn g_small_and_six() -> Check {
    for n in 1..=5 {
        let g = g_polynomial(n).map_err(err)?;
        ensure(g.monomial.is_zero(), || format!("G_{n} = {}", g.monomial))?;
    }
    let expected: [((u32, u32), i64); 18] = [
        ((0, 1), 72),
        ((0, 3), -75),
        ((0, 5), 6),
        ((1, 0), 72),
        ((1, 2), -375),
        ((1, 4), 150),
        ((2, 1), -375),
        ((2, 3), 600),
        ((2, 5), -75),
        ((3, 0), -75),
        ((3, 2), 600),
        ((3, 4), -375),
        ((4, 1), 150),
        ((4, 3), -375),
        ((4, 5), 72),
        ((5, 0), 6),
        ((5, 2), -75),
        ((5, 4), 72),
    ];
    let g6 = g_polynomial(6).map_err(err)?.monomial;
    ensure(g6.terms().len() == expected.len(), || {
        format!("G_6 has {} terms, expected {}", g6.terms().len(), expected.len())
    })?;
    for ((i, j), c) in expected {
        ensure(g6.coeff(i, j) == rat_int(c), || format!("G_6 coefficient of x1^{i} x2^{j}: {}", g6.coeff(i, j)))?;
    }
    Ok("G_1..G_5 = 0, 18 coefficients of G_6".into())
}

fn g_integrality() -> Check {
    for n in 2..=60 {
        let g = g_polynomial(n).map_err(err)?;
        ensure(g.monomial.has_integer_coefficients(), || format!("G_{n} not integral"))?;
        if n >= 3 {
            let r = check_g_integrality(n).map_err(err)?;
            ensure(r.failures.is_empty(), || format!("n = {n}: failing triples {:?}", r.failures))?;
            ensure(r.consistent(), || format!("n = {n}: term check disagrees with monomial check"))?;
        }
    }
    Ok("2 <= n <= 60".into())
}

fn period_membership() -> Check {
    for n in 1..=40 {
        let g = g_polynomial(n).map_err(err)?;
        let c = is_period_polynomial(&g.qr);
        ensure(c.by_conditions && c.by_slash, || format!("G_{n}: {c:?}"))?;
    }
    Ok("1 <= n <= 40, coefficient conditions and slash sums".into())
}

fn three_way_agreement() -> Check {
    let words = random_words(200, 5, 7, 42).map_err(err)?;
    let mut checked = 0;
    for w in &words {
        let defs = psi_definition_upto(8, &w.matrix(Form::Tv)).map_err(err)?;
        for n in 2..=8u32 {
            let def = &defs[n as usize - 1];
            let gn = psi_via_gn(n, w).map_err(err)?;
            let zg = psi_zagier(n, w).map_err(err)?;
            ensure(&gn == def && &zg == def, || format!("{w}, n = {n}: {def} / {gn} / {zg}"))?;
            ensure(is_integer(def), || format!("{w}, n = {n}: {def} not an integer"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (word, n) pairs"))
}

fn anchors() -> Check {
    let t = psi_definition(1, &Mat2::t()).map_err(err)?;
    ensure(t == rat_int(1), || format!("Psi_1(T) = {t}"))?;
    let golden = Mat2::from_i64(2, 1, 1, 1).map_err(err)?;
    let r = symbol_report(2, &Input::Matrix(golden), &[]).map_err(err)?;
    ensure(r.ok() && r.value == Some(rat_int(4)), || format!("Psi_2(2,1;1,1): {:?}", r.values))?;
    ensure(r.zeta_ratio == Some(rat(1, 30)), || format!("zeta ratio {:?}", r.zeta_ratio))?;
    Ok("Psi_1(T) = 1, Psi_2 = 4, ratio 1/30".into())
}

fn spanning_symbols() -> Check {
    let words = random_words(100, 5, 7, 2024).map_err(err)?;
    let mut checked = 0;
    for w in &words {
        for n in 2..=6u32 {
            let hv = psi_spanning_hv(n, w).map_err(err)?;
            let d0 = psi_spanning_direct(n, 0, w).map_err(err)?;
            ensure(hv == d0, || format!("{w}, n = {n}: closed form {hv} != direct {d0}"))?;
            for m in 0..=2 * n as usize - 2 {
                let direct = psi_spanning_direct(n, m, w).map_err(err)?;
                let closed = psi_spanning_hvx(n, m, w).map_err(err)?;
                ensure(closed == direct && is_integer(&direct), || {
                    format!("{w}, n = {n}, m = {m}: {closed} vs {direct}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (word, n, m) triples"))
}

fn clarke() -> Check {
    for n in (2..=300u64).step_by(2) {
        let d = clarke_decompose(n).map_err(err)?;
        d.check().map_err(err)?;
        let vs = von_staudt_denominator(n).map_err(err)?;
        ensure(d.denominator() == vs && bernoulli_over_index(n as usize).denom() == &vs, || {
            format!("denominator mismatch at n = {n}")
        })?;
    }
    Ok("even n <= 300".into())
}

fn kummer() -> Check {
    let mut checked = 0;
    for p in primes_up_to(13) {
        for n in (2..=60u64).step_by(2) {
            for m in (2..=60u64).step_by(2) {
                if n.abs_diff(m) % (p - 1) != 0 {
                    continue;
                }
                let k = kummer_defect(p, n, m, DEFAULT_KUMMER_CAP).map_err(err)?;
                if n == m {
                    ensure(k.valuation.is_none(), || format!("({p}, {n}, {n}): nonzero defect"))?;
                } else {
                    ensure(k.level <= 6, || format!("({p}, {n}, {m}): level {}", k.level))?;
                }
                ensure(k.holds(), || format!("({p}, {n}, {m}): valuation {:?}, N = {}", k.valuation, k.level))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} admissible triples"))
}

fn reciprocity() -> Check {
    for k in 0..=40 {
        for m in 0..=40 {
            ensure(saalschutz_check(k, m) == rat_int(0), || format!("Saalschutz ({k}, {m})"))?;
            ensure(nielsen_check(k, m) == rat_int(0), || format!("Nielsen ({k}, {m})"))?;
        }
    }
    Ok("0 <= k, m <= 40".into())
}

fn valuation_bounds() -> Check {
    let mut checked = 0;
    for p in primes_up_to(13) {
        for n in 2..=40u32 {
            for w in 1..n {
                for u in 0..2 * w {
                    let v = 2 * w - 1 - u;
                    if u > n - 1 || v > n - 1 {
                        continue;
                    }
                    let ok = binomial_valuation_check(n, u, v, w, p).map_err(err)?;
                    ensure(ok, || format!("(n, u, v, w, p) = ({n}, {u}, {v}, {w}, {p})"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} admissible tuples"))
}

fn random_conjugator(rng: &mut ChaCha8Rng) -> Mat2 {
    let mut b = Mat2::identity();
    for _ in 0..rng.gen_range(1..=6) {
        let k: i64 = rng.gen_range(-3..=3);
        b = b * Mat2::t_pow(k) * Mat2::s();
    }
    b
}

fn symmetries() -> Check {
    let words: Vec<Word> = random_words(10, 4, 6, 11).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let conjugators: Vec<Mat2> = (0..50).map(|_| random_conjugator(&mut rng)).collect();
    for (idx, b) in conjugators.iter().enumerate() {
        let a = words[idx % words.len()].matrix(Form::Tv);
        let base = psi_definition_upto(8, &a).map_err(err)?;
        let neg = psi_definition_upto(8, &-&a).map_err(err)?;
        let conj = psi_definition_upto(8, &a.conjugate_by(b)).map_err(err)?;
        ensure(base == neg, || format!("Psi(-A) != Psi(A) for A = {a}"))?;
        ensure(base == conj, || format!("conjugation by {b} changes Psi of {a}"))?;
    }
    for n in 2..=8 {
        for e in [Mat2::s(), Mat2::u(), -Mat2::s(), Mat2::u().pow(2)] {
            let v = psi_definition(n, &e).map_err(err)?;
            ensure(v == rat_int(0), || format!("Psi_{n}({e}) = {v}"))?;
        }
    }
    for n in 1..=8 {
        let i = rat_int(zeta_pair(n as usize).map_err(err)?.i);
        for k in -10..=10i64 {
            let v: Rational = psi_definition(n, &Mat2::t_pow(k)).map_err(err)?;
            ensure(is_integer(&(&v / &i)), || format!("Psi_{n}(T^{k}) / i_n = {}", &v / &i))?;
        }
    }
    Ok("negation, 50 conjugators, elliptic zeros, parabolic divisibility".into())
}

struct Criterion {
    label: &'static str,
    budget: Option<Duration>,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { label: "G_n vanishing and G_6 coefficients", budget: secs(1), run: g_small_and_six },
        Criterion { label: "integrality of G_n", budget: secs(120), run: g_integrality },
        Criterion { label: "period-polynomial membership", budget: None, run: period_membership },
        Criterion { label: "three-way agreement on random words", budget: secs(300), run: three_way_agreement },
        Criterion { label: "anchor values", budget: None, run: anchors },
        Criterion { label: "spanning-symbol closed forms", budget: None, run: spanning_symbols },
        Criterion { label: "Clarke decomposition", budget: secs(30), run: clarke },
        Criterion { label: "Kummer congruences", budget: None, run: kummer },
        Criterion { label: "Saalschutz and Nielsen reciprocity", budget: None, run: reciprocity },
        Criterion { label: "binomial valuation bounds", budget: None, run: valuation_bounds },
        Criterion { label: "symmetry and structure", budget: None, run: symmetries },
    ];
    let mut failed = 0;
    for (k, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let verdict = match (&result, c.budget) {
            (Err(e), _) => Err(e.clone()),
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            (Ok(detail), _) => Ok(detail.clone()),
        };
        match verdict {
            Ok(detail) => println!("PASS [{:>2}] {} ({detail}) in {elapsed:.2?}", k + 1, c.label),
            Err(why) => {
                failed += 1;
                println!("FAIL [{:>2}] {}: {why} in {elapsed:.2?}", k + 1, c.label);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
