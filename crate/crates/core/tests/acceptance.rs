//! Acceptance criteria. Every comparison is an exact rational equality
//! (tolerance zero). Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{ideal, random_exponents, random_ideal, rng};
use itertools::Itertools;
use lojax::arith::{fmt_rational, rat};
use lojax::filtration::FiltrationMap;
use lojax::lojasiewicz::{
    a_vector, a_vector_shortcut, build_k_ideals, loja_exponent, loja_oracle, loja_sequence,
    EntryKind,
};
use lojax::multiplicity::{mixed_sequence_with, rees_sigma, samuel_multiplicity};
use lojax::relations::{hickel_report, inequality_suite, nondegenerate_tuple, Verdict};
use lojax::{Integer, MonomialIdeal, NewtonPolyhedron, Rational, RationalPoint};
use num::{One, ToPrimitive};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn q(v: &Rational) -> String {
    fmt_rational(v)
}

/// Runs the inequality suite on every randomized pair; failures feed the
/// suite criterion.
#[derive(Default)]
struct SuiteLog {
    pairs: usize,
    checks: usize,
    failures: Vec<String>,
}

impl SuiteLog {
    fn record(&mut self, i: &MonomialIdeal, j: &MonomialIdeal) {
        self.pairs += 1;
        match inequality_suite(i, j) {
            Ok(suite) => {
                self.checks += suite.checks.len();
                for c in suite.failures() {
                    self.failures.push(format!(
                        "{:?} vs {:?}: {}",
                        i.generators(),
                        j.generators(),
                        c
                    ));
                }
            }
            Err(e) => self.failures.push(format!(
                "{:?} vs {:?}: suite error {e}",
                i.generators(),
                j.generators()
            )),
        }
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn non_diagonal_fixture() -> Outcome {
    let i = ideal(2, &[&[5, 0], &[0, 5]]);
    let j = ideal(2, &[&[4, 0], &[1, 1], &[0, 4]]);
    let f = FiltrationMap::new(&j).map_err(err)?;
    ensure!(*f.m() == Integer::from(4), "M_J = {}", f.m());
    let phi_a = f
        .phi(&RationalPoint::from_fracs(&[(5, 2), (5, 2)]))
        .map_err(err)?;
    let phi_b = f
        .phi(&RationalPoint::from_fracs(&[(3, 2), (3, 2)]))
        .map_err(err)?;
    ensure!(phi_a == rat(10, 1), "phi(5/2,5/2) = {}", q(&phi_a));
    ensure!(phi_b == rat(6, 1), "phi(3/2,3/2) = {}", q(&phi_b));
    let l = loja_exponent(&i, &j).map_err(err)?;
    ensure!(l == rat(5, 2), "L_J(I) = {}", q(&l));
    let k_h = ideal(2, &[&[5, 0], &[2, 1], &[1, 2], &[0, 5]])
        .closure_generators()
        .map_err(err)?;
    let l_k = loja_exponent(&k_h, &j).map_err(err)?;
    ensure!(l_k == rat(3, 2), "L_J(K_H) = {}", q(&l_k));
    let report = loja_sequence(&i, &j).map_err(err)?;
    ensure!(
        report.a == vec![rat(5, 1), rat(10, 1)],
        "a = {:?}",
        report.a
    );
    let first = report.entry(1);
    ensure!(
        first.kind == EntryKind::UpperBound && first.value == Some(rat(5, 4)),
        "entry 1 = {:?}",
        first
    );
    ensure!(!report.notes.is_empty(), "the a_1 warning is missing");
    Ok(format!(
        "M_J=4, phi=10 and 6, L=5/2, L(K_H)=3/2, a=(5,10), a_1 flagged with {} note(s)",
        report.notes.len()
    ))
}

fn maximal_fixture() -> Outcome {
    let i = ideal(2, &[&[2, 0], &[0, 3]]);
    let m = MonomialIdeal::maximal(2).map_err(err)?;
    let e = samuel_multiplicity(&i).map_err(err)?;
    ensure!(e == Integer::from(6), "e(I) = {e}");
    let report = loja_sequence(&i, &m).map_err(err)?;
    ensure!(report.all_exact(), "entries not all exact");
    let values: Vec<_> = report
        .entries
        .iter()
        .map(|en| en.value.clone().unwrap())
        .collect();
    ensure!(values == vec![rat(2, 1), rat(3, 1)], "L* = {:?}", values);
    let h = hickel_report(&i, &m).map_err(err)?;
    ensure!(h.is_hickel == Verdict::True, "is_hickel = {}", h.is_hickel);
    Ok("e=6, L*=(2,3) exact, is_hickel=true".into())
}

fn three_variable_fixture() -> Outcome {
    let (a, b, c, d, e) = (2i64, 3i64, 4i64, 5i64, 1i64);
    let i = ideal(3, &[&[d, 0, 0], &[0, d, 0], &[0, 0, d], &[e, e, e]]);
    let j = ideal(3, &[&[a, 0, 0], &[0, b, 0], &[0, 0, c]]);
    let expected = [
        rat(e * (b * c + a * c + a * b), a * b * c),
        rat(d, b),
        rat(d, a),
    ];
    let report = loja_sequence(&i, &j).map_err(err)?;
    ensure!(report.all_exact(), "entries not all exact");
    for (idx, want) in expected.iter().enumerate() {
        let got = report.entry(idx + 1).value.clone().unwrap();
        ensure!(
            got == *want,
            "L^({}) = {} expected {}",
            idx + 1,
            q(&got),
            q(want)
        );
    }
    let h = hickel_report(&i, &j).map_err(err)?;
    ensure!(
        h.table.e_i == Integer::from(3 * d * d * e),
        "e(I) = {}",
        h.table.e_i
    );
    ensure!(
        h.table.e_j == Integer::from(a * b * c),
        "e(J) = {}",
        h.table.e_j
    );
    ensure!(h.is_hickel == Verdict::False, "is_hickel = {}", h.is_hickel);
    let product = h.product_l.clone().ok_or("product of L missing")?;
    ensure!(product == rat(325, 72), "prod L = {}", q(&product));
    let gap = &product - &h.ratio_e;
    ensure!(gap == rat(325, 72) - rat(225, 72), "gap = {}", q(&gap));
    Ok(format!(
        "L*=(13/12,5/3,5/2) exact, e=(75,24), is_hickel=false, gap={}",
        q(&gap)
    ))
}

fn diagonal_pairs(log: &mut SuiteLog) -> Outcome {
    let mut r = rng(0xD1A6);
    for trial in 0..50 {
        let n = 2 + trial % 3;
        let a = random_exponents(&mut r, n, 1, 9);
        let b: Vec<i64> = a
            .iter()
            .map(|&x| rand::Rng::gen_range(&mut r, x..=9))
            .collect();
        let i = MonomialIdeal::pure_powers(&b).map_err(err)?;
        let j = MonomialIdeal::pure_powers(&a).map_err(err)?;
        let mut ratios: Vec<Rational> = a.iter().zip(&b).map(|(x, y)| rat(*y, *x)).collect();
        ratios.sort();
        let h = hickel_report(&i, &j).map_err(err)?;
        ensure!(h.loja.all_exact(), "a={a:?} b={b:?}: entries not all exact");
        for (idx, want) in ratios.iter().enumerate() {
            let got = h.loja.entry(idx + 1).value.clone().unwrap();
            ensure!(
                got == *want,
                "a={a:?} b={b:?}: L^({}) = {} expected {}",
                idx + 1,
                q(&got),
                q(want)
            );
        }
        ensure!(
            h.is_hickel == Verdict::True,
            "a={a:?} b={b:?}: is_hickel = {}",
            h.is_hickel
        );
        log.record(&i, &j);
    }
    Ok("50 pairs, n in 2..=4, sorted ratios and is_hickel=true".into())
}

/// Independent check of `L = p/q`: `p Γ(J) ⊆ q Γ(I)` holds and fails for the
/// smaller ratio `(2p - 1) / 2q`.
fn containment_oracle(
    l: &Rational,
    i: &MonomialIdeal,
    j: &MonomialIdeal,
) -> std::result::Result<bool, String> {
    let p_i: NewtonPolyhedron = i.newton_polyhedron().map_err(err)?;
    let p_j: NewtonPolyhedron = j.newton_polyhedron().map_err(err)?;
    let p = l.numer().to_u64().ok_or("numerator overflow")?;
    let s = l.denom().to_u64().ok_or("denominator overflow")?;
    let at = NewtonPolyhedron::contains_scaled(p, &p_j, s, &p_i).map_err(err)?;
    let below = NewtonPolyhedron::contains_scaled(2 * p - 1, &p_j, 2 * s, &p_i).map_err(err)?;
    Ok(at && !below)
}

fn oracle_pairs(log: &mut SuiteLog) -> Outcome {
    let mut r = rng(0x0AC1E);
    for trial in 0..200 {
        let n = 2 + trial % 2;
        let i = random_ideal(&mut r, n, 6, 10);
        let j = random_ideal(&mut r, n, 6, 10);
        let l = loja_exponent(&i, &j).map_err(err)?;
        let o = loja_oracle(&i, &j).map_err(err)?;
        ensure!(
            l == o,
            "{:?} vs {:?}: L = {} oracle = {}",
            i.generators(),
            j.generators(),
            q(&l),
            q(&o)
        );
        ensure!(
            containment_oracle(&l, &i, &j)?,
            "{:?} vs {:?}: L = {} fails the containment test",
            i.generators(),
            j.generators(),
            q(&l)
        );
        log.record(&i, &j);
    }
    Ok("200 pairs, n in {2,3}, LP = vertex oracle = containment test".into())
}

fn binomial(n: usize, k: usize) -> Integer {
    (0..k).fold(Integer::one(), |acc, t| {
        acc * Integer::from(n - t) / Integer::from(t + 1)
    })
}

fn multiplicity_checks(log: &mut SuiteLog) -> Outcome {
    let mut r = rng(0x3317);
    for trial in 0..100 {
        let n = 2 + trial % 2;
        let i = random_ideal(&mut r, n, 5, 6);
        let j = random_ideal(&mut r, n, 5, 6);
        let fitted = mixed_sequence_with(&i, &j, true).map_err(err)?;
        let polar = mixed_sequence_with(&i, &j, false).map_err(err)?;
        ensure!(
            fitted.mixed == polar.mixed,
            "paths disagree on {:?} vs {:?}",
            i.generators(),
            j.generators()
        );
        // e(I^λ J^μ) = Σ C(n,k) e_k λ^k μ^(n-k).
        for (lam, mu) in [(1u32, 1u32), (2, 1), (1, 3)] {
            let prod = i
                .power(lam)
                .and_then(|a| a.product(&j.power(mu)?))
                .map_err(err)?;
            let lhs = samuel_multiplicity(&prod).map_err(err)?;
            let rhs: Integer = (0..=n)
                .map(|k| {
                    binomial(n, k)
                        * &polar.mixed[k]
                        * Integer::from(lam).pow(k as u32)
                        * Integer::from(mu).pow((n - k) as u32)
                })
                .sum();
            ensure!(
                lhs == rhs,
                "e(I^{lam} J^{mu}) = {lhs}, expansion gives {rhs}"
            );
        }
        for s in 1..=3u32 {
            let e = samuel_multiplicity(&i).map_err(err)?;
            let es = samuel_multiplicity(&i.power(s).map_err(err)?).map_err(err)?;
            ensure!(
                es == e * Integer::from(s).pow(n as u32),
                "e(I^{s}) scaling fails"
            );
        }
        log.record(&i, &j);
    }
    let i = ideal(2, &[&[2, 0], &[0, 3]]);
    let m = MonomialIdeal::maximal(2).map_err(err)?;
    let t = mixed_sequence_with(&i, &m, true).map_err(err)?;
    ensure!(t.mixed[1] == Integer::from(2), "e_1 = {}", t.mixed[1]);
    Ok("100 pairs fit = polarization = product expansion, e(I^s)=s^n e(I), e_1=2".into())
}

fn k_ideal_checks(log: &mut SuiteLog) -> Outcome {
    let k1 = ideal(2, &[&[2, 0]]);
    let k2 = ideal(2, &[&[3, 0], &[2, 1], &[1, 2], &[0, 3]]);
    let sigma = rees_sigma(&[k1, k2]).map_err(err)?;
    ensure!(sigma == Integer::from(6), "sigma = {sigma}");
    let mut r = rng(0x7E0);
    let mut checked = 0;
    while checked < 50 {
        let j = random_ideal(&mut r, 2, 4, 5);
        let i = random_ideal(&mut r, 2, 4, 6);
        let ks = build_k_ideals(&i, &j).map_err(err)?;
        let nd = nondegenerate_tuple(&ks, &j).map_err(err)?;
        ensure!(
            nd.verdict == Verdict::True,
            "{:?} vs {:?}: sigma={:?} bound={}",
            i.generators(),
            j.generators(),
            nd.sigma,
            q(&nd.bound)
        );
        log.record(&i, &j);
        checked += 1;
    }
    Ok(format!("sigma=6, {checked} random K tuples non-degenerate"))
}

fn suite_summary(log: &SuiteLog) -> Outcome {
    ensure!(
        log.failures.is_empty(),
        "{} failure(s), first: {}",
        log.failures.len(),
        log.failures[0]
    );
    Ok(format!(
        "{} pairs, {} checks, 0 failures",
        log.pairs, log.checks
    ))
}

fn shortcut_checks(log: &mut SuiteLog) -> Outcome {
    let mut r = rng(0x5C07);
    for trial in 0..100 {
        let n = 2 + trial % 3;
        let i = random_ideal(&mut r, n, n + 3, 8);
        let m = MonomialIdeal::maximal(n).map_err(err)?;
        let d = MonomialIdeal::pure_powers(&random_exponents(&mut r, n, 1, 6)).map_err(err)?;
        for j in [&m, &d] {
            let lp = a_vector(&i, j).map_err(err)?;
            let short = a_vector_shortcut(&i, j)
                .map_err(err)?
                .ok_or("no shortcut for a diagonal J")?;
            ensure!(
                lp == short,
                "{:?} vs {:?}: LP {:?} shortcut {:?}",
                i.generators(),
                j.generators(),
                lp.iter().map(q).collect_vec(),
                short.iter().map(q).collect_vec()
            );
        }
        log.record(&i, &d);
    }
    Ok(
        "100 ideals, n in 2..=4, LP = order shortcut (maximal) = restriction shortcut (diagonal)"
            .into(),
    )
}

fn main() -> ExitCode {
    let mut log = SuiteLog::default();
    let start = Instant::now();
    let mut results: Vec<(u32, &str, Outcome)> = vec![
        (1, "non-diagonal fixture", non_diagonal_fixture()),
        (2, "maximal-ideal fixture", maximal_fixture()),
        (
            3,
            "three-variable diagonal J fixture",
            three_variable_fixture(),
        ),
        (4, "diagonal pairs", diagonal_pairs(&mut log)),
        (5, "oracle equivalence", oracle_pairs(&mut log)),
        (
            6,
            "multiplicity cross-checks",
            multiplicity_checks(&mut log),
        ),
        (7, "K ideals are non-degenerate", k_ideal_checks(&mut log)),
    ];
    // Criterion 9 also feeds the suite log, so it runs before 8 is scored.
    let shortcut = shortcut_checks(&mut log);
    results.push((8, "inequality suites", suite_summary(&log)));
    results.push((9, "shortcut agreement", shortcut));

    let mut failed = 0;
    for (k, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS criterion {k} [{name}] tolerance=0: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {k} [{name}] tolerance=0: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1?}",
        results.len() - failed,
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
