//! Acceptance criteria 1-11. Prints one line per criterion and exits nonzero
//! when a criterion that is expected to hold fails.
//!
//! Tolerances: every comparison is exact; the time budgets below are wall
//! clock ceilings for an optimized test build.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use gs_growth::algebra::parse_relations;
use gs_growth::exact::{Exponent, Gf2, Magnitude};
use gs_growth::ladder::{build_ladder, compute_e, ideal_containment_check, lemma12_suite, Prop1, Strategy};
use gs_growth::planner::{
    bracket_e, check_lemma33, compute_e_schedule, gen_c35_schedule, random_valid_profile, validate_theorem_a,
    DegreeSupport, DyadicProfile, PlannerOptions,
};
use gs_growth::quotient::{
    audit_two_relations, certify_finite_dimensional, commutativity_status, Commutativity, TruncatedIdeal,
};
use gs_growth::series::{
    certify_infinite, gs_check, gs_min_series, gs_polynomial, hilbert_quotient, verify_certificate, DegreeProfile,
    SearchParams, SeriesBound,
};
use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::One;

const SEEDS: u64 = 100;
const LADDER_SEEDS: u64 = 20;
const E_LADDERS: u64 = 5;
const AUDIT_TRIALS: usize = 200;
const AUDIT_SEED: u64 = 2024;

struct Line {
    id: u32,
    ok: bool,
    /// Known to be unattainable as literally stated; see the note.
    expected_failure: bool,
    elapsed: Duration,
    budget: Duration,
    note: String,
}

fn timed(id: u32, budget_secs: u64, f: impl FnOnce() -> (bool, bool, String)) -> Line {
    let t = Instant::now();
    let (ok, expected_failure, note) = f();
    Line {
        id,
        ok,
        expected_failure,
        elapsed: t.elapsed(),
        budget: Duration::from_secs(budget_secs),
        note,
    }
}

fn c1() -> (bool, bool, String) {
    let dims = hilbert_quotient(&Gf2, &[], 2, 12, 20).unwrap();
    let want: Vec<usize> = (0..=12).map(|k| 1 << k).collect();
    (dims == want, false, format!("free algebra dims {:?}", &dims[1..]))
}

fn c2() -> (bool, bool, String) {
    let rels = parse_relations("y*x", 2, 20).unwrap();
    let dims = hilbert_quotient(&Gf2, &rels, 2, 12, 20).unwrap();
    let want: Vec<usize> = (0..=12).map(|k| k + 1).collect();
    let min = gs_min_series(&DegreeProfile::new(2, [(2, 1)]).unwrap(), 12);
    let attained = SeriesBound::from_usize(&dims).coeffs == min.coeffs;
    (dims == want && attained, false, format!("dims {:?}, minimum attained {attained}", &dims[1..]))
}

fn c3_c10() -> ((bool, bool, String), (bool, bool, String)) {
    let mut gs_ok = 0;
    let mut agree = 0;
    for seed in 0..SEEDS {
        let rels = common::random_homogeneous(seed);
        let dims = hilbert_quotient(&Gf2, &rels, 2, 10, 20).unwrap();
        let profile = DegreeProfile::of_relations(2, &rels).unwrap();
        if gs_check(&SeriesBound::from_usize(&dims), &profile) {
            gs_ok += 1;
        }
        let ideal = TruncatedIdeal::build(Gf2, &rels, 2, 10).unwrap();
        if ideal.quotient_dims() == dims[1..] {
            agree += 1;
        }
    }
    (
        (gs_ok == SEEDS, false, format!("{gs_ok}/{SEEDS} presentations satisfy the inequality")),
        (agree == SEEDS, false, format!("{agree}/{SEEDS} presentations agree degree by degree")),
    )
}

fn c4() -> (bool, bool, String) {
    let p3 = DegreeProfile::new(2, [(3, 1)]).unwrap();
    let rep = certify_infinite(&p3, 3, SearchParams::default()).unwrap();
    let c = rep.certificate.expect("a certificate for r_3 = 1");
    let at_three_quarters = gs_polynomial(&p3, 3, &BigRational::new(3.into(), 4.into()));
    let at_four_fifths = gs_polynomial(&p3, 3, &BigRational::new(4.into(), 5.into()));
    let reproduced = at_four_fifths == BigRational::new((-11).into(), 125.into());
    let p2 = DegreeProfile::new(2, [(2, 1)]).unwrap();
    let r2 = certify_infinite(&p2, 2, SearchParams::default()).unwrap();
    let none = r2.certificate.is_none() && r2.boundary_value == BigRational::from_integer(0.into());
    (
        verify_certificate(&p3, &c) && reproduced && none,
        false,
        format!(
            "witness {} value {}; P(3/4) = {}, P(4/5) = {}; r_2 = 1: no witness, P(1) = {}",
            c.witness, c.value, at_three_quarters, at_four_fifths, r2.boundary_value
        ),
    )
}

fn c5() -> (bool, bool, String) {
    let mut ok = 0;
    let mut pairs = 0;
    for seed in 0..LADDER_SEEDS {
        let l = build_ladder(Gf2, Strategy::Random(seed), 4, None).unwrap();
        let rep = lemma12_suite(&l, 16, 10).unwrap();
        pairs += rep.absorption_pairs;
        if rep.ok() {
            ok += 1;
        }
    }
    (ok == LADDER_SEEDS, false, format!("{ok}/{LADDER_SEEDS} ladders, {pairs} absorption pairs"))
}

fn peak_rss_kb() -> Option<u64> {
    let s = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = s.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn c6() -> (bool, bool, String) {
    let mut ladders = vec![build_ladder(Gf2, Strategy::LexGreedy, 4, None).unwrap()];
    for seed in 0..E_LADDERS - 1 {
        ladders.push(build_ladder(Gf2, Strategy::Random(100 + seed), 4, None).unwrap());
    }
    let mut good = 0;
    for l in &ladders {
        let es: Vec<_> = (1..=7).map(|k| compute_e(l, k).unwrap()).collect();
        let contain = es.windows(2).all(|w| ideal_containment_check(&w[0], &w[1]).unwrap());
        let bound = es.iter().enumerate().all(|(i, e)| Prop1::new(l, i + 1, e.dim()).unwrap().ok);
        if contain && bound {
            good += 1;
        }
    }
    let rss = peak_rss_kb();
    let mem_ok = rss.is_none_or(|kb| kb < 1 << 20);
    (
        good == E_LADDERS && mem_ok,
        false,
        format!("{good}/{E_LADDERS} ladders, k = 1..7; peak RSS {} MiB", rss.map_or("?".into(), |k| (k / 1024).to_string())),
    )
}

/// Master inequality in exponent arithmetic: `log2 r + 3n + 4 <= 2^{e-1}` for a
/// single level, with `r` a power of two.
fn master_oracle(log_r: u64, n: u64, e: u64) -> bool {
    log_r + 3 * n + 4 <= 1 << (e - 1)
}

fn c7() -> (bool, bool, String) {
    let mut notes = Vec::new();
    let mut core_ok = true;
    let mut master_ok = true;
    // (log2 r, e, level used for the schedule)
    for (log_r, want_e, n) in [(1u64, 3u64, 7u64), (8, 6, 8), (1024, 13, 30)] {
        let r = Magnitude::pow2(log_r);
        let e = bracket_e(&r).unwrap();
        let big_r = BigUint::one() << log_r as usize;
        let bracket = (BigUint::one() << (1usize << (e - 3))) <= big_r && big_r < (BigUint::one() << (1usize << (e - 2)));
        let fourth = big_r.pow(4) <= BigUint::one() << (1usize << e);
        let p = DyadicProfile::new(BTreeMap::from([(n, r)]));
        let s = compute_e_schedule(&p, &PlannerOptions::default()).unwrap();
        let check = |k: &str| s.checks.iter().find(|c| c.key == k).unwrap().ok;
        let oracle = master_oracle(log_r, n, e);
        // Levels in the regime start at 2e+3; the oracle only grows with n.
        let feasible = master_oracle(log_r, 2 * e + 3, e);
        core_ok &= e == want_e && bracket && fourth && check("bracketing") && check("fourth_power");
        core_ok &= check("master") == oracle;
        master_ok &= oracle;
        notes.push(format!(
            "r=2^{log_r}: e={e} master@n={n} {oracle}{}",
            if feasible { "" } else { " (no level n in the regime satisfies it)" }
        ));
    }
    let c35 = gen_c35_schedule(2).unwrap();
    let c35_ok = c35.levels == [101, 206060201]
        && c35.validation.ok()
        && c35.schedule.is_valid()
        && c35.side_conditions.iter().all(|c| c.ok);
    notes.push(format!("C35 levels {:?} e {:?} all checks {}", c35.levels, c35.schedule.e, c35_ok));
    let ok = core_ok && c35_ok && master_ok;
    // The master inequality cannot hold for r = 2 or r = 256 at any admissible level.
    let expected = core_ok && c35_ok && !master_ok;
    (ok, expected, notes.join("; "))
}

fn c8() -> (bool, bool, String) {
    let opts = PlannerOptions::default();
    let mut passing = 0;
    let mut chained = 0;
    let mut seed = 0;
    while passing < 100 && seed < 1000 {
        let (p, d) = random_valid_profile(seed);
        seed += 1;
        if validate_theorem_a(&p, &d, &opts).unwrap().ok() {
            passing += 1;
            if check_lemma33(&p).unwrap().holds() {
                chained += 1;
            }
        }
    }
    // Sits exactly on the chained bound, so the strict inequality fails and validation must too.
    let tight = DyadicProfile::new(BTreeMap::from([
        (30, Magnitude::pow2(95)),
        (50, Magnitude::pow2(3 * 50 + 4 + 32 * 95)),
    ]));
    let rejected = !check_lemma33(&tight).unwrap().holds()
        && !validate_theorem_a(&tight, &DegreeSupport::new(), &opts).unwrap().ok();
    (
        passing == 100 && chained == 100 && rejected,
        false,
        format!("{chained}/{passing} valid profiles chain ({seed} seeds drawn)"),
    )
}

fn c9() -> (bool, bool, String) {
    let rels = parse_relations("x*y - y*x\nx^2\ny^2", 2, 20).unwrap();
    let ideal = TruncatedIdeal::build(gs_growth::exact::Rationals, &rels, 2, 8).unwrap();
    let cert = certify_finite_dimensional(&ideal).unwrap();
    let example = cert.k == 3
        && cert.dims[..3] == [2, 1, 0]
        && commutativity_status(&ideal).unwrap() == Commutativity::CommutativeAtPrecision(8);
    let audit = audit_two_relations(AUDIT_TRIALS, AUDIT_SEED, 4, 8).unwrap();
    (
        example && audit.ok(),
        false,
        format!(
            "k={} dims {:?}; audit seed {AUDIT_SEED}: {} of {} certified, {} counterexamples",
            cert.k,
            &cert.dims[..3],
            audit.certified,
            audit.trials,
            audit.counterexamples.len()
        ),
    )
}

fn c11() -> (bool, bool, String) {
    let rep = gen_c35_schedule(2).unwrap();
    let upper: Vec<_> = rep.growth.iter().filter(|g| !g.informational).collect();
    let upper_ok = upper.iter().all(|g| g.check.ok) && upper.iter().map(|g| g.log_n).eq([10, 20, 40]);
    let lower = rep.lower_at_first.as_ref().is_some_and(|c| c.ok);
    // Independent restatement of the lower verdict: 32 m^3 log2(40) > 8 m^2 log2(40) + 1.
    let m = BigInt::from(101);
    let quartic = Magnitude::power(40, Exponent::int(m.pow(3) * 32)).half();
    let target = Magnitude::power(40, Exponent::int(m.pow(2) * 8));
    let oracle = target.lt(&quartic).unwrap();
    let late: Vec<String> = rep
        .growth
        .iter()
        .filter(|g| g.informational)
        .map(|g| format!("2^{}:{}", g.log_n, g.check.ok))
        .collect();
    (
        upper_ok && lower && oracle,
        false,
        format!(
            "upper within 2^(3+4L+200L^3) at L=10,20,40 {upper_ok}; lower(2^102) > 40^(8*101^2) {lower}; beyond the sampled range {}",
            late.join(" ")
        ),
    )
}

fn main() {
    let mut lines = Vec::new();
    lines.push(timed(1, 1, c1));
    lines.push(timed(2, 5, c2));
    let t = Instant::now();
    let (l3, l10) = c3_c10();
    let el = t.elapsed();
    lines.push(Line {
        id: 3,
        ok: l3.0,
        expected_failure: l3.1,
        elapsed: el,
        budget: Duration::from_secs(120),
        note: l3.2,
    });
    lines.push(timed(4, 1, c4));
    lines.push(timed(5, 300, c5));
    lines.push(timed(6, 900, c6));
    lines.push(timed(7, 10, c7));
    lines.push(timed(8, 60, c8));
    lines.push(timed(9, 600, c9));
    lines.push(Line {
        id: 10,
        ok: l10.0,
        expected_failure: l10.1,
        elapsed: el,
        budget: Duration::from_secs(120),
        note: l10.2,
    });
    lines.push(timed(11, 10, c11));

    let mut unexpected = 0;
    for l in &lines {
        let in_time = l.elapsed <= l.budget;
        let status = match (l.ok && in_time, l.expected_failure) {
            (true, _) => "PASS",
            (false, true) => "FAIL (expected)",
            (false, false) => "FAIL",
        };
        if !(l.ok && in_time) && !l.expected_failure {
            unexpected += 1;
        }
        println!(
            "criterion {:>2}: {status:<15} {:>8.2}s / {}s  {}",
            l.id,
            l.elapsed.as_secs_f64(),
            l.budget.as_secs(),
            l.note
        );
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed unexpectedly");
        std::process::exit(1);
    }
}
