//! The `gsg` command line. [`run`] takes the full argument vector and returns
//! the exit code with the rendered report, so tests drive it without a process.
//!
//! Exit codes: 0 computed, 1 a hypothesis or certification failed (the report
//! says which), 2 usage or input error.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::bigint::{BigInt, BigUint};
use serde_json::{json, Map, Value};

use crate::algebra::{parse_element, parse_relations, Element};
use crate::error::{Error, Result};
use crate::exact::{Exponent, Field, FieldChoice, Gf2, Gfp, Magnitude, Rationals};
use crate::ladder::{
    build_ladder, compute_e, ideal_containment_check, lemma12_suite, lemma32_witness, v_bound_check, Ladder, Prop1,
    Strategy, Targets,
};
use crate::planner::{
    check_lemma33, compute_e_schedule, dyadic_profile, eval_bounds, gen_c35_schedule, validate_theorem_a,
    BlockReading, DegreeSupport, DyadicProfile, PlannerOptions, ZeroLevel,
};
use crate::quotient::{
    audit_two_relations, certify_finite_dimensional, commutativity_status, default_precision_cap,
    theorem2_threshold, TruncatedIdeal,
};
use crate::series::{
    certify_infinite, entropy_estimate, gs_first_violation, gs_min_series, hilbert_quotient, verify_certificate,
    DegreeProfile, SearchParams, SeriesBound,
};

/// Version tag of the report layout.
pub const SCHEMA: &str = "gsg-report/1";

#[derive(Parser, Debug)]
#[command(name = "gsg", version, about = "Exact growth computations for graded algebras")]
struct Cli {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit `path: value` lines derived from the JSON report.
    #[arg(long, global = true)]
    text: bool,
    /// Seed for every randomized step; recorded in the report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert series of a homogeneous presentation, checked against the Golod-Shafarevich bound.
    Hilbert(HilbertArgs),
    /// Search for a rational point where the truncated Golod-Shafarevich polynomial is negative.
    Certify(CertifyArgs),
    /// Build a U/V ladder and check its decompositions and the ideal E.
    Ladder(LadderArgs),
    /// Validate a dyadic profile and schedule the exponents e(n).
    Schedule(ScheduleArgs),
    /// Growth bounds of a scheduled profile at a degree n.
    Bounds(BoundsArgs),
    /// Finite-dimensionality and commutativity of a quotient by inhomogeneous relations.
    Quotient(QuotientArgs),
    /// The doubly-exponential profile r_m = 40^(8m^3) and its growth verdicts.
    C35(C35Args),
}

#[derive(Args, Debug)]
struct RelationInput {
    /// Number of generators.
    #[arg(long, default_value_t = 2)]
    gens: u32,
    /// Relation file: one expression per line, `#` comments.
    #[arg(long)]
    relations: Option<PathBuf>,
    /// A relation given inline; repeatable.
    #[arg(long = "relation")]
    relation: Vec<String>,
    /// Degree cap for parsing and products.
    #[arg(long, default_value_t = 20)]
    cap: usize,
}

#[derive(Args, Debug)]
struct HilbertArgs {
    #[command(flatten)]
    input: RelationInput,
    #[arg(long, default_value_t = 12)]
    max_degree: usize,
    /// gf2, gfp:P or rational.
    #[arg(long, default_value = "gf2")]
    field: FieldChoice,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    /// Degree profile JSON: {"d": 2, "degree_counts": {"3": 1}}.
    #[arg(long, conflicts_with_all = ["relations", "relation"])]
    profile: Option<PathBuf>,
    #[command(flatten)]
    input: RelationInput,
    /// Truncate the polynomial after this degree
    #[arg(long)]
    partial_degree: usize,
    #[arg(long, default_value_t = 5)]
    max_denominator: u32,
    #[arg(long, default_value_t = 64)]
    bisection_steps: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Trivial,
    LexGreedy,
    Random,
}

#[derive(Args, Debug)]
struct LadderArgs {
    #[arg(long, default_value_t = 3)]
    levels: u32,
    #[arg(long, value_enum, default_value = "lex-greedy")]
    strategy: StrategyArg,
    #[arg(long, default_value = "gf2")]
    field: FieldChoice,
    /// `uniform:DIM` or `schedule:M=E,M=E`.
    #[arg(long)]
    targets: Option<String>,
    /// Largest degree for the direct-sum and absorption checks.
    #[arg(long)]
    absorption_degree: Option<usize>,
    /// Largest degree checked with explicit subspaces.
    #[arg(long, default_value_t = 8)]
    explicit_up_to: usize,
    /// Compute E(k) for k = 1..=K (at most 7).
    #[arg(long, default_value_t = 0)]
    e_up_to: usize,
    /// Check the size bound on V^>(alpha); needs schedule targets.
    #[arg(long)]
    v_bound: Option<usize>,
    /// Include the ladder itself in the report.
    #[arg(long)]
    export: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ZeroArg {
    #[value(name = "1")]
    One,
    #[value(name = "0")]
    Zero,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BlocksArg {
    Interval,
    Endpoints,
}

#[derive(Args, Debug)]
struct ProfileInput {
    /// Profile JSON: {"r": {"n": magnitude}} and/or {"degrees": [...]}.
    #[arg(long)]
    profile: Option<PathBuf>,
    /// A level given inline as `N=MAGNITUDE`, e.g. `30=2^1000`; repeatable.
    #[arg(long = "level")]
    level: Vec<String>,
    /// A relation degree with count, `DEGREE` or `DEGREE:COUNT`; repeatable.
    #[arg(long = "degree")]
    degree: Vec<String>,
    /// How the m = 0 instance reads r_0 when 0 is not a level.
    #[arg(long, value_enum, default_value = "1")]
    r0: ZeroArg,
    #[arg(long, value_enum, default_value = "interval")]
    blocks: BlocksArg,
    /// Relax the low-level and regime constraints.
    #[arg(long)]
    toy: bool,
}

#[derive(Args, Debug)]
struct ScheduleArgs {
    #[command(flatten)]
    input: ProfileInput,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[command(flatten)]
    input: ProfileInput,
    /// Degree n as a magnitude, e.g. `1024` or `2^40`.
    #[arg(long)]
    n: String,
}

#[derive(Args, Debug)]
struct QuotientArgs {
    #[command(flatten)]
    input: RelationInput,
    /// Truncation precision D; defaults by generator count.
    #[arg(long)]
    precision: Option<usize>,
    #[arg(long, default_value = "rational")]
    field: FieldChoice,
    /// Also run the randomized two-relation audit with this many trials.
    #[arg(long)]
    audit: Option<usize>,
}

#[derive(Args, Debug)]
struct C35Args {
    #[arg(long, default_value_t = 2)]
    count: usize,
}

/// What a subcommand computed, before the envelope is added.
struct Outcome {
    ok: bool,
    conditions: Vec<String>,
    config: Value,
    result: Value,
}

macro_rules! with_field {
    ($choice:expr, $f:ident => $body:expr) => {
        match $choice {
            FieldChoice::Gf2 => {
                let $f = Gf2;
                $body
            }
            FieldChoice::Gfp(p) => {
                let $f = Gfp::new(p)?;
                $body
            }
            FieldChoice::Rational => {
                let $f = Rationals;
                $body
            }
        }
    };
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    let text = cli.text;
    let (name, outcome) = match dispatch(&cli) {
        Ok(x) => x,
        Err(e) => {
            let code = match e {
                Error::Hypothesis(_) | Error::Ladder { .. } => 1,
                _ => 2,
            };
            let report = json!({
                "schema": SCHEMA,
                "command": command_name(&cli.command),
                "seed": cli.seed,
                "status": if code == 1 { "failed" } else { "error" },
                "error": e.to_string(),
            });
            return (code, render(&report, text));
        }
    };
    let report = json!({
        "schema": SCHEMA,
        "command": name,
        "seed": cli.seed,
        "config": outcome.config,
        "conditions": outcome.conditions,
        "status": if outcome.ok { "ok" } else { "failed" },
        "result": outcome.result,
    });
    (if outcome.ok { 0 } else { 1 }, render(&report, text))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Hilbert(_) => "hilbert",
        Command::Certify(_) => "certify",
        Command::Ladder(_) => "ladder",
        Command::Schedule(_) => "schedule",
        Command::Bounds(_) => "bounds",
        Command::Quotient(_) => "quotient",
        Command::C35(_) => "c35",
    }
}

fn dispatch(cli: &Cli) -> Result<(&'static str, Outcome)> {
    let name = command_name(&cli.command);
    let out = match &cli.command {
        Command::Hilbert(a) => hilbert(a)?,
        Command::Certify(a) => certify(a)?,
        Command::Ladder(a) => ladder(a, cli.seed)?,
        Command::Schedule(a) => schedule(a)?,
        Command::Bounds(a) => bounds(a)?,
        Command::Quotient(a) => quotient(a, cli.seed)?,
        Command::C35(a) => c35(a)?,
    };
    Ok((name, out))
}

fn render(v: &Value, text: bool) -> String {
    if !text {
        let mut s = serde_json::to_string_pretty(v).expect("serializable");
        s.push('\n');
        return s;
    }
    let mut lines = Vec::new();
    flatten("", v, &mut lines);
    lines.join("\n") + "\n"
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = a.iter().map(scalar).collect();
            out.push(format!("{prefix}: [{}]", parts.join(", ")));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        _ => out.push(format!("{prefix}: {}", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

fn read_json(path: &PathBuf) -> Result<Value> {
    serde_json::from_str(&read(path)?).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn load_relations(input: &RelationInput) -> Result<Vec<Element>> {
    if input.gens == 0 {
        return Err(Error::Usage("need at least one generator".into()));
    }
    let mut rels = match &input.relations {
        Some(p) => parse_relations(&read(p)?, input.gens, input.cap)?,
        None => Vec::new(),
    };
    for r in &input.relation {
        rels.push(parse_element(r, input.gens, input.cap)?);
    }
    Ok(rels)
}

fn relation_config(input: &RelationInput, rels: &[Element]) -> Value {
    json!({
        "gens": input.gens,
        "relations": rels.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "cap": input.cap,
    })
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Value::Object(x), Value::Object(y)) = (&mut a, b) {
        x.extend(y);
    }
    a
}

fn hilbert(a: &HilbertArgs) -> Result<Outcome> {
    let rels = load_relations(&a.input)?;
    let d = a.input.gens;
    let dims = with_field!(a.field, f => hilbert_quotient(&f, &rels, d, a.max_degree, a.input.cap)?);
    let profile = DegreeProfile::of_relations(d, &rels)?;
    let series = SeriesBound::from_usize(&dims);
    let min = gs_min_series(&profile, a.max_degree);
    let violation = gs_first_violation(&series, &profile);
    let attained = series.coeffs == min.coeffs;
    let big: Vec<BigUint> = dims.iter().map(|&x| BigUint::from(x)).collect();
    let entropy = if big.len() >= 4 { Some(entropy_estimate(&big)?.to_json()) } else { None };
    Ok(Outcome {
        ok: violation.is_none(),
        conditions: vec!["gs_inequality".into()],
        config: merge(
            relation_config(&a.input, &rels),
            json!({"field": a.field.to_string(), "max_degree": a.max_degree}),
        ),
        result: json!({
            "series": &dims[1..],
            "profile": profile.to_json(),
            "gs_min_series": min.to_json(false),
            "attains_minimum": attained,
            "gs_inequality": violation.as_ref().map_or(json!({"holds": true}), |(k, c)| {
                json!({"holds": false, "degree": k, "coefficient": c.to_string()})
            }),
            "entropy": entropy,
        }),
    })
}

fn certify(a: &CertifyArgs) -> Result<Outcome> {
    let (profile, source) = match &a.profile {
        Some(p) => (DegreeProfile::from_json(&read_json(p)?)?, json!({"profile": p.display().to_string()})),
        None => {
            let rels = load_relations(&a.input)?;
            (DegreeProfile::of_relations(a.input.gens, &rels)?, relation_config(&a.input, &rels))
        }
    };
    let params = SearchParams {
        max_denominator: a.max_denominator,
        bisection_steps: a.bisection_steps,
    };
    let rep = certify_infinite(&profile, a.partial_degree, params)?;
    let verified = rep.certificate.as_ref().is_some_and(|c| verify_certificate(&profile, c));
    Ok(Outcome {
        ok: verified,
        conditions: vec!["gs_certificate".into()],
        config: merge(
            source,
            json!({
                "partial_degree": a.partial_degree,
                "max_denominator": a.max_denominator,
                "bisection_steps": a.bisection_steps,
            }),
        ),
        result: json!({
            "profile": profile.to_json(),
            "certificate": rep.certificate.as_ref().map(|c| c.to_json()),
            "verified": verified,
            "grid_min": {
                "t": crate::series::fmt_q(&rep.grid_min.1),
                "value": crate::series::fmt_q(&rep.grid_min.0),
            },
            "value_at_1": crate::series::fmt_q(&rep.boundary_value),
        }),
    })
}

fn parse_targets(s: &str, levels: u32) -> Result<Targets> {
    if let Some(d) = s.strip_prefix("uniform:") {
        let d: usize = d.parse().map_err(|_| Error::Usage(format!("bad target dimension `{d}`")))?;
        return Ok(Targets::uniform(levels, d));
    }
    if let Some(list) = s.strip_prefix("schedule:") {
        let mut sched = BTreeMap::new();
        for item in list.split(',').filter(|x| !x.is_empty()) {
            let (m, e) = item
                .split_once('=')
                .and_then(|(m, e)| Some((m.trim().parse::<u32>().ok()?, e.trim().parse::<u32>().ok()?)))
                .ok_or_else(|| Error::Usage(format!("bad schedule entry `{item}`")))?;
            sched.insert(m, e);
        }
        return Targets::from_schedule(levels, &sched);
    }
    Err(Error::Usage(format!("targets must be `uniform:DIM` or `schedule:M=E,...`, got `{s}`")))
}

fn ladder(a: &LadderArgs, seed: u64) -> Result<Outcome> {
    let strategy = match a.strategy {
        StrategyArg::Trivial => Strategy::Trivial,
        StrategyArg::LexGreedy => Strategy::LexGreedy,
        StrategyArg::Random => Strategy::Random(seed),
    };
    let targets = a.targets.as_deref().map(|t| parse_targets(t, a.levels)).transpose()?;
    if a.e_up_to > 7 {
        return Err(Error::Usage("E is computed up to degree 7".into()));
    }
    let config = json!({
        "levels": a.levels,
        "strategy": strategy.name(),
        "field": a.field.to_string(),
        "targets": targets.as_ref().map(Targets::to_json),
        "absorption_degree": a.absorption_degree,
        "explicit_up_to": a.explicit_up_to,
        "e_up_to": a.e_up_to,
        "v_bound": a.v_bound,
    });
    with_field!(a.field, f => ladder_report(build_ladder(f, strategy, a.levels, targets)?, a, config))
}

fn ladder_report<F: Field>(l: Ladder<F>, a: &LadderArgs, config: Value) -> Result<Outcome> {
    let top_degree = 1usize << a.levels;
    let abs_degree = a.absorption_degree.unwrap_or(top_degree.min(16));
    let suite = lemma12_suite(&l, abs_degree, a.explicit_up_to)?;
    let mut ok = suite.ok();
    let levels: Vec<Value> = l
        .levels()
        .iter()
        .map(|lv| json!({"m": lv.m(), "degree": lv.degree(), "dim_V": lv.dim_v()}))
        .collect();
    let mut es = Vec::new();
    let mut e_rows = Vec::new();
    for k in 1..=a.e_up_to {
        let e = compute_e(&l, k)?;
        let p = Prop1::new(&l, k, e.dim())?;
        ok &= p.ok;
        let mut row = p.to_json();
        if let Some(prev) = es.last() {
            let c = ideal_containment_check(prev, &e)?;
            ok &= c;
            row["contains_shifts_of_previous"] = json!(c);
        }
        e_rows.push(row);
        es.push(e);
    }
    let mut witnesses = Vec::new();
    for lvl in 2..=a.levels.min(4) {
        if a.e_up_to > 0 && (1usize << (lvl - 1)) - 1 <= a.e_up_to {
            witnesses.push(lemma32_witness(&l, lvl)?.to_json());
        }
    }
    let v_bound = match a.v_bound {
        Some(alpha) => {
            let b = v_bound_check(&l, alpha)?;
            ok &= b.ok;
            Some(b.to_json())
        }
        None => None,
    };
    let mut result = json!({
        "levels": levels,
        "properties": "verified",
        "decomposition": suite.to_json(),
        "E": e_rows,
        "independence_witnesses": witnesses,
        "v_bound": v_bound,
    });
    if a.export {
        result["ladder"] = l.to_json();
    }
    Ok(Outcome {
        ok,
        conditions: [
            "monomial_basis",
            "nested",
            "complement",
            "absorbs_lower",
            "direct_sum",
            "absorption",
            "ideal_shift",
            "codim_bound",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
        config,
        result,
    })
}

/// `A`, `B^E`, or a `*`-product of those, with nonnegative integer parts.
pub fn parse_magnitude(s: &str) -> Result<Magnitude> {
    let bad = || Error::Usage(format!("bad magnitude `{s}`"));
    let mut m = Magnitude::one();
    for part in s.split('*') {
        let part = part.trim();
        let f = match part.split_once('^') {
            Some((b, e)) => {
                let b: BigUint = b.trim().parse().map_err(|_| bad())?;
                let e: BigInt = e.trim().trim_matches(|c| c == '(' || c == ')').parse().map_err(|_| bad())?;
                if b == BigUint::from(0u8) {
                    return Err(bad());
                }
                Magnitude::power_big(b, Exponent::int(e))
            }
            None => {
                let v: BigUint = part.parse().map_err(|_| bad())?;
                if v == BigUint::from(0u8) {
                    return Err(bad());
                }
                Magnitude::from_biguint(v)
            }
        };
        m = m.mul(&f);
    }
    Ok(m)
}

fn planner_options(p: &ProfileInput) -> PlannerOptions {
    PlannerOptions {
        zero_level: match p.r0 {
            ZeroArg::One => ZeroLevel::One,
            ZeroArg::Zero => ZeroLevel::Zero,
        },
        blocks: match p.blocks {
            BlocksArg::Interval => BlockReading::Interval,
            BlocksArg::Endpoints => BlockReading::Endpoints,
        },
        toy: p.toy,
    }
}

fn load_profile(p: &ProfileInput) -> Result<(DyadicProfile, DegreeSupport)> {
    let mut r: BTreeMap<u64, Magnitude> = BTreeMap::new();
    let mut degrees = DegreeSupport::new();
    if let Some(path) = &p.profile {
        let v = read_json(path)?;
        if v.get("r").is_some() {
            r.extend(DyadicProfile::from_json(&v)?.levels().clone());
        }
        if let Some(d) = v.get("degrees") {
            for (deg, c) in DegreeSupport::from_json(d)?.entries() {
                degrees.push(deg.clone(), c.clone());
            }
        }
    }
    for item in &p.level {
        let (n, m) = item
            .split_once('=')
            .ok_or_else(|| Error::Usage(format!("level must be N=MAGNITUDE, got `{item}`")))?;
        let n: u64 = n.trim().parse().map_err(|_| Error::Usage(format!("bad level `{n}`")))?;
        r.insert(n, parse_magnitude(m)?);
    }
    for item in &p.degree {
        let (d, c) = match item.split_once(':') {
            Some((d, c)) => (parse_magnitude(d)?, parse_magnitude(c)?),
            None => (parse_magnitude(item)?, Magnitude::one()),
        };
        degrees.push(d, c);
    }
    let profile = if r.is_empty() && !degrees.is_empty() {
        dyadic_profile(&degrees)?
    } else {
        DyadicProfile::new(r)
    };
    Ok((profile, degrees))
}

fn profile_config(p: &ProfileInput, profile: &DyadicProfile, degrees: &DegreeSupport) -> Value {
    json!({
        "options": planner_options(p).to_json(),
        "profile": profile.to_json(),
        "degrees": degrees.to_json(),
    })
}

fn schedule(a: &ScheduleArgs) -> Result<Outcome> {
    let (profile, degrees) = load_profile(&a.input)?;
    let opts = planner_options(&a.input);
    let validation = validate_theorem_a(&profile, &degrees, &opts)?;
    let chained = check_lemma33(&profile)?;
    let mut conditions: Vec<String> = validation.conditions.iter().map(|c| c.key.to_string()).collect();
    conditions.push(chained.key.into());
    let (sched, sched_ok) = match compute_e_schedule(&profile, &opts) {
        Ok(s) => {
            let ok = s.is_valid();
            (s.to_json(), ok)
        }
        Err(e) => (json!({"error": e.to_string()}), false),
    };
    for k in ["bracketing", "fourth_power", "e_range", "regime", "master", "disjoint"] {
        conditions.push(k.into());
    }
    Ok(Outcome {
        ok: validation.ok() && sched_ok,
        conditions,
        config: profile_config(&a.input, &profile, &degrees),
        result: json!({
            "validation": validation.to_json(),
            "chained_product": chained.to_json(),
            "schedule": sched,
        }),
    })
}

fn bounds(a: &BoundsArgs) -> Result<Outcome> {
    let (profile, degrees) = load_profile(&a.input)?;
    let opts = planner_options(&a.input);
    let n = parse_magnitude(&a.n)?;
    let s = compute_e_schedule(&profile, &opts)?;
    let b = eval_bounds(&s, &n)?;
    Ok(Outcome {
        ok: b.consistent(),
        conditions: vec!["bound_consistency".into(), "schedule_valid".into()],
        config: merge(profile_config(&a.input, &profile, &degrees), json!({"n": a.n})),
        result: json!({
            "e": s.e.iter().map(|(n, e)| (n.to_string(), json!(e))).collect::<Map<_, _>>(),
            "bounds": b.to_json(),
        }),
    })
}

fn quotient(a: &QuotientArgs, seed: u64) -> Result<Outcome> {
    let rels = load_relations(&a.input)?;
    let n = a.input.gens;
    let precision = a.precision.unwrap_or_else(|| default_precision_cap(n));
    let (cert, comm) = with_field!(a.field, f => {
        let ideal = TruncatedIdeal::build(f, &rels, n, precision)?;
        (certify_finite_dimensional(&ideal), commutativity_status(&ideal)?)
    });
    let threshold = if n >= 2 { Some(theorem2_threshold(n)?) } else { None };
    let findim = match &cert {
        Some(c) => json!({
            "certified": true,
            "k": c.k,
            "dims": c.dims,
            "total_dim": c.total_dim(),
            "power_series": "complete",
            "free_algebra": format!("nilpotent modulo words of degree > {precision}"),
        }),
        None => json!({"certified": false, "dims": Value::Null, "note": format!("not certified at precision {precision}")}),
    };
    let mut ok = cert.is_some();
    let audit = match a.audit {
        Some(t) => {
            let rep = audit_two_relations(t, seed, 4, 8)?;
            ok &= rep.ok();
            Some(rep.to_json())
        }
        None => None,
    };
    Ok(Outcome {
        ok,
        conditions: vec!["nilpotency_at_precision".into(), "commutator_membership".into()],
        config: merge(
            relation_config(&a.input, &rels),
            json!({"precision": precision, "field": a.field.to_string(), "audit": a.audit}),
        ),
        result: json!({
            "findim": findim,
            "commutativity": comm.to_json(),
            "relation_count": rels.len(),
            "threshold": threshold.as_ref().map(|t| t.to_json()),
            "audit": audit,
        }),
    })
}

fn c35(a: &C35Args) -> Result<Outcome> {
    let rep = gen_c35_schedule(a.count)?;
    let mut conditions: Vec<String> = rep.validation.conditions.iter().map(|c| c.key.to_string()).collect();
    conditions.extend(
        ["side_conditions", "schedule", "growth_upper", "growth_lower", "monotone", "exponential_refutation"]
            .iter()
            .map(|s| s.to_string()),
    );
    Ok(Outcome {
        ok: rep.ok(),
        conditions,
        config: json!({"count": a.count, "options": PlannerOptions::default().to_json()}),
        result: rep.to_json(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> (i32, Value) {
        let mut argv = vec!["gsg"];
        argv.extend(args);
        let (code, out) = run(argv);
        (code, serde_json::from_str(&out).unwrap_or(Value::Null))
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(["gsg"]).0, 2);
        assert_eq!(run(["gsg", "frobnicate"]).0, 2);
        assert_eq!(run(["gsg", "hilbert", "--field", "gfp:4"]).0, 2);
        assert_eq!(run(["gsg", "hilbert", "--relation", "x*"]).0, 2);
        assert_eq!(run(["gsg", "--help"]).0, 0);
    }

    #[test]
    fn hilbert_one_relation() {
        let (code, v) = go(&["hilbert", "--relation", "y*x", "--max-degree", "6"]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["series"], json!([2, 3, 4, 5, 6, 7]));
        assert_eq!(v["result"]["attains_minimum"], json!(true));
        assert_eq!(v["seed"], json!(0));
    }

    #[test]
    fn magnitudes() {
        let m = parse_magnitude("3*2^10").unwrap();
        assert!(m.cmp_exact(&Magnitude::from_u64(3072)).unwrap().is_eq());
        assert!(parse_magnitude("0").is_err());
    }

    #[test]
    fn schedule_exit_codes() {
        let (code, v) = go(&["schedule", "--level", "30=2^1000"]);
        assert_eq!(code, 0, "{v}");
        assert_eq!(v["result"]["schedule"]["levels"][0]["e"], json!(12));
        let (code, _) = go(&["schedule", "--level", "8=256"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn text_mode() {
        let (code, out) = run(["gsg", "--text", "c35", "--count", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("result.levels: [101]"));
    }
}
