//! Validate dyadic profiles and schedule the exponents e(n).

use std::collections::BTreeMap;

use gs_growth::exact::Magnitude;
use gs_growth::planner::{
    bracket_e, check_lemma33, compute_e_schedule, random_valid_profile, validate_theorem_a, DegreeSupport,
    DyadicProfile, PlannerOptions,
};

fn main() -> gs_growth::Result<()> {
    for r in [Magnitude::from_u64(2), Magnitude::from_u64(256), Magnitude::pow2_pow2(10)] {
        println!("e({r}) = {}", bracket_e(&r)?);
    }

    let opts = PlannerOptions::default();
    let (p, d) = random_valid_profile(11);
    let v = validate_theorem_a(&p, &d, &opts)?;
    let s = compute_e_schedule(&p, &opts)?;
    println!("\nseeded profile, levels {:?}: valid {}, chained {}", p.support(), v.ok(), check_lemma33(&p)?.holds());
    for (n, e) in &s.e {
        println!("  n={n}: e={e}, S=[{}, {}], t={}", n - 1 - e, n - 1, s.t[n]);
    }
    println!("  schedule checks pass: {}", s.is_valid());

    let two = DyadicProfile::new(BTreeMap::from([(8, Magnitude::pow2(16)), (20, Magnitude::pow2(600))]));
    let v = validate_theorem_a(&two, &DegreeSupport::new(), &opts)?;
    println!("\nlevels 8 and 20: failing {:?}", v.failing());
    for c in &v.condition("pairwise_upper").unwrap().checks {
        println!("  {}: {} < {} is {}", c.label, c.lhs, c.rhs, c.ok);
    }
    Ok(())
}
