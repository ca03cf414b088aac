//! Upper and lower growth bounds, and the doubly-exponential profile built on levels 101, 206060201.

use std::collections::BTreeMap;

use gs_growth::exact::Magnitude;
use gs_growth::planner::{compute_e_schedule, eval_bounds, gen_c35_schedule, DyadicProfile, PlannerOptions};

fn main() -> gs_growth::Result<()> {
    let p = DyadicProfile::new(BTreeMap::from([(8, Magnitude::pow2(16))]));
    let s = compute_e_schedule(&p, &PlannerOptions::default())?;
    for n in [4u64, 16, 1024] {
        let b = eval_bounds(&s, &Magnitude::from_u64(n))?;
        println!(
            "n={n}: k={:?} top={} product={} lower={:?} consistent={}",
            b.k,
            b.upper_top_level.as_ref().map_or("-".into(), |u| u.to_string()),
            b.upper_product,
            b.lower.iter().map(|l| l.quartic.to_string()).collect::<Vec<_>>(),
            b.consistent()
        );
    }

    let rep = gen_c35_schedule(2)?;
    println!("\nlevels {:?}, e = {:?}", rep.levels, rep.schedule.e);
    for g in &rep.growth {
        let tag = if g.informational { " (informational)" } else { "" };
        println!("  n=2^{:<3} {:<9} within 2^(3+4L+200L^3): {}{tag}", g.log_n, g.bound, g.check.ok);
    }
    if let Some(c) = &rep.lower_at_first {
        println!("  {}: {}", c.label, c.ok);
    }
    println!("  exponential growth refuted: {}", rep.refutation.ok);
    println!("  all verdicts: {}", rep.ok());
    Ok(())
}
