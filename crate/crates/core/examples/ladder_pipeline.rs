//! Build a ladder, check its binary decompositions and compute the ideal E.

use std::collections::BTreeMap;

use gs_growth::exact::Gf2;
use gs_growth::ladder::{build_ladder, compute_e, ideal_containment_check, lemma12_suite, Prop1, Strategy, Targets};

fn main() -> gs_growth::Result<()> {
    let targets = Targets::from_schedule(4, &BTreeMap::from([(3, 1)]))?;
    let ladders = [
        ("lex", build_ladder(Gf2, Strategy::LexGreedy, 4, None)?),
        ("random(7)", build_ladder(Gf2, Strategy::Random(7), 4, None)?),
        ("scheduled", build_ladder(Gf2, Strategy::LexGreedy, 4, Some(targets))?),
    ];
    for (name, l) in &ladders {
        let dims: Vec<usize> = (0..=4).map(|m| l.dim_v(m)).collect();
        let suite = lemma12_suite(l, 12, 8)?;
        println!("{name}: dim V(2^m) = {dims:?}, decompositions ok = {} ({} pairs)", suite.ok(), suite.absorption_pairs);
        let mut prev = None;
        for k in 1..=7 {
            let e = compute_e(l, k)?;
            let p = Prop1::new(l, k, e.dim())?;
            let shift = match &prev {
                Some(q) => ideal_containment_check(q, &e)?.to_string(),
                None => "-".into(),
            };
            println!("  k={k}: dim E = {:>3}, codim {:>3} <= {:>4}: {}, shifts contained: {shift}", e.dim(), p.lhs, p.rhs, p.ok);
            prev = Some(e);
        }
    }
    Ok(())
}
