//! Finite-dimensional quotients by inhomogeneous relations, and whether they commute.

use gs_growth::algebra::parse_relations;
use gs_growth::exact::Rationals;
use gs_growth::quotient::{
    audit_two_relations, certify_finite_dimensional, commutative_square_zero, commutativity_status,
    theorem2_threshold, TruncatedIdeal,
};

fn main() -> gs_growth::Result<()> {
    for text in ["x*y - y*x\nx^2\ny^2", "x^2 + x*y*x\ny^2 - y*x*y", "x^2\ny^2", "x*y - y*x"] {
        let ideal = TruncatedIdeal::build(Rationals, &parse_relations(text, 2, 20)?, 2, 8)?;
        let cert = certify_finite_dimensional(&ideal);
        println!(
            "{:<28} nilpotent at {:?}, dims {:?}, {:?}",
            text.replace('\n', ", "),
            cert.as_ref().map(|c| c.k),
            cert.as_ref().map(|c| c.dims.iter().take_while(|d| **d > 0).copied().collect::<Vec<_>>()),
            commutativity_status(&ideal)?
        );
    }
    for n in 2..=5 {
        let t = theorem2_threshold(n)?;
        println!("n={n}: at most {} relations force noncommutativity; {} suffice for a commutative one", t.d, t.commutative_construction);
    }
    let three = TruncatedIdeal::build(Rationals, &commutative_square_zero(3), 3, 6)?;
    println!("n=3 construction: {:?}", commutativity_status(&three)?);
    let audit = audit_two_relations(25, 3, 4, 8)?;
    println!("audit: {} of {} certified, counterexamples {}", audit.certified, audit.trials, audit.counterexamples.len());
    Ok(())
}
