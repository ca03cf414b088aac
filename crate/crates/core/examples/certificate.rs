//! Rational points where the truncated Golod-Shafarevich polynomial goes negative.

use gs_growth::series::{certify_infinite, fmt_q, verify_certificate, DegreeProfile, SearchParams};

fn main() -> gs_growth::Result<()> {
    let cases = [
        (2, vec![(3, 1)], 3),
        (2, vec![(2, 1)], 2),
        (3, vec![(2, 2)], 2),
        (2, vec![(2, 1), (3, 1)], 3),
    ];
    for (d, counts, m) in cases {
        let p = DegreeProfile::new(d, counts.clone())?;
        let rep = certify_infinite(&p, m, SearchParams::default())?;
        match &rep.certificate {
            Some(c) => println!(
                "d={d} r={counts:?}: P({}) = {} (verified {})",
                fmt_q(&c.witness),
                fmt_q(&c.value),
                verify_certificate(&p, c)
            ),
            None => println!(
                "d={d} r={counts:?}: none; grid minimum {} at {}, P(1) = {}",
                fmt_q(&rep.grid_min.0),
                fmt_q(&rep.grid_min.1),
                fmt_q(&rep.boundary_value)
            ),
        }
    }
    Ok(())
}
