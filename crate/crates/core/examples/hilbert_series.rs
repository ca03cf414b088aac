//! Hilbert series of small quotients against the Golod-Shafarevich minimum.

use gs_growth::algebra::parse_relations;
use gs_growth::exact::Gf2;
use gs_growth::series::{gs_check, gs_min_series, hilbert_quotient, DegreeProfile, SeriesBound};

fn main() -> gs_growth::Result<()> {
    let n = 10;
    for text in ["", "y*x", "x*y - y*x", "x^3\ny^3", "x*y*x + y*y*y"] {
        let rels = parse_relations(text, 2, 20)?;
        let dims = hilbert_quotient(&Gf2, &rels, 2, n, 20)?;
        let profile = DegreeProfile::of_relations(2, &rels)?;
        let min = gs_min_series(&profile, n);
        let series = SeriesBound::from_usize(&dims);
        let label = if text.is_empty() { "(free)".to_string() } else { text.replace('\n', ", ") };
        println!("{label:>16}  {:?}", &dims[1..]);
        let min: Vec<String> = min.coeffs[1..].iter().map(|c| c.to_string()).collect();
        println!("{:>16}  [{}]  gs holds: {}", "minimum", min.join(", "), gs_check(&series, &profile));
    }
    Ok(())
}
