mod common;

use std::collections::BTreeMap;

use gs_growth::algebra::{parse_element, Echelon, Element, Word};
use gs_growth::exact::{BitVec, Exponent, Gf2, Magnitude};
use gs_growth::planner::{
    bracket_e, check_lemma33, compute_e_schedule, eval_bounds, random_valid_profile, validate_theorem_a,
    DyadicProfile, PlannerOptions,
};
use gs_growth::quotient::TruncatedIdeal;
use gs_growth::series::{gs_check, hilbert_quotient, DegreeProfile, SeriesBound};
use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use proptest::prelude::*;

fn element(d: u32, max_deg: u32) -> impl Strategy<Value = Element> {
    prop::collection::vec((1..=max_deg, any::<u64>(), -3i64..=3, 1i64..=3), 0..6).prop_map(move |terms| {
        Element::from_terms(
            d,
            terms.into_iter().map(|(k, idx, num, den)| {
                let w = Word::new(k, idx % (d as u64).pow(k));
                (w, BigRational::new(BigInt::from(num), BigInt::from(den)))
            }),
        )
    })
}

fn bits(width: usize) -> impl Strategy<Value = BitVec> {
    prop::collection::vec(any::<bool>(), width).prop_map(|v| {
        let mut b = BitVec::zeros(v.len());
        for (i, x) in v.into_iter().enumerate() {
            b.set(i, x);
        }
        b
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn echelon_form_ignores_insertion_order(rows in prop::collection::vec(bits(12), 0..10)) {
        let mut fwd = Echelon::new(Gf2, 12);
        let mut rev = Echelon::new(Gf2, 12);
        for r in &rows { fwd.insert(r.clone()); }
        for r in rows.iter().rev() { rev.insert(r.clone()); }
        prop_assert_eq!(fwd.into_rref(), rev.into_rref());
    }

    #[test]
    fn rank_bounded_and_rows_contained(rows in prop::collection::vec(bits(10), 0..14)) {
        let mut e = Echelon::new(Gf2, 10);
        for r in &rows { e.insert(r.clone()); }
        prop_assert!(e.rank() <= rows.len().min(10));
        for r in &rows { prop_assert!(e.contains(r)); }
    }

    #[test]
    fn print_then_parse(e in element(2, 4)) {
        let back = parse_element(&e.to_string(), 2, 20).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn product_is_associative(a in element(2, 3), b in element(2, 3), c in element(2, 3)) {
        let ab_c = a.mul(&b, 12).unwrap().mul(&c, 12).unwrap();
        let a_bc = a.mul(&b.mul(&c, 12).unwrap(), 12).unwrap();
        prop_assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn magnitude_order_matches_integers(
        a in 1u64..5000, ea in 0u64..40, b in 1u64..5000, eb in 0u64..40, c in 2u64..9, ec in 0u64..20
    ) {
        let x = Magnitude::from_u64(a).mul(&Magnitude::pow2(ea)).mul(&Magnitude::power(c, Exponent::int(ec)));
        let y = Magnitude::from_u64(b).mul(&Magnitude::pow2(eb));
        let xi = BigUint::from(a) << ea as usize;
        let xi = xi * BigUint::from(c).pow(ec as u32);
        let yi = BigUint::from(b) << eb as usize;
        prop_assert_eq!(x.cmp_exact(&y).unwrap(), xi.cmp(&yi));
        prop_assert_eq!(x.to_biguint(1 << 12), Some(xi));
    }

    #[test]
    fn bracket_e_brackets(log_r in 1u64..5000, odd in 0u64..1000) {
        let r = Magnitude::pow2(log_r).mul(&Magnitude::from_u64(2 * odd + 1));
        let e = bracket_e(&r).unwrap();
        let ri = (BigUint::from(1u8) << log_r as usize) * BigUint::from(2 * odd + 1);
        let lg = ri.bits() - 1;
        prop_assert!(1u64 << (e - 3) <= lg && lg < 1u64 << (e - 2));
        prop_assert!(ri.pow(4) <= BigUint::from(1u8) << (1usize << e));
    }

    #[test]
    fn schedule_records_every_level(levels in prop::collection::btree_map(8u64..200, 1u64..4000, 0..4)) {
        let p = DyadicProfile::new(levels.iter().map(|(n, a)| (*n, Magnitude::pow2(*a))).collect::<BTreeMap<_, _>>());
        let s = compute_e_schedule(&p, &PlannerOptions::default()).unwrap();
        prop_assert_eq!(s.e.len(), levels.len());
        for (n, a) in &levels {
            prop_assert_eq!(s.e[n], bracket_e(&Magnitude::pow2(*a)).unwrap());
            prop_assert_eq!(s.block(*n).unwrap().len() as u64, s.e[n] + 1);
        }
    }

    #[test]
    fn valid_profiles_chain(seed in any::<u64>()) {
        let (p, d) = random_valid_profile(seed);
        if validate_theorem_a(&p, &d, &PlannerOptions::default()).unwrap().ok() {
            prop_assert!(check_lemma33(&p).unwrap().holds());
        }
    }

    #[test]
    fn bounds_are_consistent_on_valid_schedules(seed in any::<u64>(), extra in 0u64..60) {
        let (p, _) = random_valid_profile(seed);
        let s = compute_e_schedule(&p, &PlannerOptions::default()).unwrap();
        prop_assume!(s.is_valid());
        let top = *p.levels().keys().next_back().unwrap();
        let b = eval_bounds(&s, &Magnitude::pow2(top + extra)).unwrap();
        prop_assert!(b.consistent(), "{:?}", b.checks.iter().filter(|c| !c.ok).collect::<Vec<_>>());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn truncation_is_coherent(seed in any::<u64>()) {
        let rels = common::random_homogeneous(seed);
        let long = hilbert_quotient(&Gf2, &rels, 2, 9, 20).unwrap();
        let short = hilbert_quotient(&Gf2, &rels, 2, 6, 20).unwrap();
        prop_assert_eq!(&long[..7], &short[..]);
        let ideal = TruncatedIdeal::build(Gf2, &rels, 2, 6).unwrap();
        let p = DegreeProfile::of_relations(2, &rels).unwrap();
        let mut unital = vec![1];
        unital.extend(ideal.quotient_dims());
        prop_assert_eq!(&unital, &short);
        prop_assert!(gs_check(&SeriesBound::from_usize(&unital), &p));
    }
}
