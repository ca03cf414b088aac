#![allow(dead_code)]

use gs_growth::algebra::{Element, Word};
use num::rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Up to three homogeneous relations on two generators, degrees 2..=5, 0/1 coefficients.
pub fn random_homogeneous(seed: u64) -> Vec<Element> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(1..=3);
    (0..count)
        .map(|_| loop {
            let k: u32 = rng.gen_range(2..=5);
            let density = rng.gen_range(1..=4);
            let terms: Vec<_> = (0..1u64 << k)
                .filter(|_| rng.gen_range(0..8) < density)
                .map(|i| (Word::new(k, i), BigRational::from_integer(1.into())))
                .collect();
            if !terms.is_empty() {
                break Element::from_terms(2, terms);
            }
        })
        .collect()
}
