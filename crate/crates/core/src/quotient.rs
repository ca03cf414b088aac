//! Quotients by inhomogeneous relations, truncated at a precision `D`.
//!
//! Relations have order at least two, so multiplying by a word only raises
//! degrees and truncation commutes with the ideal operations. The ideal is
//! represented inside `F_{<=D}`, the span of words of degree `1..=D`, with
//! columns ordered by degree and then lexicographically; every row's pivot is
//! its lowest-degree term, so pivot counts per degree give the dimensions of
//! the associated graded quotient.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num::rational::BigRational;
use num::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::word::pow;
use crate::algebra::{Element, Word};
use crate::error::{Error, Result};
use crate::exact::{Field, Gfp};

/// Largest number of columns a truncated ideal may use.
pub const MAX_COLUMNS: usize = 1 << 20;

/// Default precision cap by generator count.
pub fn default_precision_cap(n: u32) -> usize {
    match n {
        0..=2 => 10,
        3 => 8,
        4 => 6,
        _ => 5,
    }
}

type SparseRow<F> = Vec<(usize, <F as Field>::Elem)>;

/// `span{truncate_D(u f v)}` for relations `f` and words `u`, `v`.
#[derive(Clone, Debug)]
pub struct TruncatedIdeal<F: Field> {
    field: F,
    n: u32,
    precision: usize,
    offsets: Vec<usize>,
    rows: Vec<SparseRow<F>>,
    pivot_row: HashMap<usize, usize>,
}

impl<F: Field> TruncatedIdeal<F> {
    pub fn build(field: F, relations: &[Element], n: u32, precision: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("need at least one generator".into()));
        }
        let mut offsets = vec![0usize; precision + 2];
        for k in 1..=precision + 1 {
            offsets[k] = offsets[k - 1] + if k == 1 { 0 } else { pow(n, (k - 1) as u32) as usize };
            if offsets[k] > MAX_COLUMNS {
                return Err(Error::DegreeCap {
                    degree: precision,
                    cap: k.saturating_sub(2),
                });
            }
        }
        let mut ideal = Self {
            field,
            n,
            precision,
            offsets,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        };
        let mut queue: VecDeque<SparseRow<F>> = VecDeque::new();
        for f in relations {
            if f.gens() != n {
                return Err(Error::Invalid("relation over a different generator count".into()));
            }
            match f.order() {
                None => continue,
                Some(o) if o < 2 => {
                    return Err(Error::Invalid(format!(
                        "relation `{f}` has a term of degree {o}; every word must have degree at least 2"
                    )))
                }
                _ => {}
            }
            queue.push_back(ideal.row_of(&f.truncate(precision))?);
        }
        while let Some(v) = queue.pop_front() {
            let Some(r) = ideal.insert(v) else { continue };
            for l in 0..n {
                queue.push_back(ideal.multiply(&r, l, true));
                queue.push_back(ideal.multiply(&r, l, false));
            }
        }
        Ok(ideal)
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn gens(&self) -> u32 {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn col(&self, w: &Word) -> usize {
        self.offsets[w.deg as usize] + w.idx as usize
    }

    fn word(&self, col: usize) -> Word {
        let deg = self.offsets.partition_point(|&o| o <= col) - 1;
        Word::new(deg as u32, (col - self.offsets[deg]) as u64)
    }

    fn row_of(&self, e: &Element) -> Result<SparseRow<F>> {
        let mut m: BTreeMap<usize, F::Elem> = BTreeMap::new();
        for (w, c) in e.terms() {
            if w.deg == 0 || w.deg as usize > self.precision {
                continue;
            }
            let c = self.field.from_rational(c)?;
            if !self.field.is_zero(&c) {
                m.insert(self.col(w), c);
            }
        }
        Ok(m.into_iter().collect())
    }

    /// `x_l * v` (left) or `v * x_l`, dropping terms beyond the precision.
    fn multiply(&self, v: &SparseRow<F>, l: u32, left: bool) -> SparseRow<F> {
        let x = Word::letter(l);
        let mut out: Vec<(usize, F::Elem)> = v
            .iter()
            .filter_map(|(c, a)| {
                let w = self.word(*c);
                if w.deg as usize >= self.precision {
                    return None;
                }
                let p = if left { x.concat(&w, self.n) } else { w.concat(&x, self.n) };
                Some((self.col(&p), a.clone()))
            })
            .collect();
        out.sort_by_key(|(c, _)| *c);
        out
    }

    fn reduce(&self, v: SparseRow<F>) -> BTreeMap<usize, F::Elem> {
        let f = &self.field;
        let mut m: BTreeMap<usize, F::Elem> = v.into_iter().collect();
        let mut cursor = 0usize;
        loop {
            let Some((&c, a)) = m.range(cursor..).next() else { break };
            if let Some(&ri) = self.pivot_row.get(&c) {
                let a = f.neg(a);
                for (col, b) in &self.rows[ri] {
                    let slot = m.entry(*col).or_insert_with(|| f.zero());
                    *slot = f.add(slot, &f.mul(&a, b));
                    if f.is_zero(slot) {
                        m.remove(col);
                    }
                }
            }
            cursor = c + 1;
        }
        m
    }

    fn insert(&mut self, v: SparseRow<F>) -> Option<SparseRow<F>> {
        let f = self.field.clone();
        let m = self.reduce(v);
        let (&p, lead) = m.iter().next()?;
        let inv = f.inv(lead).expect("nonzero");
        let row: SparseRow<F> = m.iter().map(|(c, a)| (*c, f.mul(a, &inv))).collect();
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(row.clone());
        Some(row)
    }

    /// Membership of `truncate_D(e)`.
    pub fn contains(&self, e: &Element) -> Result<bool> {
        Ok(self.reduce(self.row_of(&e.truncate(self.precision))?).is_empty())
    }

    /// Pivots per degree `1..=D`.
    pub fn pivot_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.precision + 1];
        for p in self.pivot_row.keys() {
            counts[self.word(*p).deg as usize] += 1;
        }
        counts[1..].to_vec()
    }

    /// `dim` of the associated graded quotient in degrees `1..=D`.
    pub fn quotient_dims(&self) -> Vec<usize> {
        self.pivot_counts()
            .iter()
            .enumerate()
            .map(|(i, p)| pow(self.n, (i + 1) as u32) as usize - p)
            .collect()
    }

    /// Whether every word of degree `k` lies in the truncated ideal.
    pub fn contains_all_words(&self, k: usize) -> bool {
        if k == 0 || k > self.precision {
            return false;
        }
        (0..pow(self.n, k as u32)).all(|i| {
            let col = self.offsets[k] + i as usize;
            self.reduce(vec![(col, self.field.one())]).is_empty()
        })
    }
}

/// Nilpotency of the truncated quotient: every word of degree `k` is in the ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinDimCertificate {
    pub k: usize,
    pub precision: usize,
    pub dims: Vec<usize>,
}

impl FinDimCertificate {
    pub fn total_dim(&self) -> usize {
        self.dims.iter().take(self.k.saturating_sub(1)).sum()
    }
}

/// Least `k <= D` with all degree-`k` words in the ideal, or `None`.
pub fn certify_finite_dimensional<F: Field>(ideal: &TruncatedIdeal<F>) -> Option<FinDimCertificate> {
    let k = (1..=ideal.precision()).find(|&k| ideal.contains_all_words(k))?;
    Some(FinDimCertificate {
        k,
        precision: ideal.precision(),
        dims: ideal.quotient_dims(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Commutativity {
    /// `x_i x_j - x_j x_i` is outside the ideal even at precision `D`; generators are 1-based.
    Noncommutative { i: u32, j: u32 },
    CommutativeAtPrecision(usize),
}

impl Commutativity {
    pub fn to_json(&self) -> Value {
        match self {
            Self::Noncommutative { i, j } => json!({"status": "noncommutative", "witness": [i, j]}),
            Self::CommutativeAtPrecision(d) => {
                json!({"status": format!("commutative-at-precision-{d}"), "witness": Value::Null})
            }
        }
    }
}

/// Tests every commutator in order; the first one outside the ideal is the witness.
pub fn commutativity_status<F: Field>(ideal: &TruncatedIdeal<F>) -> Result<Commutativity> {
    let n = ideal.gens();
    for i in 0..n {
        for j in i + 1..n {
            let c = Element::from_terms(
                n,
                [
                    (Word::from_letters(n, &[i, j]), BigRational::one()),
                    (Word::from_letters(n, &[j, i]), -BigRational::one()),
                ],
            );
            if !ideal.contains(&c)? {
                return Ok(Commutativity::Noncommutative { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(Commutativity::CommutativeAtPrecision(ideal.precision()))
}

/// Relation count below which a finite-dimensional quotient cannot be commutative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Threshold {
    pub n: u32,
    pub d: u64,
    /// Count realized by `x_i x_j - x_j x_i`, `x_i^2`: finite-dimensional and commutative.
    pub commutative_construction: u64,
    /// Count for which existence of a commutative finite-dimensional quotient is open.
    pub open_gap: u64,
}

pub fn theorem2_threshold(n: u32) -> Result<Threshold> {
    if n < 2 {
        return Err(Error::Invalid("need at least two generators".into()));
    }
    let full = n as u64 * (n as u64 + 1) / 2;
    Ok(Threshold {
        n,
        d: if n == 2 { 2 } else { full - 2 },
        commutative_construction: full,
        open_gap: full - 1,
    })
}

impl Threshold {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "d": self.d,
            "commutative_construction": self.commutative_construction,
            "open_gap": self.open_gap,
        })
    }
}

/// `x_i x_j - x_j x_i` for `i < j` and `x_i^2`: `n(n+1)/2` relations.
pub fn commutative_square_zero(n: u32) -> Vec<Element> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(Element::from_terms(
                n,
                [
                    (Word::from_letters(n, &[i, j]), BigRational::one()),
                    (Word::from_letters(n, &[j, i]), -BigRational::one()),
                ],
            ));
        }
        out.push(Element::monomial(n, Word::from_letters(n, &[i, i]), BigRational::one()));
    }
    out
}

/// The prime used by the randomized audit.
pub const AUDIT_PRIME: u32 = 2147483647;

/// Coefficients uniform in `{-1, 0, 1}` on every word of degree `2..=max_degree`; never zero.
pub fn random_relation(rng: &mut ChaCha8Rng, n: u32, max_degree: usize) -> Element {
    loop {
        let mut terms = Vec::new();
        for k in 2..=max_degree {
            for idx in 0..pow(n, k as u32) {
                let c: i64 = rng.gen_range(-1..=1);
                if c != 0 {
                    terms.push((Word::new(k as u32, idx), BigRational::from_integer(c.into())));
                }
            }
        }
        let e = Element::from_terms(n, terms);
        if !e.is_zero() {
            return e;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub seed: u64,
    pub trials: usize,
    pub precision: usize,
    pub certified: usize,
    /// Presentations certified finite-dimensional without a noncommutativity witness.
    pub counterexamples: Vec<Vec<String>>,
}

impl AuditReport {
    pub fn ok(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "trials": self.trials,
            "precision": self.precision,
            "field": format!("gfp:{AUDIT_PRIME}"),
            "certified": self.certified,
            "counterexamples": self.counterexamples,
        })
    }
}

/// Random two-relation presentations on two generators: every finite-dimensional
/// certificate must come with a commutator outside the ideal.
pub fn audit_two_relations(trials: usize, seed: u64, max_degree: usize, precision: usize) -> Result<AuditReport> {
    let field = Gfp::new(AUDIT_PRIME)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = AuditReport {
        seed,
        trials,
        precision,
        certified: 0,
        counterexamples: Vec::new(),
    };
    for _ in 0..trials {
        let rels = [random_relation(&mut rng, 2, max_degree), random_relation(&mut rng, 2, max_degree)];
        let ideal = TruncatedIdeal::build(field, &rels, 2, precision)?;
        if certify_finite_dimensional(&ideal).is_some() {
            rep.certified += 1;
            if commutativity_status(&ideal)? != (Commutativity::Noncommutative { i: 1, j: 2 }) {
                rep.counterexamples.push(rels.iter().map(|r| r.to_string()).collect());
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_relations;
    use crate::exact::{Gfp, Rationals};

    fn ideal(text: &str, d: usize) -> TruncatedIdeal<Rationals> {
        TruncatedIdeal::build(Rationals, &parse_relations(text, 2, 20).unwrap(), 2, d).unwrap()
    }

    #[test]
    fn commutator_ideal_dimensions() {
        let i = ideal("x*y - y*x", 4);
        assert_eq!(i.pivot_counts(), vec![0, 1, 4, 11]);
        assert_eq!(i.quotient_dims(), vec![2, 3, 4, 5]);
        assert!(ideal("", 4).rank() == 0);
    }

    #[test]
    fn truncation() {
        let i = ideal("x^2 + x^3", 3);
        assert!(i.contains(&parse_relations("x^3", 2, 20).unwrap()[0]).unwrap());
        assert!(i.contains(&parse_relations("x^2", 2, 20).unwrap()[0]).unwrap());
        assert!(!i.contains(&parse_relations("x*y", 2, 20).unwrap()[0]).unwrap());
    }

    #[test]
    fn commutative_example() {
        let i = ideal("x*y - y*x\nx^2\ny^2", 8);
        let c = certify_finite_dimensional(&i).unwrap();
        assert_eq!(c.k, 3);
        assert_eq!(&c.dims[..3], &[2, 1, 0]);
        assert_eq!(commutativity_status(&i).unwrap(), Commutativity::CommutativeAtPrecision(8));
        let i3 = TruncatedIdeal::build(Gfp::new(101).unwrap(), &commutative_square_zero(3), 3, 8).unwrap();
        assert_eq!(certify_finite_dimensional(&i3).unwrap().k, 4);
        assert_eq!(commutativity_status(&i3).unwrap(), Commutativity::CommutativeAtPrecision(8));
    }

    #[test]
    fn not_certified_and_witnesses() {
        assert!(certify_finite_dimensional(&ideal("x*y - y*x", 8)).is_none());
        let sq = ideal("x^2\ny^2", 6);
        assert_eq!(commutativity_status(&sq).unwrap(), Commutativity::Noncommutative { i: 1, j: 2 });
        assert_eq!(commutativity_status(&ideal("", 6)).unwrap(), Commutativity::Noncommutative { i: 1, j: 2 });
        let all = ideal("x^2\ny^2\nx*y\ny*x", 4);
        let c = certify_finite_dimensional(&all).unwrap();
        assert_eq!((c.k, c.dims[0], c.dims[1]), (2, 2, 0));
    }

    #[test]
    fn order_one_rejected() {
        let rs = parse_relations("x + y*y", 2, 20).unwrap();
        assert!(TruncatedIdeal::build(Rationals, &rs, 2, 4).is_err());
    }

    #[test]
    fn thresholds() {
        assert_eq!(theorem2_threshold(2).unwrap().d, 2);
        assert_eq!(theorem2_threshold(3).unwrap().d, 4);
        assert_eq!(theorem2_threshold(5).unwrap().d, 13);
        assert!(theorem2_threshold(1).is_err());
    }

    #[test]
    fn small_audit() {
        let rep = audit_two_relations(20, 7, 4, 8).unwrap();
        assert!(rep.ok(), "{:?}", rep.counterexamples);
    }
}
