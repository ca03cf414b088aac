//! The ideal `E` of a ladder and the dimension bound on `A/E`.
//!
//! For `2^{n-1} <= k < 2^n`, `r ∈ E(k)` when every `α r β` of degree `2^{n+1}`
//! lies in `W = U(2^n)A(2^n) + A(2^n)U(2^n) = ker(pi_n ⊗ pi_n)`.
//!
//! For a fixed position `j` of `r`, the split at `2^n` cuts `r` into a left
//! piece and a right piece. The constraints `(pi_n ⊗ pi_n)(α r β) = 0` over all
//! `α`, `β` are the products `λ ⊗ μ`, where `λ` ranges over the functionals
//! `s ↦ pi_n(α' s β')[i]` on the left piece and `μ` over their right-hand
//! counterparts, so only those two small spans are ever materialised.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use super::decomposition::{segments, Order};
use super::Ladder;
use crate::algebra::word::pow;
use crate::algebra::{Echelon, Subspace, Word};
use crate::error::{Error, Result};
use crate::exact::Field;

/// `E(k)` is computed while `2^{n+1}` stays within this degree.
pub const E_DEGREE_CAP: usize = 16;

/// `n` with `2^{n-1} <= k < 2^n`.
fn window_level(k: usize) -> u32 {
    usize::BITS - k.leading_zeros()
}

/// Basis of `span{ s ↦ pi_n(α s β)[i] }` over `α ∈ M(a)`, `β ∈ M(b)`, as vectors over `M(c)`.
fn functionals<F: Field>(ladder: &Ladder<F>, n: u32, a: usize, c: usize, b: usize) -> Vec<F::Vector> {
    let f = ladder.field();
    let width = 1usize << c;
    let deg = (a + b + c) as u32;
    let mut e = Echelon::new(f.clone(), width);
    'fill: for al in 0..pow(2, a as u32) {
        for be in 0..pow(2, b as u32) {
            let mut by_coord: BTreeMap<usize, Vec<(usize, F::Elem)>> = BTreeMap::new();
            for s in 0..width as u64 {
                let w = Word::new(deg, ((al << c) + s) << b | be);
                for (i, x) in ladder.project(n, w) {
                    by_coord.entry(i).or_default().push((s as usize, x));
                }
            }
            for entries in by_coord.values() {
                e.insert(f.from_sparse(width, entries));
                if e.is_full() {
                    break 'fill;
                }
            }
        }
    }
    e.rows().to_vec()
}

/// `E(k)` as a subspace of `A(k)`.
pub fn compute_e<F: Field>(ladder: &Ladder<F>, k: usize) -> Result<Subspace<F>> {
    if k == 0 {
        return Err(Error::Invalid("E is computed in degrees k >= 1".into()));
    }
    let n = window_level(k);
    let half = 1usize << n;
    if 2 * half > E_DEGREE_CAP {
        return Err(Error::DegreeCap {
            degree: 2 * half,
            cap: E_DEGREE_CAP,
        });
    }
    ladder.level(n)?;
    let f = ladder.field();
    let width = 1usize << k;
    let mut rows = Echelon::new(f.clone(), width);
    let mut memo: HashMap<(usize, usize, usize), Vec<F::Vector>> = HashMap::new();
    for j in 0..=2 * half - k {
        let left = half.saturating_sub(j).min(k);
        let right = k - left;
        let (a, b) = (j.min(half), half - j.min(half) - left);
        let a2 = j.max(half) - half;
        let b2 = half - a2 - right;
        for key in [(a, left, b), (a2, right, b2)] {
            memo.entry(key).or_insert_with(|| functionals(ladder, n, key.0, key.1, key.2));
        }
        let lam = &memo[&(a, left, b)];
        let mu = &memo[&(a2, right, b2)];
        for l in lam {
            let ln = f.nonzeros(l);
            for m in mu {
                let mn = f.nonzeros(m);
                let mut entries = Vec::with_capacity(ln.len() * mn.len());
                for (s1, x) in &ln {
                    for (s2, y) in &mn {
                        entries.push((s1 << right | s2, f.mul(x, y)));
                    }
                }
                rows.insert(f.from_sparse(width, &entries));
                if rows.is_full() {
                    return Ok(Subspace::zero(f.clone(), 2, k));
                }
            }
        }
    }
    Ok(Subspace::from_echelon(2, k, rows).annihilator())
}

/// `x E(k) + E(k) x + y E(k) + E(k) y ⊆ E(k+1)`.
pub fn ideal_containment_check<F: Field>(e_k: &Subspace<F>, e_next: &Subspace<F>) -> Result<bool> {
    let k = e_k.degree();
    if e_next.degree() != k + 1 {
        return Err(Error::DegreeMismatch(k + 1, e_next.degree()));
    }
    let f = e_k.field();
    let n = 1usize << (k + 1);
    for r in e_k.rows() {
        let nz = f.nonzeros(r);
        for l in 0..2usize {
            let right: Vec<_> = nz.iter().map(|(i, c)| (i << 1 | l, c.clone())).collect();
            let left: Vec<_> = nz.iter().map(|(i, c)| (l << k | i, c.clone())).collect();
            if !e_next.contains(&f.from_sparse(n, &right)) || !e_next.contains(&f.from_sparse(n, &left)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop1 {
    pub k: usize,
    pub dim_e: usize,
    /// `2^k - dim E(k)`.
    pub lhs: u128,
    /// `sum_j dim V^<(k-j) dim V^>(j)`.
    pub rhs: u128,
    pub ok: bool,
}

impl Prop1 {
    pub fn new<F: Field>(ladder: &Ladder<F>, k: usize, dim_e: usize) -> Result<Self> {
        let dim = |m: usize, o: Order| -> Result<u128> {
            let parts = segments(m, o);
            ladder.level(parts.iter().copied().max().unwrap_or(0))?;
            Ok(ladder.dim_v_product(&parts))
        };
        let mut rhs = 0u128;
        for j in 0..=k {
            rhs += dim(k - j, Order::Ascending)? * dim(j, Order::Descending)?;
        }
        let lhs = (1u128 << k) - dim_e as u128;
        Ok(Self {
            k,
            dim_e,
            lhs,
            rhs,
            ok: lhs <= rhs,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "dim_E": self.dim_e,
            "codim_E": self.lhs.to_string(),
            "bound": self.rhs.to_string(),
            "ok": self.ok,
        })
    }
}

pub fn prop1_check<F: Field>(ladder: &Ladder<F>, k: usize) -> Result<Prop1> {
    let e = compute_e(ladder, k)?;
    Prop1::new(ladder, k, e.dim())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub l: u32,
    pub dim_v: usize,
    /// Majority last letter of `V(2^{l-1})`; ties go to `x`.
    pub letter: u32,
    pub p: usize,
    pub dim_e: usize,
    pub independent: bool,
}

impl Witness {
    pub fn to_json(&self) -> Value {
        json!({
            "l": self.l,
            "dim_V": self.dim_v,
            "letter": if self.letter == 0 { "x" } else { "y" },
            "p": self.p,
            "dim_E": self.dim_e,
            "independent": self.independent,
            "half_bound": 2 * self.p >= self.dim_v,
        })
    }
}

/// Strips the majority last letter from the words of `V(2^{l-1})` and tests
/// whether the stripped words stay independent modulo `E(2^{l-1} - 1)`.
pub fn lemma32_witness<F: Field>(ladder: &Ladder<F>, l: u32) -> Result<Witness> {
    if l < 2 {
        return Err(Error::Invalid("need l >= 2".into()));
    }
    let level = ladder.level(l - 1)?;
    let deg = level.degree() as u32;
    let words = level.v_words();
    let ends_x = words.iter().filter(|w| w.last_letter(2) == 0).count();
    let letter = if 2 * ends_x >= words.len() { 0 } else { 1 };
    let stripped: Vec<Word> = words
        .iter()
        .filter(|w| w.last_letter(2) == letter)
        .map(|w| w.split(deg - 1, 2).0)
        .collect();
    let k = deg as usize - 1;
    let e = compute_e(ladder, k)?;
    let f = ladder.field();
    let mut ech = e.echelon();
    let mut independent = true;
    for w in &stripped {
        if !ech.insert(f.from_sparse(1 << k, &[(w.idx as usize, f.one())])) {
            independent = false;
        }
    }
    Ok(Witness {
        l,
        dim_v: words.len(),
        letter,
        p: stripped.len(),
        dim_e: e.dim(),
        independent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Gf2;
    use crate::ladder::{build_ladder, Strategy, Targets};

    #[test]
    fn levels_of_degrees() {
        assert_eq!(window_level(1), 1);
        assert_eq!(window_level(3), 2);
        assert_eq!(window_level(4), 3);
        assert_eq!(window_level(7), 3);
    }

    #[test]
    fn trivial_ladder_has_no_e() {
        let l = build_ladder(Gf2, Strategy::Trivial, 3, None).unwrap();
        for k in 1..=7 {
            assert_eq!(compute_e(&l, k).unwrap().dim(), 0);
        }
        let p = prop1_check(&l, 3).unwrap();
        assert_eq!((p.lhs, p.rhs, p.ok), (8, 32, true));
        assert!(compute_e(&l, 8).is_err());
    }

    #[test]
    fn lex_greedy_degree_one() {
        let l = build_ladder(Gf2, Strategy::LexGreedy, 3, None).unwrap();
        assert_eq!(compute_e(&l, 1).unwrap().dim(), 0);
        let p = prop1_check(&l, 2).unwrap();
        assert!(p.ok);
        let w = lemma32_witness(&l, 2).unwrap();
        assert_eq!((w.dim_v, w.p, w.letter, w.independent), (2, 1, 0, true));
    }

    #[test]
    fn e_is_an_ideal_and_bounded() {
        let t = Targets::from_schedule(3, &BTreeMap::from([(3, 1)])).unwrap();
        for l in [
            build_ladder(Gf2, Strategy::LexGreedy, 3, None).unwrap(),
            build_ladder(Gf2, Strategy::LexGreedy, 3, Some(t)).unwrap(),
            build_ladder(Gf2, Strategy::Random(3), 3, None).unwrap(),
        ] {
            let es: Vec<_> = (1..=7).map(|k| compute_e(&l, k).unwrap()).collect();
            for k in 1..7 {
                assert!(ideal_containment_check(&es[k - 1], &es[k]).unwrap(), "k={k}");
            }
            for (k, e) in es.iter().enumerate() {
                assert!(Prop1::new(&l, k + 1, e.dim()).unwrap().ok);
            }
        }
    }

    #[test]
    fn trivial_witness() {
        let l = build_ladder(Gf2, Strategy::Trivial, 2, None).unwrap();
        let w = lemma32_witness(&l, 2).unwrap();
        assert_eq!((w.dim_v, w.p, w.independent), (4, 2, true));
    }
}
