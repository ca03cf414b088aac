//! Binary decompositions `A(k) = U^<(k) ⊕ V^<(k) = U^>(k) ⊕ V^>(k)` and the
//! absorption containments between them.
//!
//! For `k = 2^{p_1} + ... + 2^{p_t}` laid out as consecutive segments (smallest
//! first for `<`, largest first for `>`), `U^<(k)` is the kernel of the tensor
//! projection `Phi = pi_{p_1} ⊗ ... ⊗ pi_{p_t}`, and `V^<(k)` is the span of
//! products of `V` words. Explicit subspaces are built from the spanning
//! products for small `k` and used as a cross-check.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use super::{accumulate, tensor, Ladder, Sparse};
use crate::algebra::word::pow;
use crate::algebra::{Subspace, Word};
use crate::error::{Error, Result};
use crate::exact::Field;

/// Largest degree for which explicit subspaces are built.
pub const EXPLICIT_DEGREE: usize = 12;
/// Degrees handled by the structured checks.
pub const DECOMPOSITION_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Ascending,
    Descending,
}

/// Exponents of the binary expansion of `k` in layout order.
pub fn segments(k: usize, order: Order) -> Vec<u32> {
    let mut out: Vec<u32> = (0..usize::BITS).filter(|p| k >> p & 1 == 1).collect();
    if order == Order::Descending {
        out.reverse();
    }
    out
}

impl<F: Field> Ladder<F> {
    fn check_parts(&self, parts: &[u32]) -> Result<()> {
        match parts.iter().find(|p| **p > self.top()) {
            Some(p) => Err(Error::Invalid(format!(
                "segment 2^{p} needs level {p}, ladder stops at {}",
                self.top()
            ))),
            None => Ok(()),
        }
    }

    /// `prod dim V(2^{p_i})`.
    pub fn dim_v_product(&self, parts: &[u32]) -> u128 {
        parts.iter().map(|p| self.dim_v(*p) as u128).product()
    }

    /// `Phi(w)` with the first segment most significant in the index.
    pub fn project_layout(&self, parts: &[u32], w: Word) -> Sparse<F> {
        let f = self.field();
        let mut out: Sparse<F> = vec![(0, f.one())];
        let mut rest = w;
        for p in parts {
            let len = 1u32 << p;
            let (head, tail) = rest.split(len, 2);
            rest = tail;
            let pr = self.project(*p, head);
            if pr.is_empty() {
                return Vec::new();
            }
            out = tensor(f, &out, &pr, self.dim_v(*p));
        }
        out
    }

    /// Words of `V(2^{p_1}) ... V(2^{p_t})`, in index order of `Phi`.
    pub fn v_product_words(&self, parts: &[u32]) -> Vec<Word> {
        let mut out = vec![Word::EMPTY];
        for p in parts {
            let vs = self.levels()[*p as usize].v_words();
            out = out.iter().flat_map(|a| vs.iter().map(move |b| a.concat(b, 2))).collect();
        }
        out
    }

    /// Spanning products `A(..) (s - pi(s)) A(..)` of `U^<` or `U^>` for the layout.
    fn u_generators(&self, parts: &[u32]) -> Vec<Sparse<F>> {
        let k: usize = parts.iter().map(|p| 1usize << p).sum();
        let mut out = Vec::new();
        let mut offset = 0usize;
        for p in parts {
            let len = 1usize << p;
            let after = k - offset - len;
            let gens: Vec<Sparse<F>> = self.non_v_words(*p).map(|s| self.u_generator(*p, s)).collect();
            for a in 0..pow(2, offset as u32) as usize {
                for b in 0..pow(2, after as u32) as usize {
                    for g in &gens {
                        out.push(
                            g.iter()
                                .map(|(i, c)| (((a << len) + i) << after | b, c.clone()))
                                .collect(),
                        );
                    }
                }
            }
            offset += len;
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct BinaryDecomposition<F: Field> {
    pub k: usize,
    /// Ascending exponents `p_1 < ... < p_t`.
    pub parts: Vec<u32>,
    pub dim_v_lt: u128,
    pub dim_u_lt: u128,
    pub dim_v_gt: u128,
    pub dim_u_gt: u128,
    pub u_lt: Option<Subspace<F>>,
    pub v_lt: Option<Subspace<F>>,
    pub u_gt: Option<Subspace<F>>,
    pub v_gt: Option<Subspace<F>>,
}

impl<F: Field> BinaryDecomposition<F> {
    pub fn to_json(&self, with_bases: bool) -> Value {
        let mut v = json!({
            "k": self.k,
            "parts": self.parts,
            "dim_V_lt": self.dim_v_lt.to_string(),
            "dim_U_lt": self.dim_u_lt.to_string(),
            "dim_V_gt": self.dim_v_gt.to_string(),
            "dim_U_gt": self.dim_u_gt.to_string(),
            "explicit": self.u_lt.is_some(),
        });
        if with_bases {
            for (key, s) in [("U_lt", &self.u_lt), ("V_lt", &self.v_lt), ("U_gt", &self.u_gt), ("V_gt", &self.v_gt)] {
                if let Some(s) = s {
                    v[key] = s.to_json();
                }
            }
        }
        v
    }
}

/// Dimensions of the four spaces, and the spaces themselves when `explicit` and `k <= 12`.
pub fn decompose_binary<F: Field>(ladder: &Ladder<F>, k: usize, explicit: bool) -> Result<BinaryDecomposition<F>> {
    if k == 0 || k > DECOMPOSITION_CAP {
        return Err(Error::DegreeCap {
            degree: k,
            cap: DECOMPOSITION_CAP,
        });
    }
    let parts = segments(k, Order::Ascending);
    ladder.check_parts(&parts)?;
    let desc = segments(k, Order::Descending);
    let total = 1u128 << k;
    let dim_v = ladder.dim_v_product(&parts);
    let mut out = BinaryDecomposition {
        k,
        parts: parts.clone(),
        dim_v_lt: dim_v,
        dim_u_lt: total - dim_v,
        dim_v_gt: dim_v,
        dim_u_gt: total - dim_v,
        u_lt: None,
        v_lt: None,
        u_gt: None,
        v_gt: None,
    };
    if explicit && k <= EXPLICIT_DEGREE {
        let f = ladder.field();
        let n = 1usize << k;
        let span_u = |layout: &[u32]| {
            Subspace::span(
                f.clone(),
                2,
                k,
                ladder.u_generators(layout).iter().map(|g| f.from_sparse(n, g)),
            )
        };
        out.u_lt = Some(span_u(&parts));
        out.u_gt = Some(span_u(&desc));
        out.v_lt = Some(Subspace::monomial_span(f.clone(), 2, k, ladder.v_product_words(&parts)));
        out.v_gt = Some(Subspace::monomial_span(f.clone(), 2, k, ladder.v_product_words(&desc)));
    }
    Ok(out)
}

/// `A(k) U^<(l) ⊆ U^<(k+l)` and `U^>(k) A(l) ⊆ U^>(k+l)`, checked on spanning products.
///
/// A spanning product places some `s - pi(s)` at a fixed position. The bigger
/// layout's `Phi` factors over its segments, so the product lies in the kernel
/// exactly when the segments overlapping that position annihilate it for
/// every filling word; results are memoised on that local shape.
pub struct AbsorptionChecker<'a, F: Field> {
    ladder: &'a Ladder<F>,
    memo: HashMap<(Vec<u32>, usize, u32), bool>,
}

impl<'a, F: Field> AbsorptionChecker<'a, F> {
    pub fn new(ladder: &'a Ladder<F>) -> Self {
        Self {
            ladder,
            memo: HashMap::new(),
        }
    }

    /// `(lower, upper)` containments for `k`, `l`.
    pub fn check(&mut self, k: usize, l: usize) -> Result<(bool, bool)> {
        if k + l > DECOMPOSITION_CAP {
            return Err(Error::DegreeCap {
                degree: k + l,
                cap: DECOMPOSITION_CAP,
            });
        }
        let big_lt = segments(k + l, Order::Ascending);
        self.ladder.check_parts(&big_lt)?;
        let lt = self.placed_all(&segments(l, Order::Ascending), k, &big_lt);
        let gt = self.placed_all(&segments(k, Order::Descending), 0, &segments(k + l, Order::Descending));
        Ok((lt, gt))
    }

    fn placed_all(&mut self, small: &[u32], shift: usize, big: &[u32]) -> bool {
        let mut start = shift;
        for p in small {
            if !self.placed(big, start, *p) {
                return false;
            }
            start += 1 << p;
        }
        true
    }

    fn placed(&mut self, big: &[u32], start: usize, p: u32) -> bool {
        if big.iter().any(|q| self.ladder.dim_v(*q) == 0) {
            return true;
        }
        let end = start + (1 << p);
        let mut offsets = Vec::with_capacity(big.len());
        let mut o = 0usize;
        for q in big {
            offsets.push(o);
            o += 1 << q;
        }
        let first = (0..big.len()).find(|&i| offsets[i] + (1 << big[i]) > start).expect("inside");
        let last = (0..big.len()).rfind(|&i| offsets[i] < end).expect("inside");
        let key = (big[first..=last].to_vec(), start - offsets[first], p);
        if let Some(r) = self.memo.get(&key) {
            return *r;
        }
        let r = self.sandwich(&key.0, key.1, p);
        self.memo.insert(key, r);
        r
    }

    fn sandwich(&self, group: &[u32], offset: usize, p: u32) -> bool {
        let ladder = self.ladder;
        let f = ladder.field();
        let len = 1usize << p;
        let glen: usize = group.iter().map(|q| 1usize << q).sum();
        let after = glen - offset - len;
        let gens: Vec<Sparse<F>> = ladder.non_v_words(p).map(|s| ladder.u_generator(p, s)).collect();
        for a in 0..pow(2, offset as u32) {
            for b in 0..pow(2, after as u32) {
                for g in &gens {
                    let mut acc = BTreeMap::new();
                    for (i, c) in g {
                        let w = Word::new(glen as u32, ((a << len) + *i as u64) << after | b);
                        for (j, x) in ladder.project_layout(group, w) {
                            accumulate(f, &mut acc, j, f.mul(c, &x));
                        }
                    }
                    if !acc.is_empty() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Absorption {
    pub lower: bool,
    pub upper: bool,
}

pub fn absorption_check<F: Field>(ladder: &Ladder<F>, k: usize, l: usize) -> Result<Absorption> {
    let (lower, upper) = AbsorptionChecker::new(ladder).check(k, l)?;
    Ok(Absorption { lower, upper })
}

/// Same containments with explicit subspaces; `k + l <= 12`.
pub fn absorption_check_explicit<F: Field>(ladder: &Ladder<F>, k: usize, l: usize) -> Result<Absorption> {
    if k + l > EXPLICIT_DEGREE || k == 0 || l == 0 {
        return Err(Error::DegreeCap {
            degree: k + l,
            cap: EXPLICIT_DEGREE,
        });
    }
    let f = ladder.field();
    let big = decompose_binary(ladder, k + l, true)?;
    let small_l = decompose_binary(ladder, l, true)?;
    let small_k = decompose_binary(ladder, k, true)?;
    let n = 1usize << (k + l);
    let u_lt = big.u_lt.expect("explicit");
    let u_gt = big.u_gt.expect("explicit");
    let mut lower = true;
    'outer: for a in 0..1usize << k {
        for r in small_l.u_lt.as_ref().expect("explicit").rows() {
            let moved: Vec<_> = f.nonzeros(r).into_iter().map(|(i, c)| ((a << l) | i, c)).collect();
            if !u_lt.contains(&f.from_sparse(n, &moved)) {
                lower = false;
                break 'outer;
            }
        }
    }
    let mut upper = true;
    'outer2: for b in 0..1usize << l {
        for r in small_k.u_gt.as_ref().expect("explicit").rows() {
            let moved: Vec<_> = f.nonzeros(r).into_iter().map(|(i, c)| ((i << l) | b, c)).collect();
            if !u_gt.contains(&f.from_sparse(n, &moved)) {
                upper = false;
                break 'outer2;
            }
        }
    }
    Ok(Absorption { lower, upper })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lemma12Report {
    pub max_degree: usize,
    pub direct_sum_ok: bool,
    pub explicit_up_to: usize,
    pub absorption_pairs: usize,
    pub absorption_ok: bool,
    pub failures: Vec<String>,
}

impl Lemma12Report {
    pub fn ok(&self) -> bool {
        self.direct_sum_ok && self.absorption_ok
    }

    pub fn to_json(&self) -> Value {
        json!({
            "max_degree": self.max_degree,
            "direct_sum": self.direct_sum_ok,
            "explicit_up_to": self.explicit_up_to,
            "absorption_pairs": self.absorption_pairs,
            "absorption": self.absorption_ok,
            "failures": self.failures,
        })
    }
}

/// Direct sums for every `k <= max_degree` and both containments for every
/// `k, l >= 1` with `k + l <= max_degree`.
///
/// The direct sum is checked structurally at every `k` (`Phi` restricted to the
/// `V` products is the identity onto its target) and with explicit subspaces
/// for `k <= explicit_up_to`.
pub fn lemma12_suite<F: Field>(ladder: &Ladder<F>, max_degree: usize, explicit_up_to: usize) -> Result<Lemma12Report> {
    let f = ladder.field();
    let mut rep = Lemma12Report {
        max_degree,
        direct_sum_ok: true,
        explicit_up_to: explicit_up_to.min(EXPLICIT_DEGREE),
        absorption_ok: true,
        ..Default::default()
    };
    for k in 1..=max_degree {
        for order in [Order::Ascending, Order::Descending] {
            let parts = segments(k, order);
            ladder.check_parts(&parts)?;
            for (i, w) in ladder.v_product_words(&parts).iter().enumerate() {
                if ladder.project_layout(&parts, *w) != vec![(i, f.one())] {
                    rep.direct_sum_ok = false;
                    rep.failures.push(format!("k={k} {order:?}: Phi does not fix {}", w.to_letter_string(2)));
                    break;
                }
            }
        }
        if k <= rep.explicit_up_to {
            let d = decompose_binary(ladder, k, true)?;
            let full = 1usize << k;
            for (name, u, v, du) in [
                ("lt", d.u_lt.as_ref(), d.v_lt.as_ref(), d.dim_u_lt),
                ("gt", d.u_gt.as_ref(), d.v_gt.as_ref(), d.dim_u_gt),
            ] {
                let (u, v) = (u.expect("explicit"), v.expect("explicit"));
                if u.dim() + v.dim() != full || u.sum(v)?.dim() != full || u.dim() as u128 != du {
                    rep.direct_sum_ok = false;
                    rep.failures.push(format!(
                        "k={k} {name}: dim U {} + dim V {} against 2^{k}",
                        u.dim(),
                        v.dim()
                    ));
                }
            }
        }
    }
    let mut checker = AbsorptionChecker::new(ladder);
    for total in 2..=max_degree {
        for k in 1..total {
            let (lo, up) = checker.check(k, total - k)?;
            rep.absorption_pairs += 1;
            if !(lo && up) {
                rep.absorption_ok = false;
                rep.failures.push(format!("absorption k={k} l={}: lower {lo} upper {up}", total - k));
            }
        }
    }
    Ok(rep)
}
