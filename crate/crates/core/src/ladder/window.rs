//! The relation space `Q` around degree `2^{n+1}` and the size bound on `V^>`.

use std::collections::BTreeMap;

use num::bigint::BigUint;
use num::One;
use serde_json::{json, Value};

use super::decomposition::{segments, Order};
use super::Ladder;
use crate::algebra::{Element, Subspace};
use crate::error::{Error, Result};
use crate::exact::Field;

#[derive(Clone, Debug)]
pub struct QReport<F: Field> {
    pub n: u32,
    pub window: (usize, usize),
    pub relations_in_window: usize,
    pub dim_q: usize,
    pub dim_v_half: usize,
    /// `8 dim Q <= dim V(2^{n-1})^2 - 4`.
    pub bound_ok: bool,
    pub q: Subspace<F>,
}

impl<F: Field> QReport<F> {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "window": [self.window.0, self.window.1],
            "relations_in_window": self.relations_in_window,
            "dim_Q": self.dim_q,
            "dim_V_half": self.dim_v_half,
            "bound_ok": self.bound_ok,
        })
    }
}

/// `Q = sum_f sum_{i+j = 2^{n+1} - deg f} V^>(i) f V^<(j)` over relations with
/// `2^n + 2^{n-2} <= deg f <= 2^n + 2^{n-1} + 2^{n-2}`.
pub fn compute_q<F: Field>(ladder: &Ladder<F>, relations: &[Element], n: u32) -> Result<QReport<F>> {
    if n < 2 {
        return Err(Error::Invalid("the window needs n >= 2".into()));
    }
    let total = 1usize << (n + 1);
    if total > super::E_DEGREE_CAP {
        return Err(Error::DegreeCap {
            degree: total,
            cap: super::E_DEGREE_CAP,
        });
    }
    let lo = (1usize << n) + (1 << (n - 2));
    let hi = lo + (1 << (n - 1));
    let f = ladder.field();
    let width = 1usize << total;
    let dim_v_half = ladder.level(n - 1)?.dim_v();
    let mut vectors = Vec::new();
    let mut count = 0;
    for rel in relations {
        if rel.gens() != 2 || !rel.is_homogeneous() {
            return Err(Error::Invalid(format!("`{rel}` is not a homogeneous relation in x, y")));
        }
        let Some(deg) = rel.order() else { continue };
        if deg < lo || deg > hi {
            continue;
        }
        count += 1;
        let mut terms = Vec::new();
        for (w, c) in rel.terms() {
            terms.push((w.idx as usize, f.from_rational(c)?));
        }
        for i in 0..=total - deg {
            let j = total - deg - i;
            let (left, right) = (segments(i, Order::Descending), segments(j, Order::Ascending));
            for p in left.iter().chain(&right) {
                ladder.level(*p)?;
            }
            for a in ladder.v_product_words(&left) {
                for b in ladder.v_product_words(&right) {
                    let entries: Vec<_> = terms
                        .iter()
                        .map(|(s, c)| ((a.idx as usize) << (deg + j) | s << j | b.idx as usize, c.clone()))
                        .collect();
                    vectors.push(f.from_sparse(width, &entries));
                }
            }
        }
    }
    let q = Subspace::span(f.clone(), 2, total, vectors);
    let dim_q = q.dim();
    Ok(QReport {
        n,
        window: (lo, hi),
        relations_in_window: count,
        dim_q,
        dim_v_half,
        bound_ok: 8 * dim_q as i128 <= (dim_v_half as i128).pow(2) - 4,
        q,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VBound {
    pub alpha: usize,
    pub dim: u128,
    /// Largest block index of the schedule touched by the binary digits of `alpha`.
    pub m: Option<u32>,
    pub bound: BigUint,
    pub ok: bool,
}

impl VBound {
    pub fn to_json(&self) -> Value {
        json!({
            "alpha": self.alpha,
            "dim_V_gt": self.dim.to_string(),
            "m": self.m,
            "bound": self.bound.to_string(),
            "ok": self.ok,
        })
    }
}

/// `dim V^>(α) < 2α prod_{i <= m, i ∈ Y} 2^{2^{e(i)+1}}`.
pub fn v_bound_check<F: Field>(ladder: &Ladder<F>, alpha: usize) -> Result<VBound> {
    let schedule: &BTreeMap<u32, u32> = &ladder
        .targets()
        .ok_or_else(|| Error::Invalid("the ladder carries no e-schedule".into()))?
        .schedule;
    if alpha == 0 {
        return Err(Error::Invalid("alpha must be positive".into()));
    }
    let parts = segments(alpha, Order::Descending);
    for p in &parts {
        ladder.level(*p)?;
    }
    let dim = ladder.dim_v_product(&parts);
    let m = schedule
        .iter()
        .filter(|(m, e)| parts.iter().any(|p| *p + **e + 1 >= **m && *p < **m))
        .map(|(m, _)| *m)
        .max();
    let bits: u64 = match m {
        Some(m) => schedule.range(..=m).map(|(_, e)| 1u64 << (e + 1)).sum(),
        None => 0,
    };
    let bound = (BigUint::from(2 * alpha)) * (BigUint::one() << bits);
    Ok(VBound {
        alpha,
        dim,
        m,
        ok: BigUint::from(dim) < bound,
        bound,
    })
}
