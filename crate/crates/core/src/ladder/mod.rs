//! Complementary `U`/`V` ladders over two generators.
//!
//! Level `m` lives in degree `2^m`. `V(2^m)` is a set of words and `U(2^m)` is
//! a complement of its span. A level is stored as the projection
//! `pi_m : A(2^m) -> span V(2^m)` along `U(2^m)`, so `U(2^m) = ker pi_m`.
//! For a level built on top of the previous one, `pi_m` is determined by its
//! values on the products `v_a v_b` of previous `V` words:
//!
//! ```text
//! pi_m(w1 w2) = sum_{a,b} pi_{m-1}(w1)[a] * pi_{m-1}(w2)[b] * pi_m(v_a v_b)
//! ```
//!
//! which builds `A U + U A` into `U(2^m)` by construction. Small levels may
//! instead carry an explicit `U` subspace; those are checked directly.

mod decomposition;
mod ideal_e;
mod window;

pub use decomposition::{
    absorption_check, absorption_check_explicit, decompose_binary, lemma12_suite, segments, Absorption, AbsorptionChecker,
    BinaryDecomposition, Lemma12Report, Order,
};
pub use ideal_e::{
    compute_e, ideal_containment_check, lemma32_witness, prop1_check, E_DEGREE_CAP, Prop1, Witness,
};
pub use window::{compute_q, v_bound_check, QReport, VBound};

use std::collections::{BTreeMap, HashMap};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::algebra::word::pow;
use crate::algebra::{Echelon, Subspace, Word};
use crate::error::{Error, Result};
use crate::exact::Field;

/// Highest level; degree 16.
pub const MAX_LEVEL: u32 = 4;
/// Levels up to this one keep `pi` for every word.
const CACHED_LEVEL: u32 = 3;

pub type Sparse<F> = Vec<(usize, <F as Field>::Elem)>;

pub(crate) fn accumulate<F: Field>(f: &F, acc: &mut BTreeMap<usize, F::Elem>, i: usize, a: F::Elem) {
    match acc.get_mut(&i) {
        Some(slot) => {
            *slot = f.add(slot, &a);
            if f.is_zero(slot) {
                acc.remove(&i);
            }
        }
        None => {
            if !f.is_zero(&a) {
                acc.insert(i, a);
            }
        }
    }
}

pub(crate) fn tensor<F: Field>(f: &F, a: &Sparse<F>, b: &Sparse<F>, bdim: usize) -> Sparse<F> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a {
        for (j, y) in b {
            out.push((i * bdim + j, f.mul(x, y)));
        }
    }
    out
}

fn unit<F: Field>(f: &F, i: usize) -> Sparse<F> {
    vec![(i, f.one())]
}

#[derive(Clone, Debug)]
pub struct Level<F: Field> {
    m: u32,
    v: Vec<Word>,
    vindex: HashMap<u64, usize>,
    /// `pi_m(v_a v_b)` at `a * dim V(2^{m-1}) + b`; empty for level 0 and explicit levels.
    table: Vec<Sparse<F>>,
    cache: Option<Vec<Sparse<F>>>,
    explicit_u: Option<Subspace<F>>,
    f_space: Option<Subspace<F>>,
    f_prime: Option<Subspace<F>>,
}

impl<F: Field> Level<F> {
    fn new(m: u32, mut v: Vec<Word>) -> Self {
        v.sort();
        v.dedup();
        let vindex = v.iter().enumerate().map(|(i, w)| (w.idx, i)).collect();
        Self {
            m,
            v,
            vindex,
            table: Vec::new(),
            cache: None,
            explicit_u: None,
            f_space: None,
            f_prime: None,
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        1 << self.m
    }

    pub fn v_words(&self) -> &[Word] {
        &self.v
    }

    pub fn dim_v(&self) -> usize {
        self.v.len()
    }

    pub fn dim_u(&self) -> usize {
        pow(2, self.degree() as u32) as usize - self.v.len()
    }

    pub fn v_index(&self, w: &Word) -> Option<usize> {
        self.vindex.get(&w.idx).copied()
    }

    pub fn explicit_u(&self) -> Option<&Subspace<F>> {
        self.explicit_u.as_ref()
    }
}

/// Per-level target dimensions of `V`, plus the `(Y, e)` schedule they came from.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Targets {
    pub dims: BTreeMap<u32, usize>,
    pub schedule: BTreeMap<u32, u32>,
}

impl Targets {
    pub fn uniform(levels: u32, dim: usize) -> Self {
        Self {
            dims: (1..=levels).map(|m| (m, dim)).collect(),
            schedule: BTreeMap::new(),
        }
    }

    /// `dim V = 2` off the blocks, `dim V(2^{m-e-1+j}) = 2^{2^j}` for `m` in `Y`.
    pub fn from_schedule(levels: u32, schedule: &BTreeMap<u32, u32>) -> Result<Self> {
        let mut dims: BTreeMap<u32, usize> = (1..=levels).map(|m| (m, 2)).collect();
        let mut owner: BTreeMap<u32, u32> = BTreeMap::new();
        for (&m, &e) in schedule {
            if e < 1 || e + 1 > m {
                return Err(Error::Invalid(format!("need 1 <= e({m}) <= {m} - 1, got {e}")));
            }
            for j in 0..=e {
                let lvl = m - e - 1 + j;
                if let Some(prev) = owner.insert(lvl, m) {
                    return Err(Error::Invalid(format!(
                        "blocks of {prev} and {m} overlap at level {lvl}"
                    )));
                }
                if lvl >= 1 && lvl <= levels {
                    let t = 1usize
                        .checked_shl(1u32 << j)
                        .filter(|_| j < 6)
                        .ok_or_else(|| Error::Invalid(format!("target 2^(2^{j}) too large")))?;
                    dims.insert(lvl, t);
                }
            }
        }
        Ok(Self {
            dims,
            schedule: schedule.clone(),
        })
    }

    pub fn to_json(&self) -> Value {
        let dims: Map<String, Value> = self.dims.iter().map(|(m, d)| (m.to_string(), json!(d))).collect();
        let e: Map<String, Value> = self.schedule.iter().map(|(m, e)| (m.to_string(), json!(e))).collect();
        json!({"dims": dims, "e": e})
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// `U = 0`, `V` = every word.
    Trivial,
    /// Lexicographically least products, remaining products sent to zero.
    LexGreedy,
    /// Random subsets of products and random corrections.
    Random(u64),
}

impl Strategy {
    pub fn name(&self) -> String {
        match self {
            Self::Trivial => "trivial".into(),
            Self::LexGreedy => "lex-greedy".into(),
            Self::Random(_) => "random".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Ladder<F: Field> {
    field: F,
    levels: Vec<Level<F>>,
    targets: Option<Targets>,
    strategy: String,
}

fn ladder_err(property: &str, level: u32, detail: impl Into<String>) -> Error {
    Error::Ladder {
        property: property.into(),
        level: level as usize,
        detail: detail.into(),
    }
}

/// Builds `levels` levels above `V(1) = {x, y}` and verifies every property.
pub fn build_ladder<F: Field>(
    field: F,
    strategy: Strategy,
    levels: u32,
    targets: Option<Targets>,
) -> Result<Ladder<F>> {
    if !(1..=MAX_LEVEL).contains(&levels) {
        return Err(Error::Invalid(format!("levels must be in 1..={MAX_LEVEL}")));
    }
    let mut ladder = Ladder::base(field.clone(), strategy.name(), targets.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(match strategy {
        Strategy::Random(s) => s,
        _ => 0,
    });
    for m in 1..=levels {
        let prev = &ladder.levels[m as usize - 1];
        let pd = prev.dim_v();
        let products: Vec<Word> = (0..pd * pd)
            .map(|i| prev.v[i / pd].concat(&prev.v[i % pd], 2))
            .collect();
        let target = targets.as_ref().and_then(|t| t.dims.get(&m).copied());
        if let Some(t) = target {
            if t > products.len() {
                return Err(ladder_err(
                    "target_dim",
                    m,
                    format!("target {t} exceeds {} available products", products.len()),
                ));
            }
            if t == 0 {
                return Err(ladder_err("target_dim", m, "target dimension 0"));
            }
        }
        let chosen: Vec<usize> = match strategy {
            Strategy::Trivial => {
                if target.is_some_and(|t| t != products.len()) {
                    return Err(ladder_err("target_dim", m, "the trivial ladder keeps every product"));
                }
                (0..products.len()).collect()
            }
            Strategy::LexGreedy => (0..target.unwrap_or(2).min(products.len())).collect(),
            Strategy::Random(_) => {
                let t = target.unwrap_or_else(|| rng.gen_range(1..=products.len().min(4)));
                let mut c = sample(&mut rng, products.len(), t).into_vec();
                c.sort();
                c
            }
        };
        let mut level = Level::new(m, chosen.iter().map(|&i| products[i]).collect());
        let dv = level.dim_v();
        level.table = (0..products.len())
            .map(|i| match level.v_index(&products[i]) {
                Some(j) => unit(&field, j),
                None => match strategy {
                    Strategy::Random(_) => (0..dv)
                        .filter_map(|j| {
                            let c = field.from_i64(rng.gen_range(-1i64..=1));
                            (!field.is_zero(&c)).then_some((j, c))
                        })
                        .collect(),
                    _ => Vec::new(),
                },
            })
            .collect();
        ladder.push_level(level);
    }
    ladder.verify()?;
    Ok(ladder)
}

impl<F: Field> Ladder<F> {
    fn base(field: F, strategy: String, targets: Option<Targets>) -> Self {
        let mut l0 = Level::new(0, vec![Word::letter(0), Word::letter(1)]);
        l0.cache = Some(vec![unit(&field, 0), unit(&field, 1)]);
        Self {
            field,
            levels: vec![l0],
            targets,
            strategy,
        }
    }

    fn push_level(&mut self, mut level: Level<F>) {
        if level.m <= CACHED_LEVEL && level.cache.is_none() {
            let n = pow(2, level.degree() as u32);
            let cache = (0..n)
                .map(|i| self.project_via_table(&level, Word::new(level.degree() as u32, i)))
                .collect();
            level.cache = Some(cache);
        }
        self.levels.push(level);
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn strategy(&self) -> &str {
        &self.strategy
    }

    pub fn targets(&self) -> Option<&Targets> {
        self.targets.as_ref()
    }

    /// Highest level `L`.
    pub fn top(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    pub fn level(&self, m: u32) -> Result<&Level<F>> {
        self.levels
            .get(m as usize)
            .ok_or_else(|| Error::Invalid(format!("ladder has no level {m} (top level {})", self.top())))
    }

    pub fn levels(&self) -> &[Level<F>] {
        &self.levels
    }

    pub fn dim_v(&self, m: u32) -> usize {
        self.levels[m as usize].dim_v()
    }

    /// `pi_m(w)` for a word of degree `2^m`.
    pub fn project(&self, m: u32, w: Word) -> Sparse<F> {
        let level = &self.levels[m as usize];
        debug_assert_eq!(w.deg as usize, level.degree());
        match &level.cache {
            Some(c) => c[w.idx as usize].clone(),
            None => self.project_via_table(level, w),
        }
    }

    fn project_via_table(&self, level: &Level<F>, w: Word) -> Sparse<F> {
        let f = &self.field;
        let m = level.m;
        let half = (level.degree() / 2) as u32;
        let (w1, w2) = w.split(half, 2);
        let pa = self.project(m - 1, w1);
        let pb = self.project(m - 1, w2);
        let pd = self.levels[m as usize - 1].dim_v();
        let mut acc = BTreeMap::new();
        for (a, x) in &pa {
            for (b, y) in &pb {
                let xy = f.mul(x, y);
                for (i, z) in &level.table[a * pd + b] {
                    accumulate(f, &mut acc, *i, f.mul(&xy, z));
                }
            }
        }
        acc.into_iter().collect()
    }

    /// `pi_m` applied to a linear combination of words.
    pub fn project_sparse(&self, m: u32, v: &Sparse<F>) -> Sparse<F> {
        let f = &self.field;
        let deg = self.levels[m as usize].degree() as u32;
        let mut acc = BTreeMap::new();
        for (s, c) in v {
            for (i, a) in self.project(m, Word::new(deg, *s as u64)) {
                accumulate(f, &mut acc, i, f.mul(c, &a));
            }
        }
        acc.into_iter().collect()
    }

    /// Words of degree `2^m` outside `V(2^m)`; `s - pi(s)` over these spans `U(2^m)`.
    pub fn non_v_words(&self, m: u32) -> impl Iterator<Item = Word> + '_ {
        let level = &self.levels[m as usize];
        let deg = level.degree() as u32;
        (0..pow(2, deg))
            .map(move |i| Word::new(deg, i))
            .filter(move |w| level.v_index(w).is_none())
    }

    /// `s - pi_m(s)` as a sparse vector over words of degree `2^m`.
    pub fn u_generator(&self, m: u32, s: Word) -> Sparse<F> {
        let f = &self.field;
        let level = &self.levels[m as usize];
        let mut acc = BTreeMap::new();
        accumulate(f, &mut acc, s.idx as usize, f.one());
        for (i, c) in self.project(m, s) {
            accumulate(f, &mut acc, level.v[i].idx as usize, f.neg(&c));
        }
        acc.into_iter().collect()
    }

    /// `U(2^m)` as an explicit subspace; degrees up to 8.
    pub fn u_space(&self, m: u32) -> Result<Subspace<F>> {
        let deg = self.level(m)?.degree();
        if deg > 8 {
            return Err(Error::DegreeCap { degree: deg, cap: 8 });
        }
        let n = 1usize << deg;
        let f = &self.field;
        let rows: Vec<F::Vector> = self
            .non_v_words(m)
            .map(|s| f.from_sparse(n, &self.u_generator(m, s)))
            .collect();
        Ok(Subspace::span(f.clone(), 2, deg, rows))
    }

    pub fn v_space(&self, m: u32) -> Result<Subspace<F>> {
        let level = self.level(m)?;
        Ok(Subspace::monomial_span(
            self.field.clone(),
            2,
            level.degree(),
            level.v.iter().copied(),
        ))
    }

    /// Checks every ladder property and the targets; the first failure is returned.
    pub fn verify(&self) -> Result<()> {
        let f = &self.field;
        for level in &self.levels[1..] {
            let m = level.m;
            let deg = level.degree() as u32;
            let prev = &self.levels[m as usize - 1];
            for w in &level.v {
                if w.deg != deg {
                    return Err(ladder_err("monomial_basis", m, format!("word of degree {} in V", w.deg)));
                }
                let (a, b) = w.split(deg / 2, 2);
                if prev.v_index(&a).is_none() || prev.v_index(&b).is_none() {
                    return Err(ladder_err(
                        "nested",
                        m,
                        format!("{} is not a product of two words of the level below", w.to_letter_string(2)),
                    ));
                }
            }
            for (i, w) in level.v.iter().enumerate() {
                if self.project(m, *w) != unit(f, i) {
                    return Err(ladder_err(
                        "complement",
                        m,
                        format!("projection does not fix {}", w.to_letter_string(2)),
                    ));
                }
            }
            if level.explicit_u.is_some() || level.table.is_empty() {
                self.check_absorbs_lower(m)?;
            }
            if let Some(t) = self.targets.as_ref().and_then(|t| t.dims.get(&m)) {
                if *t != level.dim_v() {
                    return Err(ladder_err(
                        "target_dim",
                        m,
                        format!("dim V = {} but the target is {t}", level.dim_v()),
                    ));
                }
            }
            if let Some(fs) = &level.f_space {
                for r in fs.rows() {
                    if !self.project_sparse(m, &f.nonzeros(r)).is_empty() {
                        return Err(ladder_err("f_in_u", m, "a row of F is not in U"));
                    }
                }
            }
            if let Some(fp) = &level.f_prime {
                self.check_f_prime(m, fp)?;
            }
        }
        Ok(())
    }

    /// `A(2^{m-1}) U(2^{m-1}) + U(2^{m-1}) A(2^{m-1}) ⊆ U(2^m)`, on spanning sets.
    pub fn check_absorbs_lower(&self, m: u32) -> Result<()> {
        let half = self.levels[m as usize - 1].degree() as u32;
        let words: Vec<Word> = (0..pow(2, half)).map(|i| Word::new(half, i)).collect();
        for s in self.non_v_words(m - 1) {
            let u = self.u_generator(m - 1, s);
            for a in &words {
                for left in [true, false] {
                    let shift = pow(2, half) as usize;
                    let moved: Sparse<F> = u
                        .iter()
                        .map(|(i, c)| {
                            let idx = if left {
                                a.idx as usize * shift + i
                            } else {
                                i * shift + a.idx as usize
                            };
                            (idx, c.clone())
                        })
                        .collect();
                    if !self.project_sparse(m, &moved).is_empty() {
                        let side = if left { "A U" } else { "U A" };
                        return Err(ladder_err(
                            "absorbs_lower",
                            m,
                            format!(
                                "{side} with u = {} - pi({0}), a = {} leaves U",
                                s.to_letter_string(2),
                                a.to_letter_string(2)
                            ),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_f_prime(&self, m: u32, fp: &Subspace<F>) -> Result<()> {
        let f = &self.field;
        let pd = self.levels[m as usize - 1].dim_v();
        let half = (self.levels[m as usize].degree() / 2) as u32;
        let image = |r: &F::Vector| -> F::Vector {
            let mut acc = BTreeMap::new();
            for (s, c) in f.nonzeros(r) {
                let (a, b) = Word::new(2 * half, s as u64).split(half, 2);
                for (i, x) in tensor(f, &self.project(m - 1, a), &self.project(m - 1, b), pd) {
                    accumulate(f, &mut acc, i, f.mul(&c, &x));
                }
            }
            f.from_sparse(pd * pd, &acc.into_iter().collect::<Vec<_>>())
        };
        let mut e = Echelon::new(f.clone(), pd * pd);
        if let Some(fs) = &self.levels[m as usize].f_space {
            for r in fs.rows() {
                e.insert(image(r));
            }
        }
        for r in fp.rows() {
            if !e.contains(&image(r)) {
                return Err(ladder_err("f_prime", m, "F' is not inside F + U A + A U"));
            }
        }
        Ok(())
    }

    /// Replaces level `m` by an explicit `U` without checking anything; test fixtures only.
    pub fn with_explicit_level_unchecked(mut self, m: u32, u: Subspace<F>) -> Result<Self> {
        let level = self.level(m)?.clone();
        let fresh = explicit_level(&self.field, m, level.v, u, false)?;
        self.levels[m as usize] = fresh;
        Ok(self)
    }

    pub fn to_json(&self) -> Value {
        let f = &self.field;
        let levels: Vec<Value> = self.levels[1..]
            .iter()
            .map(|level| {
                let mut obj = Map::new();
                obj.insert("level".into(), json!(level.m));
                obj.insert("degree".into(), json!(level.degree()));
                obj.insert(
                    "V".into(),
                    Value::Array(level.v.iter().map(|w| json!(w.to_letter_string(2))).collect()),
                );
                obj.insert("dim_V".into(), json!(level.dim_v()));
                obj.insert("dim_U".into(), json!(level.dim_u()));
                if let Some(u) = &level.explicit_u {
                    obj.insert("U".into(), u.to_json());
                } else {
                    let prev = &self.levels[level.m as usize - 1];
                    let pd = prev.dim_v();
                    let mut corr = Map::new();
                    for (i, p) in level.table.iter().enumerate() {
                        let w = prev.v[i / pd].concat(&prev.v[i % pd], 2);
                        if level.v_index(&w).is_some() || p.is_empty() {
                            continue;
                        }
                        let row: Map<String, Value> = p
                            .iter()
                            .map(|(j, c)| (level.v[*j].to_letter_string(2), json!(f.format_elem(c))))
                            .collect();
                        corr.insert(w.to_letter_string(2), Value::Object(row));
                    }
                    obj.insert("corrections".into(), Value::Object(corr));
                }
                if let Some(s) = &level.f_space {
                    obj.insert("F".into(), s.to_json());
                }
                if let Some(s) = &level.f_prime {
                    obj.insert("F_prime".into(), s.to_json());
                }
                Value::Object(obj)
            })
            .collect();
        json!({
            "field": f.name(),
            "strategy": self.strategy,
            "targets": self.targets.as_ref().map(Targets::to_json),
            "levels": levels,
        })
    }

    /// Reads the format written by [`Ladder::to_json`] and verifies it.
    ///
    /// A level gives `V` and either `corrections` (`{product: {v: coeff}}`,
    /// meaning `product - sum coeff*v` lies in `U`; unlisted products of the
    /// level below that are not in `V` lie in `U`) or an explicit `U`.
    pub fn from_json(field: F, v: &Value) -> Result<Self> {
        let bad = |m: String| Error::Invalid(format!("ladder json: {m}"));
        let arr = v
            .get("levels")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing levels".into()))?;
        let targets = match v.get("targets") {
            Some(Value::Object(t)) => {
                let mut dims = BTreeMap::new();
                let mut schedule = BTreeMap::new();
                for (key, out) in [("dims", &mut dims), ("e", &mut schedule)] {
                    if let Some(Value::Object(o)) = t.get(key) {
                        for (k, x) in o {
                            let k: u32 = k.parse().map_err(|_| bad(format!("bad level `{k}`")))?;
                            let x = x.as_u64().ok_or_else(|| bad("bad target".into()))?;
                            out.insert(k, x);
                        }
                    }
                }
                Some(Targets {
                    dims: dims.into_iter().map(|(k, x)| (k, x as usize)).collect(),
                    schedule: schedule.into_iter().map(|(k, x)| (k, x as u32)).collect(),
                })
            }
            _ => None,
        };
        let mut ladder = Ladder::base(field.clone(), "user".into(), targets);
        for lv in arr {
            let words = lv
                .get("V")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("level without V".into()))?;
            let mut vs = Vec::new();
            for w in words {
                let s = w.as_str().ok_or_else(|| bad("V entries must be strings".into()))?;
                vs.push(Word::parse_letter_string(s, 2).ok_or_else(|| bad(format!("bad word `{s}`")))?);
            }
            if vs.first().is_some_and(|w| w.deg == 1) {
                continue;
            }
            let m = ladder.levels.len() as u32;
            if m > MAX_LEVEL {
                return Err(bad(format!("at most {MAX_LEVEL} levels")));
            }
            let deg = 1u32 << m;
            if let Some(w) = vs.iter().find(|w| w.deg != deg) {
                return Err(ladder_err(
                    "monomial_basis",
                    m,
                    format!("{} does not have degree {deg}", w.to_letter_string(2)),
                ));
            }
            let mut level = if let Some(u) = lv.get("U") {
                let u = Subspace::from_json(field.clone(), 2, u)?;
                if u.degree() != deg as usize {
                    return Err(bad(format!("U at level {m} has the wrong degree")));
                }
                explicit_level(&field, m, vs, u, true)?
            } else {
                let prev = &ladder.levels[m as usize - 1];
                let pd = prev.dim_v();
                let mut level = Level::new(m, vs);
                let mut table: Vec<Sparse<F>> = (0..pd * pd)
                    .map(|i| {
                        let w = prev.v[i / pd].concat(&prev.v[i % pd], 2);
                        level.v_index(&w).map(|j| unit(&field, j)).unwrap_or_default()
                    })
                    .collect();
                if let Some(Value::Object(corr)) = lv.get("corrections") {
                    for (p, row) in corr {
                        let w = Word::parse_letter_string(p, 2)
                            .filter(|w| w.deg == deg)
                            .ok_or_else(|| bad(format!("bad product `{p}`")))?;
                        let (a, b) = w.split(deg / 2, 2);
                        let (Some(a), Some(b)) = (prev.v_index(&a), prev.v_index(&b)) else {
                            return Err(ladder_err("nested", m, format!("{p} is not a product of lower V words")));
                        };
                        if level.v_index(&w).is_some() {
                            return Err(ladder_err("complement", m, format!("{p} is in V; it cannot be corrected")));
                        }
                        let row = row.as_object().ok_or_else(|| bad("correction must be an object".into()))?;
                        let mut acc = BTreeMap::new();
                        for (vw, c) in row {
                            let x = Word::parse_letter_string(vw, 2)
                                .and_then(|x| level.v_index(&x))
                                .ok_or_else(|| bad(format!("`{vw}` is not in V")))?;
                            let c = match c {
                                Value::String(s) => field.parse_elem(s)?,
                                other => field.parse_elem(&other.to_string())?,
                            };
                            accumulate(&field, &mut acc, x, c);
                        }
                        table[a * pd + b] = acc.into_iter().collect();
                    }
                }
                level.table = table;
                level
            };
            for (key, slot) in [("F", &mut level.f_space), ("F_prime", &mut level.f_prime)] {
                if let Some(s) = lv.get(key) {
                    let s = Subspace::from_json(field.clone(), 2, s)?;
                    if s.degree() != deg as usize {
                        return Err(bad(format!("{key} at level {m} has the wrong degree")));
                    }
                    *slot = Some(s);
                }
            }
            ladder.push_level(level);
        }
        if ladder.top() == 0 {
            return Err(bad("no levels above degree 1".into()));
        }
        ladder.verify()?;
        Ok(ladder)
    }
}

/// Level with a given `U`; `pi` comes from eliminating with the non-`V` columns first.
fn explicit_level<F: Field>(field: &F, m: u32, v: Vec<Word>, u: Subspace<F>, strict: bool) -> Result<Level<F>> {
    let mut level = Level::new(m, v);
    let deg = level.degree();
    if deg > 8 || m == 0 {
        return Err(Error::Invalid(format!("explicit U is supported for degrees 2..=8, not {deg}")));
    }
    let n = 1usize << deg;
    let mut col = vec![0usize; n];
    let mut non_v = Vec::new();
    for (s, c) in col.iter_mut().enumerate() {
        if level.v_index(&Word::new(deg as u32, s as u64)).is_none() {
            *c = non_v.len();
            non_v.push(s);
        }
    }
    let nv = non_v.len();
    for (s, c) in col.iter_mut().enumerate() {
        if let Some(i) = level.v_index(&Word::new(deg as u32, s as u64)) {
            *c = nv + i;
        }
    }
    let mut e = Echelon::new(field.clone(), n);
    for r in u.rows() {
        let moved: Vec<(usize, F::Elem)> = field.nonzeros(r).into_iter().map(|(i, c)| (col[i], c)).collect();
        e.insert(field.from_sparse(n, &moved));
    }
    let (pivots, rows) = e.into_rref();
    let complement = pivots.len() == nv && pivots.iter().all(|p| *p < nv);
    if strict && !complement {
        return Err(ladder_err(
            "complement",
            m,
            format!("dim U = {}, dim V = {}, ambient {n}", u.dim(), level.dim_v()),
        ));
    }
    let mut cache: Vec<Sparse<F>> = vec![Vec::new(); n];
    for (i, w) in level.v.iter().enumerate() {
        cache[w.idx as usize] = unit(field, i);
    }
    for (p, r) in pivots.iter().zip(&rows) {
        if *p >= nv {
            continue;
        }
        cache[non_v[*p]] = field
            .nonzeros(r)
            .into_iter()
            .filter(|(c, _)| *c >= nv)
            .map(|(c, a)| (c - nv, field.neg(&a)))
            .collect();
    }
    level.cache = Some(cache);
    level.explicit_u = Some(u);
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Gf2, Gfp, Rationals};

    fn w(s: &str) -> Word {
        Word::parse_letter_string(s, 2).unwrap()
    }

    #[test]
    fn trivial_keeps_everything() {
        let l = build_ladder(Gf2, Strategy::Trivial, 4, None).unwrap();
        for m in 0..=4 {
            assert_eq!(l.dim_v(m), 1 << (1 << m));
        }
        assert_eq!(l.non_v_words(3).count(), 0);
    }

    #[test]
    fn lex_greedy_level_two() {
        let l = build_ladder(Gf2, Strategy::LexGreedy, 2, None).unwrap();
        assert_eq!(l.level(1).unwrap().v_words(), &[w("xx"), w("xy")]);
        let u = l.u_space(1).unwrap();
        assert_eq!(u, Subspace::monomial_span(Gf2, 2, 2, [w("yx"), w("yy")]));
        assert_eq!(l.level(2).unwrap().v_words(), &[w("xxxx"), w("xxxy")]);
    }

    #[test]
    fn random_ladders_verify() {
        for seed in 0..5 {
            let l = build_ladder(Gfp::new(7).unwrap(), Strategy::Random(seed), 4, None).unwrap();
            assert!(l.verify().is_ok());
            let back = Ladder::from_json(Gfp::new(7).unwrap(), &l.to_json()).unwrap();
            for m in 1..=4 {
                assert_eq!(back.level(m).unwrap().v_words(), l.level(m).unwrap().v_words());
            }
            assert_eq!(back.project(4, Word::new(16, 12345)), l.project(4, Word::new(16, 12345)));
        }
    }

    #[test]
    fn targets_from_schedule() {
        let t = Targets::from_schedule(4, &BTreeMap::from([(3, 1)])).unwrap();
        assert_eq!(t.dims, BTreeMap::from([(1, 2), (2, 4), (3, 2), (4, 2)]));
        let l = build_ladder(Rationals, Strategy::LexGreedy, 4, Some(t)).unwrap();
        assert_eq!(l.dim_v(2), 4);
        assert!(Targets::from_schedule(4, &BTreeMap::from([(2, 2)])).is_err());
        let too_big = Targets::uniform(2, 5);
        assert!(build_ladder(Gf2, Strategy::LexGreedy, 2, Some(too_big)).is_err());
    }

    #[test]
    fn explicit_levels() {
        let l = build_ladder(Gf2, Strategy::LexGreedy, 2, None).unwrap();
        let mut j = l.to_json();
        j["levels"][0]["U"] = Subspace::monomial_span(Gf2, 2, 2, [w("yx"), w("yy")]).to_json();
        assert!(Ladder::from_json(Gf2, &j).is_ok());
        j["levels"][0]["U"] = Subspace::full(Gf2, 2, 2).to_json();
        match Ladder::from_json(Gf2, &j) {
            Err(Error::Ladder { property, level, .. }) => assert_eq!((property.as_str(), level), ("complement", 1)),
            other => panic!("{other:?}"),
        }
        // U(4) spanned by non-V words plus a twist on one product that A(2)U(2) needs.
        let mut rows: Vec<Word> = l.non_v_words(2).collect();
        rows.retain(|x| *x != w("xxyx"));
        let mut vecs: Vec<BitVecOf> = rows.iter().map(|x| Gf2.from_sparse(16, &[(x.idx as usize, true)])).collect();
        vecs.push(Gf2.from_sparse(16, &[(w("xxyx").idx as usize, true), (w("xxxx").idx as usize, true)]));
        let bent = Subspace::span(Gf2, 2, 4, vecs);
        let mut j2 = l.to_json();
        j2["levels"][1]["U"] = bent.to_json();
        match Ladder::from_json(Gf2, &j2) {
            Err(Error::Ladder { property, level, .. }) => assert_eq!((property.as_str(), level), ("absorbs_lower", 2)),
            other => panic!("{other:?}"),
        }
    }

    type BitVecOf = <Gf2 as Field>::Vector;
}
