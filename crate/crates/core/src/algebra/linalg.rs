//! Row-echelon elimination and subspaces of a fixed homogeneous component.

use serde_json::{json, Map, Value};

use super::word::Word;
use crate::error::{Error, Result};
use crate::exact::Field;

/// Incremental semi-echelon basis: each row has a distinct leading column
/// (its pivot), normalized to one, and is zero before it.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<F::Vector>,
    pivots: Vec<usize>,
    row_of: Vec<u32>,
}

const NO_ROW: u32 = u32::MAX;

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Self {
            field,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of: vec![NO_ROW; ncols],
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[F::Vector] {
        &self.rows
    }

    /// Subtracts pivot rows until no pivot column of `v` is nonzero.
    pub fn reduce(&self, v: &mut F::Vector) {
        let f = &self.field;
        let mut i = 0;
        while let Some(j) = f.next_nonzero(v, i) {
            let r = self.row_of[j];
            if r != NO_ROW {
                let c = f.neg(&f.get(v, j));
                f.axpy(v, &c, &self.rows[r as usize]);
            }
            i = j + 1;
        }
    }

    pub fn contains(&self, v: &F::Vector) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        self.field.is_zero_vec(&w)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: F::Vector) -> bool {
        debug_assert_eq!(self.field.vec_len(&v), self.ncols);
        self.reduce(&mut v);
        self.push_reduced(v)
    }

    /// Adds a vector already reduced against this basis.
    pub fn push_reduced(&mut self, mut v: F::Vector) -> bool {
        let f = &self.field;
        let Some(p) = f.next_nonzero(&v, 0) else {
            return false;
        };
        let inv = f.inv(&f.get(&v, p)).expect("nonzero pivot");
        f.scale(&mut v, &inv);
        self.row_of[p] = self.rows.len() as u32;
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// Canonical reduced row-echelon basis, rows sorted by pivot.
    pub fn into_rref(self) -> (Vec<usize>, Vec<F::Vector>) {
        let f = self.field.clone();
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut rows: Vec<F::Vector> = order.iter().map(|&i| self.rows[i].clone()).collect();
        let pivots: Vec<usize> = order.iter().map(|&i| self.pivots[i]).collect();
        // Clear each pivot column above it, working from the last pivot backwards.
        for i in (0..rows.len()).rev() {
            let p = pivots[i];
            let (head, tail) = rows.split_at_mut(i);
            let pivot_row = &tail[0];
            for r in head.iter_mut() {
                let c = f.get(r, p);
                if !f.is_zero(&c) {
                    f.axpy(r, &f.neg(&c), pivot_row);
                }
            }
        }
        (pivots, rows)
    }
}

/// A subspace of `A(k)` stored as its reduced row-echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    field: F,
    d: u32,
    degree: usize,
    pivots: Vec<usize>,
    rows: Vec<F::Vector>,
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d
            && self.degree == other.degree
            && self.pivots == other.pivots
            && self.rows == other.rows
    }
}

impl<F: Field> Subspace<F> {
    pub fn ambient_dim(d: u32, degree: usize) -> usize {
        (d as usize).pow(degree as u32)
    }

    pub fn zero(field: F, d: u32, degree: usize) -> Self {
        Self {
            field,
            d,
            degree,
            pivots: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn from_echelon(d: u32, degree: usize, e: Echelon<F>) -> Self {
        let field = e.field.clone();
        let (pivots, rows) = e.into_rref();
        Self {
            field,
            d,
            degree,
            pivots,
            rows,
        }
    }

    /// Span of dense vectors of length `d^degree`.
    pub fn span(field: F, d: u32, degree: usize, vectors: impl IntoIterator<Item = F::Vector>) -> Self {
        let n = Self::ambient_dim(d, degree);
        let mut e = Echelon::new(field, n);
        for v in vectors {
            if e.is_full() {
                break;
            }
            e.insert(v);
        }
        Self::from_echelon(d, degree, e)
    }

    /// Span of monomials.
    pub fn monomial_span(field: F, d: u32, degree: usize, words: impl IntoIterator<Item = Word>) -> Self {
        let n = Self::ambient_dim(d, degree);
        let one = field.one();
        let vs: Vec<F::Vector> = words
            .into_iter()
            .map(|w| {
                debug_assert_eq!(w.deg as usize, degree);
                field.from_sparse(n, &[(w.idx as usize, one.clone())])
            })
            .collect();
        Self::span(field.clone(), d, degree, vs)
    }

    pub fn full(field: F, d: u32, degree: usize) -> Self {
        let n = Self::ambient_dim(d, degree);
        Self::monomial_span(field, d, degree, (0..n as u64).map(|i| Word::new(degree as u32, i)))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn gens(&self) -> u32 {
        self.d
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ncols(&self) -> usize {
        Self::ambient_dim(self.d, self.degree)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        self.ncols() - self.dim()
    }

    pub fn rows(&self) -> &[F::Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn echelon(&self) -> Echelon<F> {
        let mut e = Echelon::new(self.field.clone(), self.ncols());
        for r in &self.rows {
            e.push_reduced(r.clone());
        }
        e
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree || self.d != other.d {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    pub fn contains(&self, v: &F::Vector) -> bool {
        // RREF rows: subtract the pivot entries directly.
        let f = &self.field;
        let mut w = v.clone();
        for (p, r) in self.pivots.iter().zip(&self.rows) {
            let c = f.get(&w, *p);
            if !f.is_zero(&c) {
                f.axpy(&mut w, &f.neg(&c), r);
            }
        }
        f.is_zero_vec(&w)
    }

    pub fn contains_space(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        Ok(other.rows.iter().all(|r| self.contains(r)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut e = self.echelon();
        for r in &other.rows {
            e.insert(r.clone());
        }
        Ok(Self::from_echelon(self.d, self.degree, e))
    }

    /// Zassenhaus: eliminate `[s | s]` and `[t | 0]`; rows whose left half
    /// vanishes carry the intersection in their right half.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let f = &self.field;
        let n = self.ncols();
        let mut e = Echelon::new(f.clone(), 2 * n);
        for s in &self.rows {
            let nz = f.nonzeros(s);
            let mut entries = nz.clone();
            entries.extend(nz.into_iter().map(|(i, c)| (i + n, c)));
            e.insert(f.from_sparse(2 * n, &entries));
        }
        for t in &other.rows {
            e.insert(f.from_sparse(2 * n, &f.nonzeros(t)));
        }
        let mut out = Echelon::new(f.clone(), n);
        for (p, r) in e.pivots.iter().zip(&e.rows) {
            if *p >= n {
                let right: Vec<_> = f.nonzeros(r).into_iter().map(|(i, c)| (i - n, c)).collect();
                out.insert(f.from_sparse(n, &right));
            }
        }
        Ok(Self::from_echelon(self.d, self.degree, out))
    }

    /// `{v : <v, r> = 0 for every row r}` under the standard pairing.
    pub fn annihilator(&self) -> Self {
        let f = &self.field;
        let n = self.ncols();
        let mut is_pivot = vec![false; n];
        for p in &self.pivots {
            is_pivot[*p] = true;
        }
        let mut out = Vec::new();
        for free in (0..n).filter(|c| !is_pivot[*c]) {
            let mut entries = vec![(free, f.one())];
            for (p, r) in self.pivots.iter().zip(&self.rows) {
                let c = f.get(r, free);
                if !f.is_zero(&c) {
                    entries.push((*p, f.neg(&c)));
                }
            }
            out.push(f.from_sparse(n, &entries));
        }
        Self::span(f.clone(), self.d, self.degree, out)
    }

    /// `{"degree", "field", "rows": [{monomial: coeff}]}`.
    pub fn to_json(&self) -> Value {
        let f = &self.field;
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut m = Map::new();
                for (i, c) in f.nonzeros(r) {
                    m.insert(
                        Word::new(self.degree as u32, i as u64).to_letter_string(self.d),
                        Value::String(f.format_elem(&c)),
                    );
                }
                Value::Object(m)
            })
            .collect();
        json!({"degree": self.degree, "field": f.name(), "rows": rows})
    }

    pub fn from_json(field: F, d: u32, v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Invalid(format!("subspace json: {m}"));
        let degree = v
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing degree"))? as usize;
        let n = Self::ambient_dim(d, degree);
        let mut vs = Vec::new();
        for row in v
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing rows"))?
        {
            let obj = row.as_object().ok_or_else(|| bad("row is not an object"))?;
            let mut entries = Vec::new();
            for (k, c) in obj {
                let w = Word::parse_letter_string(k, d)
                    .filter(|w| w.deg as usize == degree)
                    .ok_or_else(|| bad(&format!("bad monomial `{k}`")))?;
                let c = match c {
                    Value::String(s) => field.parse_elem(s)?,
                    Value::Number(x) => field.parse_elem(&x.to_string())?,
                    _ => return Err(bad("bad coefficient")),
                };
                entries.push((w.idx as usize, c));
            }
            vs.push(field.from_sparse(n, &entries));
        }
        Ok(Self::span(field, d, degree, vs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Gf2, Rationals};

    fn w(s: &str) -> Word {
        Word::parse_letter_string(s, 2).unwrap()
    }

    fn vec_q(entries: &[(&str, i64)]) -> Vec<num::BigRational> {
        let f = Rationals;
        let e: Vec<_> = entries.iter().map(|(s, c)| (w(s).idx as usize, f.from_i64(*c))).collect();
        f.from_sparse(4, &e)
    }

    #[test]
    fn small_spans() {
        let s = Subspace::span(Rationals, 2, 2, [vec_q(&[("xy", 1)]), vec_q(&[("xy", 1), ("yx", 1)])]);
        assert_eq!(s.dim(), 2);
        let c = Subspace::span(Rationals, 2, 2, [vec_q(&[("xy", 1), ("yx", -1)]), vec_q(&[("xy", -1), ("yx", 1)])]);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&vec_q(&[("xy", 1), ("yx", -1)])));
        assert!(!c.contains(&vec_q(&[("xy", 1)])));
        assert_eq!(Subspace::span(Rationals, 2, 2, Vec::new()).dim(), 0);
    }

    #[test]
    fn sum_and_intersection() {
        let a = Subspace::monomial_span(Gf2, 2, 2, [w("xx")]);
        let b = Subspace::monomial_span(Gf2, 2, 2, [w("xy")]);
        assert_eq!(a.sum(&b).unwrap().dim(), 2);
        assert_eq!(a.intersect(&b).unwrap().dim(), 0);
        let ab = a.sum(&b).unwrap();
        assert_eq!(ab.intersect(&a).unwrap(), a);
        assert_eq!(ab.codim(), 2);
    }

    #[test]
    fn full_rank_of_monomials() {
        for k in 0..=12 {
            assert_eq!(Subspace::full(Gf2, 2, k).dim(), 1 << k);
        }
    }

    #[test]
    fn annihilator_dimension() {
        let c = Subspace::span(Rationals, 2, 2, [vec_q(&[("xy", 1), ("yx", -1)])]);
        let ann = c.annihilator();
        assert_eq!(ann.dim(), 3);
        assert_eq!(ann.annihilator(), c);
    }

    #[test]
    fn json_round_trip() {
        let c = Subspace::span(Rationals, 2, 2, [vec_q(&[("xy", 1), ("yx", -1)])]);
        let j = c.to_json();
        assert_eq!(j["rows"][0]["yx"], "-1");
        assert_eq!(Subspace::from_json(Rationals, 2, &j).unwrap(), c);
    }
}
