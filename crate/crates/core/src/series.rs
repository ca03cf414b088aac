//! Hilbert series of graded quotients and the Golod-Shafarevich inequality.
//!
//! For `R = A/I` with `r_i` defining relations in degree `i`, the series
//! `H_R(t) (1 - d t + sum r_i t^i)` has every coefficient at least the
//! corresponding coefficient of `1`. This module checks that inequality on
//! exact dimensions, builds the clamped lower-bound series it implies, looks
//! for rational points where the truncated polynomial goes negative, and
//! computes exact dimensions of homogeneous quotients.

use std::collections::BTreeMap;

use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::algebra::{Echelon, Element};
use crate::error::{Error, Result};
use crate::exact::Field;

/// Generator count and number of relations per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub d: u32,
    counts: BTreeMap<usize, BigUint>,
}

impl DegreeProfile {
    pub fn new(d: u32, counts: impl IntoIterator<Item = (usize, u64)>) -> Result<Self> {
        Self::from_big(d, counts.into_iter().map(|(k, v)| (k, BigUint::from(v))))
    }

    pub fn from_big(d: u32, counts: impl IntoIterator<Item = (usize, BigUint)>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (k, v) in counts {
            if v.is_zero() {
                continue;
            }
            if k < 2 {
                return Err(Error::Invalid(format!(
                    "relations of degree {k} are not allowed (r_{k} must be 0)"
                )));
            }
            *out.entry(k).or_insert_with(BigUint::zero) += v;
        }
        Ok(Self { d, counts: out })
    }

    /// Profile of a list of homogeneous relations.
    pub fn of_relations(d: u32, relations: &[Element]) -> Result<Self> {
        let mut counts = Vec::new();
        for f in relations {
            let k = homogeneous_degree(f)?;
            counts.push((k, 1u64));
        }
        Self::new(d, counts)
    }

    pub fn r(&self, i: usize) -> BigUint {
        self.counts.get(&i).cloned().unwrap_or_default()
    }

    pub fn counts(&self) -> &BTreeMap<usize, BigUint> {
        &self.counts
    }

    pub fn truncated(&self, m: usize) -> Self {
        Self {
            d: self.d,
            counts: self.counts.range(..=m).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let counts: serde_json::Map<String, Value> = self
            .counts
            .iter()
            .map(|(k, v)| (k.to_string(), Value::String(v.to_string())))
            .collect();
        json!({"d": self.d, "degree_counts": counts})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Invalid(format!("profile json: {m}"));
        let d = v.get("d").and_then(Value::as_u64).ok_or_else(|| bad("missing d"))? as u32;
        let mut counts = Vec::new();
        if let Some(obj) = v.get("degree_counts") {
            for (k, c) in obj.as_object().ok_or_else(|| bad("degree_counts"))? {
                let k: usize = k.parse().map_err(|_| bad("degree key"))?;
                let c: BigUint = match c {
                    Value::String(s) => s.parse().map_err(|_| bad("count"))?,
                    Value::Number(n) => n.as_u64().ok_or_else(|| bad("count"))?.into(),
                    _ => return Err(bad("count")),
                };
                counts.push((k, c));
            }
        }
        Self::from_big(d, counts)
    }
}

/// Coefficients `c_0 .. c_N` of a series, with a note on whether clamping fired.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesBound {
    pub coeffs: Vec<BigInt>,
    pub clamped: bool,
}

impl SeriesBound {
    pub fn from_dims(dims: impl IntoIterator<Item = BigInt>) -> Self {
        Self {
            coeffs: dims.into_iter().collect(),
            clamped: false,
        }
    }

    pub fn from_usize(dims: &[usize]) -> Self {
        Self::from_dims(dims.iter().map(|&x| BigInt::from(x)))
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Degrees `1..=N` by default; `unital` prepends `c_0`.
    pub fn to_json(&self, unital: bool) -> Value {
        let skip = if unital { 0 } else { 1 };
        let s: Vec<Value> = self
            .coeffs
            .iter()
            .skip(skip)
            .map(|c| Value::String(c.to_string()))
            .collect();
        json!({"series": s, "clamped": self.clamped})
    }
}

/// Coefficients of `H(t) * (1 - d t + sum r_i t^i)` up to the length of `dims`.
pub fn gs_product(dims: &SeriesBound, profile: &DegreeProfile) -> Vec<BigInt> {
    let n = dims.coeffs.len();
    let d = BigInt::from(profile.d);
    (0..n)
        .map(|k| {
            let mut s = dims.coeffs[k].clone();
            if k >= 1 {
                s -= &d * &dims.coeffs[k - 1];
            }
            for (i, r) in profile.counts.range(..=k) {
                s += BigInt::from(r.clone()) * &dims.coeffs[k - i];
            }
            s
        })
        .collect()
}

/// Coefficient-wise `H(t)(1 - d t + sum r_i t^i) >= 1`.
pub fn gs_check(dims: &SeriesBound, profile: &DegreeProfile) -> bool {
    gs_first_violation(dims, profile).is_none()
}

/// Least degree where the inequality fails, with the offending coefficient.
pub fn gs_first_violation(dims: &SeriesBound, profile: &DegreeProfile) -> Option<(usize, BigInt)> {
    gs_product(dims, profile)
        .into_iter()
        .enumerate()
        .find(|(k, c)| *c < BigInt::from((*k == 0) as u8))
}

/// `c_0 = 1`, `c_n = max(0, d c_{n-1} - sum r_i c_{n-i})`.
pub fn gs_min_series(profile: &DegreeProfile, n: usize) -> SeriesBound {
    let d = BigInt::from(profile.d);
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    let mut clamped = false;
    for k in 1..=n {
        let mut s = &d * &c[k - 1];
        for (i, r) in profile.counts.range(..=k) {
            s -= BigInt::from(r.clone()) * &c[k - i];
        }
        if s.is_negative() {
            clamped = true;
            s = BigInt::zero();
        }
        c.push(s);
    }
    SeriesBound { coeffs: c, clamped }
}

/// A rational point where the truncated polynomial is negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub partial_degree: usize,
    pub witness: BigRational,
    pub value: BigRational,
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        json!({
            "partial_degree": self.partial_degree,
            "witness": fmt_q(&self.witness),
            "value": fmt_q(&self.value),
        })
    }
}

pub fn fmt_q(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchParams {
    /// Grid of all reduced fractions in `(0, 1)` with denominator at most this.
    pub max_denominator: u32,
    /// Bisection steps on the derivative sign when the grid finds nothing.
    pub bisection_steps: u32,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self {
            max_denominator: 5,
            bisection_steps: 64,
        }
    }
}

/// Outcome of the certificate search, including what was tried.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub certificate: Option<Certificate>,
    /// Least value of the polynomial over the interior grid and where it occurs.
    pub grid_min: (BigRational, BigRational),
    /// Value at the right end point `t = 1`.
    pub boundary_value: BigRational,
}

/// `1 - d t + sum_{i=2}^{m} r_i t^i`, exactly.
pub fn gs_polynomial(profile: &DegreeProfile, m: usize, t: &BigRational) -> BigRational {
    let mut s = BigRational::one() - BigRational::from_integer(profile.d.into()) * t;
    for (i, r) in profile.counts.range(..=m) {
        s += BigRational::from_integer(BigInt::from(r.clone())) * num::pow::pow(t.clone(), *i);
    }
    s
}

fn gs_derivative(profile: &DegreeProfile, m: usize, t: &BigRational) -> BigRational {
    let mut s = -BigRational::from_integer(profile.d.into());
    for (i, r) in profile.counts.range(..=m) {
        s += BigRational::from_integer(BigInt::from(r.clone()) * BigInt::from(*i))
            * num::pow::pow(t.clone(), *i - 1);
    }
    s
}

/// Looks for `t` in `(0, 1)` with `P_m(t) < 0`.
///
/// The grid minimum wins (ties go to the smaller `t`); if every grid value is
/// nonnegative, bisection on the sign of `P'` homes in on an interior minimum.
/// Finding nothing proves nothing.
pub fn certify_infinite(profile: &DegreeProfile, m: usize, search: SearchParams) -> Result<SearchReport> {
    if m < 2 {
        return Err(Error::Invalid("partial degree must be at least 2".into()));
    }
    if search.max_denominator < 2 {
        return Err(Error::Invalid("grid denominator must be at least 2".into()));
    }
    let mut grid: Vec<BigRational> = Vec::new();
    for q in 2..=search.max_denominator {
        for p in 1..q {
            if num::integer::gcd(p, q) == 1 {
                grid.push(BigRational::new(p.into(), q.into()));
            }
        }
    }
    grid.sort();
    let mut best: Option<(BigRational, BigRational)> = None;
    for t in &grid {
        let v = gs_polynomial(profile, m, t);
        if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
            best = Some((v, t.clone()));
        }
    }
    let (grid_value, grid_t) = best.expect("grid is nonempty");
    let boundary_value = gs_polynomial(profile, m, &BigRational::one());
    let mut certificate = None;
    if grid_value.is_negative() {
        certificate = Some(Certificate {
            partial_degree: m,
            witness: grid_t.clone(),
            value: grid_value.clone(),
        });
    } else {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::one();
        let two = BigRational::from_integer(2.into());
        for _ in 0..search.bisection_steps {
            let mid = (&lo + &hi) / &two;
            let v = gs_polynomial(profile, m, &mid);
            if v.is_negative() {
                certificate = Some(Certificate {
                    partial_degree: m,
                    witness: mid,
                    value: v,
                });
                break;
            }
            if gs_derivative(profile, m, &mid).is_negative() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    Ok(SearchReport {
        certificate,
        grid_min: (grid_value, grid_t),
        boundary_value,
    })
}

/// Checks a claimed certificate exactly.
pub fn verify_certificate(profile: &DegreeProfile, c: &Certificate) -> bool {
    c.witness.is_positive()
        && c.witness < BigRational::one()
        && gs_polynomial(profile, c.partial_degree, &c.witness) == c.value
        && c.value.is_negative()
}

pub(crate) fn homogeneous_degree(f: &Element) -> Result<usize> {
    match (f.order(), f.top_degree()) {
        (Some(a), Some(b)) if a == b && a >= 2 => Ok(a),
        (Some(a), Some(b)) if a == b => Err(Error::Invalid(format!(
            "relation `{f}` has degree {a}; relations need degree at least 2"
        ))),
        (Some(_), Some(_)) => Err(Error::Invalid(format!(
            "relation `{f}` is not homogeneous; use the quotient pipeline for inhomogeneous relations"
        ))),
        _ => Err(Error::Invalid("zero relation".into())),
    }
}

/// Exact `dim A(n)/I(n)` for `n = 0..=max_degree`, with `a_0 = 1`.
///
/// `I(n) = A(1) I(n-1) + I(n-1) A(1) + span{f : deg f = n}`.
pub fn hilbert_quotient<F: Field>(
    field: &F,
    relations: &[Element],
    d: u32,
    max_degree: usize,
    cap: usize,
) -> Result<Vec<usize>> {
    if max_degree > cap {
        return Err(Error::DegreeCap {
            degree: max_degree,
            cap,
        });
    }
    let mut by_degree: BTreeMap<usize, Vec<&Element>> = BTreeMap::new();
    for f in relations {
        if f.gens() != d {
            return Err(Error::Invalid("relation over a different generator count".into()));
        }
        by_degree.entry(homogeneous_degree(f)?).or_default().push(f);
    }
    let mut dims = vec![1usize];
    let mut prev: Vec<F::Vector> = Vec::new();
    let mut prev_full = false;
    for n in 1..=max_degree {
        let cols = (d as usize).pow(n as u32);
        if prev_full {
            dims.push(0);
            continue;
        }
        let mut e = Echelon::new(field.clone(), cols);
        let stride = cols / d as usize;
        for b in &prev {
            let nz = field.nonzeros(b);
            for l in 0..d as usize {
                if e.is_full() {
                    break;
                }
                let left: Vec<_> = nz.iter().map(|(i, c)| (l * stride + i, c.clone())).collect();
                e.insert(field.from_sparse(cols, &left));
                let right: Vec<_> = nz.iter().map(|(i, c)| (i * d as usize + l, c.clone())).collect();
                e.insert(field.from_sparse(cols, &right));
            }
        }
        for f in by_degree.get(&n).into_iter().flatten() {
            e.insert(f.to_vector(field, n)?);
        }
        dims.push(cols - e.rank());
        prev_full = e.is_full();
        prev = e.rows().to_vec();
    }
    Ok(dims)
}

/// Certified enclosure of `max_{N/2 <= n <= N} a_n^(1/n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntropyEstimate {
    pub n: usize,
    pub lower: BigRational,
    pub upper: BigRational,
    /// Degree attaining the lower end.
    pub argmax: usize,
}

impl EntropyEstimate {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn to_json(&self) -> Value {
        json!({
            "N": self.n,
            "argmax": self.argmax,
            "lower": fmt_q(&self.lower),
            "upper": fmt_q(&self.upper),
            "lower_decimal": format!("{:.6}", self.lower.to_f64().unwrap_or(f64::NAN)),
            "upper_decimal": format!("{:.6}", self.upper.to_f64().unwrap_or(f64::NAN)),
        })
    }
}

const ENTROPY_BITS: u32 = 40;

/// `dims[n] = a_n`; the window is `ceil(N/2) ..= N` with `N = dims.len() - 1`.
pub fn entropy_estimate(dims: &[BigUint]) -> Result<EntropyEstimate> {
    if dims.len() < 4 {
        return Err(Error::Invalid("entropy needs at least four coefficients".into()));
    }
    let n_max = dims.len() - 1;
    let scale = BigUint::one() << ENTROPY_BITS as usize;
    let mut best: Option<EntropyEstimate> = None;
    for (n, a) in dims.iter().enumerate().skip(n_max.div_ceil(2)) {
        if a.is_zero() || n == 0 {
            continue;
        }
        // k = floor(2^B a^(1/n)) so k/2^B <= a^(1/n) < (k+1)/2^B.
        let shifted = a << (ENTROPY_BITS as usize * n);
        let k = shifted.nth_root(n as u32);
        let exact = num::pow::pow(k.clone(), n) == shifted;
        let lo = BigRational::new(k.clone().into(), scale.clone().into());
        let hi = if exact {
            lo.clone()
        } else {
            BigRational::new((k + 1u32).into(), scale.clone().into())
        };
        match &mut best {
            None => {
                best = Some(EntropyEstimate {
                    n: n_max,
                    lower: lo,
                    upper: hi,
                    argmax: n,
                })
            }
            Some(b) => {
                if lo > b.lower {
                    b.lower = lo;
                    b.argmax = n;
                }
                if hi > b.upper {
                    b.upper = hi;
                }
            }
        }
    }
    best.ok_or_else(|| Error::Invalid("all coefficients in the window vanish".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_relations;
    use crate::exact::{Gf2, Rationals};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn series(v: &[i64]) -> SeriesBound {
        SeriesBound::from_dims(v.iter().map(|&x| BigInt::from(x)))
    }

    #[test]
    fn gs_check_examples() {
        let free = DegreeProfile::new(2, []).unwrap();
        let pow2: Vec<i64> = (0..12).map(|n| 1 << n).collect();
        assert!(gs_check(&series(&pow2), &free));
        let one_rel = DegreeProfile::new(2, [(2, 1)]).unwrap();
        let lin: Vec<i64> = (0..12).map(|n| n + 1).collect();
        assert!(gs_check(&series(&lin), &one_rel));
        assert!(!gs_check(&series(&[1; 12]), &free));
        assert_eq!(gs_first_violation(&series(&[1; 12]), &free), Some((1, BigInt::from(-1))));
    }

    #[test]
    fn degree_one_relations_rejected() {
        assert!(DegreeProfile::new(2, [(1, 1)]).is_err());
    }

    #[test]
    fn min_series_examples() {
        let s = gs_min_series(&DegreeProfile::new(2, []).unwrap(), 10);
        assert_eq!(s.coeffs, (0..=10).map(|n| BigInt::from(1 << n)).collect::<Vec<_>>());
        let s = gs_min_series(&DegreeProfile::new(2, [(2, 1)]).unwrap(), 10);
        assert_eq!(s.coeffs, (0..=10).map(|n| BigInt::from(n + 1)).collect::<Vec<_>>());
        assert!(!s.clamped);
        let s = gs_min_series(&DegreeProfile::new(2, [(2, 4)]).unwrap(), 4);
        assert_eq!(s.coeffs, [1, 2, 0, 0, 0].map(BigInt::from).to_vec());
        assert!(s.clamped);
    }

    #[test]
    fn certificates() {
        let p = DegreeProfile::new(2, [(3, 1)]).unwrap();
        let r = certify_infinite(&p, 3, SearchParams::default()).unwrap();
        let c = r.certificate.unwrap();
        assert_eq!((c.witness.clone(), c.value.clone()), (q(4, 5), q(-11, 125)));
        assert!(verify_certificate(&p, &c));

        let p = DegreeProfile::new(2, [(2, 1)]).unwrap();
        let r = certify_infinite(&p, 2, SearchParams::default()).unwrap();
        assert!(r.certificate.is_none());
        assert!(r.grid_min.0.is_positive());
        assert!(r.boundary_value.is_zero());

        let free = DegreeProfile::new(2, []).unwrap();
        assert_eq!(gs_polynomial(&free, 2, &q(3, 4)), q(-1, 2));
        assert!(certify_infinite(&free, 2, SearchParams::default()).unwrap().certificate.is_some());
        assert!(certify_infinite(&free, 1, SearchParams::default()).is_err());
    }

    #[test]
    fn quotient_dimensions() {
        let none = hilbert_quotient(&Gf2, &[], 2, 12, 20).unwrap();
        assert_eq!(none, (0..=12).map(|n| 1usize << n).collect::<Vec<_>>());
        let yx = parse_relations("y*x", 2, 20).unwrap();
        let dims = hilbert_quotient(&Gf2, &yx, 2, 12, 20).unwrap();
        assert_eq!(dims, (0..=12).map(|n| n + 1).collect::<Vec<_>>());
        let comm = parse_relations("x*y - y*x\nx^2\ny^2", 2, 20).unwrap();
        let dims = hilbert_quotient(&Rationals, &comm, 2, 6, 20).unwrap();
        assert_eq!(dims, vec![1, 2, 1, 0, 0, 0, 0]);
        let inhom = parse_relations("x^2 + x^3", 2, 20).unwrap();
        assert!(hilbert_quotient(&Gf2, &inhom, 2, 4, 20).is_err());
    }

    #[test]
    fn entropy_examples() {
        let pow2: Vec<BigUint> = (0..=32).map(|n| BigUint::one() << n as usize).collect();
        let e = entropy_estimate(&pow2).unwrap();
        assert!(e.is_exact());
        assert_eq!(e.lower, q(2, 1));

        let lin: Vec<BigUint> = (0..=64u32).map(|n| BigUint::from(n + 1)).collect();
        let e = entropy_estimate(&lin).unwrap();
        // the window max is 33^(1/32), attained at the left end of the window
        assert_eq!(e.argmax, 32);
        assert!(e.upper < q(112, 100) && e.lower > q(111, 100));
        let zeros = vec![BigUint::zero(); 8];
        assert!(entropy_estimate(&zeros).is_err());
    }
}
