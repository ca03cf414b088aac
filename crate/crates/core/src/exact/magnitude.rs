//! Exact products of powers, for integers far too large to materialize.
//!
//! A [`Magnitude`] is `coeff * prod(base_i ^ exp_i)`. Exponents are
//! [`Exponent`]s: signed sums `sum(m_T * 2^T)`, so both `40^(8 m^3)` and
//! `2^(2^T)` with `T` in the hundreds of millions stay a few words long.
//! Comparison is exact: equal values are detected structurally after splitting
//! bases into a pairwise coprime family, unequal values are separated by exact
//! integers when small, or by certified log enclosures otherwise.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::bigint::{BigInt, BigUint, Sign};
use num::{Integer, One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::log2::log2_enclosure;
use crate::error::{Error, Result};

/// Powers `2^T` with `T` at most this are folded into the integer part.
const MATERIALIZE_T: u64 = 4096;
/// Exact evaluation is used when both sides have at most this many bits.
const EXACT_BITS: u64 = 1 << 21;
const START_PRECISION: u32 = 64;
const MAX_PRECISION: u32 = 1 << 16;

/// `sum(m_T * 2^T)` with arbitrary-precision multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Exponent {
    /// Key 0 holds the materialized integer part; other keys exceed `MATERIALIZE_T`.
    terms: BTreeMap<u64, BigInt>,
}

impl Exponent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn int<I: Into<BigInt>>(v: I) -> Self {
        let mut e = Self::zero();
        e.add_term(0, v.into());
        e
    }

    /// `2^t`.
    pub fn pow2(t: u64) -> Self {
        let mut e = Self::zero();
        e.add_term(t, BigInt::one());
        e
    }

    fn add_term(&mut self, t: u64, m: BigInt) {
        if m.is_zero() {
            return;
        }
        let (t, m) = if t <= MATERIALIZE_T {
            (0, m << t as usize)
        } else {
            (t, m)
        };
        let slot = self.terms.entry(t).or_insert_with(BigInt::zero);
        *slot += m;
        if slot.is_zero() {
            self.terms.remove(&t);
        }
        if t != 0 {
            self.carry(t);
        }
    }

    /// Pushes even multiplicities upward so `2 * 2^T` and `2^(T+1)` coincide.
    fn carry(&mut self, mut t: u64) {
        while let Some(m) = self.terms.get(&t) {
            if m.is_odd() {
                break;
            }
            let half = m.clone() >> 1usize;
            self.terms.remove(&t);
            t += 1;
            let slot = self.terms.entry(t).or_insert_with(BigInt::zero);
            *slot += half;
            if slot.is_zero() {
                self.terms.remove(&t);
                break;
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.terms.iter().map(|(t, m)| (*t, m))
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        let mut out = self.clone();
        for (t, m) in &other.terms {
            out.add_term(*t, m.clone());
        }
        out
    }

    pub fn neg(&self) -> Exponent {
        Exponent {
            terms: self.terms.iter().map(|(t, m)| (*t, -m)).collect(),
        }
    }

    pub fn sub(&self, other: &Exponent) -> Exponent {
        self.add(&other.neg())
    }

    pub fn mul_int(&self, k: &BigInt) -> Exponent {
        let mut out = Exponent::zero();
        for (t, m) in &self.terms {
            out.add_term(*t, m * k);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as an integer when no unmaterialized power remains.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        let mut entries: Vec<(u64, BigInt)> =
            self.terms.iter().rev().map(|(t, m)| (*t, m.clone())).collect();
        loop {
            entries.retain(|(_, m)| !m.is_zero());
            match entries.len() {
                0 => return Ordering::Equal,
                1 => return entries[0].1.sign().cmp_zero(),
                _ => {}
            }
            let (t1, m1) = entries[0].clone();
            let t2 = entries[1].0;
            let rest: BigInt = entries[1..].iter().map(|(_, m)| m.abs()).sum();
            let gap = t1 - t2;
            // |m1| 2^t1 >= 2^(bits(m1) - 1 + t1) and the rest is below 2^(t2 + bits(rest)).
            if gap + m1.bits() > rest.bits() + 1 {
                return m1.sign().cmp_zero();
            }
            entries.remove(0);
            entries[0].1 += m1 << gap as usize;
        }
    }

    /// Rough value of `log2` of the exponent's magnitude, for display only.
    pub fn approx(&self) -> f64 {
        self.terms
            .iter()
            .map(|(t, m)| m.to_f64().unwrap_or(f64::INFINITY) * 2f64.powf(*t as f64))
            .sum()
    }

    pub fn to_json(&self) -> Vec<Value> {
        let mut out = Vec::new();
        for (t, m) in &self.terms {
            if *t == 0 {
                out.push(Value::String(m.to_string()));
            } else if m.is_one() {
                out.push(json!({"base": "2", "exp": t.to_string()}));
            } else {
                out.push(json!({"base": "2", "exp": t.to_string(), "mult": m.to_string()}));
            }
        }
        out
    }

    fn from_json(v: &Value) -> Result<Exponent> {
        let bad = || Error::Invalid(format!("bad exponent {v}"));
        match v {
            Value::String(s) => Ok(Exponent::int(s.parse::<BigInt>().map_err(|_| bad())?)),
            Value::Object(o) => {
                if o.get("base").and_then(Value::as_str) != Some("2") {
                    return Err(bad());
                }
                let t: u64 = o
                    .get("exp")
                    .and_then(Value::as_str)
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(bad)?;
                let m: BigInt = match o.get("mult") {
                    None => BigInt::one(),
                    Some(m) => m
                        .as_str()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(bad)?,
                };
                let mut e = Exponent::zero();
                e.add_term(t, m);
                Ok(e)
            }
            _ => Err(bad()),
        }
    }
}

trait SignCmp {
    fn cmp_zero(self) -> Ordering;
}

impl SignCmp for Sign {
    fn cmp_zero(self) -> Ordering {
        match self {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (t, m) in self.terms.iter().rev() {
            let neg = m.is_negative();
            if !first {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            first = false;
            let a = m.abs();
            if *t == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "2^{t}")?;
            } else {
                write!(f, "{a}*2^{t}")?;
            }
        }
        Ok(())
    }
}

/// A positive rational of the form `coeff * prod(base ^ exp)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Magnitude {
    coeff: BigUint,
    factors: BTreeMap<BigUint, Exponent>,
}

impl Magnitude {
    pub fn one() -> Self {
        Self::from_biguint(BigUint::one())
    }

    pub fn from_u64(v: u64) -> Self {
        Self::from_biguint(BigUint::from(v))
    }

    pub fn from_biguint(v: BigUint) -> Self {
        assert!(!v.is_zero(), "magnitudes are positive");
        Self {
            coeff: v,
            factors: BTreeMap::new(),
        }
    }

    /// `base ^ exp`.
    pub fn power(base: u64, exp: Exponent) -> Self {
        Self::power_big(BigUint::from(base), exp)
    }

    pub fn power_big(base: BigUint, exp: Exponent) -> Self {
        assert!(!base.is_zero(), "magnitudes are positive");
        let mut m = Self::one();
        m.push_factor(base, exp);
        m
    }

    /// `2^e`.
    pub fn pow2<I: Into<BigInt>>(e: I) -> Self {
        Self::power(2, Exponent::int(e))
    }

    /// `2^(2^t)`.
    pub fn pow2_pow2(t: u64) -> Self {
        Self::power(2, Exponent::pow2(t))
    }

    fn push_factor(&mut self, base: BigUint, exp: Exponent) {
        if base.is_one() || exp.is_zero() {
            return;
        }
        let slot = self.factors.entry(base.clone()).or_default();
        *slot = slot.add(&exp);
        if slot.is_zero() {
            self.factors.remove(&base);
        }
    }

    pub fn coeff(&self) -> &BigUint {
        &self.coeff
    }

    pub fn factors(&self) -> impl Iterator<Item = (&BigUint, &Exponent)> {
        self.factors.iter()
    }

    pub fn mul(&self, other: &Magnitude) -> Magnitude {
        let mut out = self.clone();
        out.coeff *= &other.coeff;
        for (b, e) in &other.factors {
            out.push_factor(b.clone(), e.clone());
        }
        out
    }

    /// Integer power; the coefficient moves into the factor list when `k != 1`.
    pub fn pow(&self, k: &BigInt) -> Magnitude {
        let mut out = Magnitude::one();
        if !self.coeff.is_one() {
            out.push_factor(self.coeff.clone(), Exponent::int(k.clone()));
        }
        for (b, e) in &self.factors {
            out.push_factor(b.clone(), e.mul_int(k));
        }
        out
    }

    pub fn pow_u64(&self, k: u64) -> Magnitude {
        self.pow(&BigInt::from(k))
    }

    pub fn recip(&self) -> Magnitude {
        self.pow(&BigInt::from(-1))
    }

    pub fn div(&self, other: &Magnitude) -> Magnitude {
        self.mul(&other.recip())
    }

    /// `self / 2`.
    pub fn half(&self) -> Magnitude {
        self.mul(&Magnitude::pow2(-1))
    }

    /// The exact integer value when it has at most `max_bits` bits and is integral.
    pub fn to_biguint(&self, max_bits: u64) -> Option<BigUint> {
        let mut num = self.coeff.clone();
        let mut den = BigUint::one();
        for (b, e) in &self.factors {
            let k = e.to_bigint()?;
            if (k.abs() * BigInt::from(b.bits() - 1)) > BigInt::from(max_bits) {
                return None;
            }
            let k = k.to_i64()?;
            let p = num::pow::pow(b.clone(), k.unsigned_abs() as usize);
            if k >= 0 {
                num *= p;
            } else {
                den *= p;
            }
        }
        let (q, r) = num.div_rem(&den);
        (r.is_zero() && q.bits() <= max_bits).then_some(q)
    }

    /// Approximate `log2`, for display and diagnostics only.
    pub fn approx_log2(&self) -> f64 {
        let lg = |b: &BigUint| -> f64 {
            let bits = b.bits();
            if bits <= 1000 {
                b.to_f64().unwrap().log2()
            } else {
                let top = (b >> (bits - 64) as usize).to_f64().unwrap();
                top.log2() + (bits - 64) as f64
            }
        };
        let mut s = lg(&self.coeff);
        for (b, e) in &self.factors {
            s += e.approx() * lg(b);
        }
        s
    }

    /// Certified three-way comparison.
    pub fn cmp_exact(&self, other: &Magnitude) -> Result<Ordering> {
        let mut acc: BTreeMap<BigUint, Exponent> = BTreeMap::new();
        let mut put = |b: &BigUint, e: Exponent| {
            if b.is_one() || e.is_zero() {
                return;
            }
            let slot = acc.entry(b.clone()).or_default();
            *slot = slot.add(&e);
        };
        put(&self.coeff, Exponent::int(1));
        put(&other.coeff, Exponent::int(-1));
        for (b, e) in &self.factors {
            put(b, e.clone());
        }
        for (b, e) in &other.factors {
            put(b, e.neg());
        }
        let basis = coprime_refine(acc);
        log_sign(&basis)
    }

    pub fn lt(&self, other: &Magnitude) -> Result<bool> {
        Ok(self.cmp_exact(other)? == Ordering::Less)
    }

    pub fn le(&self, other: &Magnitude) -> Result<bool> {
        Ok(self.cmp_exact(other)? != Ordering::Greater)
    }

    pub fn to_json(&self) -> Value {
        let mut factors = Vec::new();
        for (b, e) in &self.factors {
            for exp in e.to_json() {
                factors.push(json!({"base": b.to_string(), "exp": exp}));
            }
        }
        json!({"coeff": self.coeff.to_string(), "factors": factors})
    }

    pub fn from_json(v: &Value) -> Result<Magnitude> {
        let bad = || Error::Invalid(format!("bad magnitude {v}"));
        if let Some(s) = v.as_str() {
            let n: BigUint = s.parse().map_err(|_| bad())?;
            if n.is_zero() {
                return Err(bad());
            }
            return Ok(Magnitude::from_biguint(n));
        }
        if let Some(n) = v.as_u64() {
            if n == 0 {
                return Err(bad());
            }
            return Ok(Magnitude::from_u64(n));
        }
        let coeff: BigUint = v
            .get("coeff")
            .and_then(Value::as_str)
            .unwrap_or("1")
            .parse()
            .map_err(|_| bad())?;
        if coeff.is_zero() {
            return Err(bad());
        }
        let mut m = Magnitude::from_biguint(coeff);
        if let Some(fs) = v.get("factors") {
            for f in fs.as_array().ok_or_else(bad)? {
                let base: BigUint = f
                    .get("base")
                    .and_then(Value::as_str)
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(bad)?;
                if base.is_zero() {
                    return Err(bad());
                }
                let exp = Exponent::from_json(f.get("exp").ok_or_else(bad)?)?;
                m.push_factor(base, exp);
            }
        }
        Ok(m)
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.coeff.is_one() || self.factors.is_empty() {
            parts.push(self.coeff.to_string());
        }
        for (b, e) in &self.factors {
            match e.to_bigint() {
                Some(k) if k.is_one() => parts.push(b.to_string()),
                Some(k) if !k.is_negative() => parts.push(format!("{b}^{k}")),
                _ => parts.push(format!("{b}^({e})")),
            }
        }
        write!(f, "{}", parts.join(" * "))
    }
}

/// Splits bases until they are pairwise coprime, carrying exponents along.
/// Logs of pairwise coprime integers above one are linearly independent over
/// the rationals, so afterwards the product is one iff every exponent is zero.
fn coprime_refine(mut acc: BTreeMap<BigUint, Exponent>) -> Vec<(BigUint, Exponent)> {
    acc.retain(|b, e| !b.is_one() && !e.is_zero());
    'outer: loop {
        let keys: Vec<BigUint> = acc.keys().cloned().collect();
        for i in 0..keys.len() {
            for j in i + 1..keys.len() {
                let g = keys[i].gcd(&keys[j]);
                if g.is_one() {
                    continue;
                }
                let ep = acc.remove(&keys[i]).unwrap();
                let eq = acc.remove(&keys[j]).unwrap();
                let mut put = |b: BigUint, e: Exponent| {
                    if b.is_one() || e.is_zero() {
                        return;
                    }
                    let slot = acc.entry(b.clone()).or_default();
                    *slot = slot.add(&e);
                    if slot.is_zero() {
                        acc.remove(&b);
                    }
                };
                put(&keys[i] / &g, ep.clone());
                put(&keys[j] / &g, eq.clone());
                put(g, ep.add(&eq));
                continue 'outer;
            }
        }
        break;
    }
    acc.retain(|_, e| e.signum() != Ordering::Equal);
    acc.into_iter().collect()
}

/// Sign of `sum(E_q * log2 q)` over a coprime family.
fn log_sign(basis: &[(BigUint, Exponent)]) -> Result<Ordering> {
    if basis.is_empty() {
        return Ok(Ordering::Equal);
    }
    if let Some(ord) = exact_sign(basis) {
        return Ok(ord);
    }
    // Regroup as sum over T of 2^T * L_T with L_T = sum_q m_{q,T} log2 q.
    let mut by_t: BTreeMap<u64, Vec<(usize, BigInt)>> = BTreeMap::new();
    for (qi, (_, e)) in basis.iter().enumerate() {
        for (t, m) in e.terms() {
            by_t.entry(t).or_default().push((qi, m.clone()));
        }
    }
    let mut precision = START_PRECISION;
    loop {
        match interval_sign(basis, by_t.clone(), precision) {
            Some(ord) => return Ok(ord),
            None if precision >= MAX_PRECISION => {
                return Err(Error::Undecided(format!(
                    "log-interval refinement reached {precision} bits"
                )))
            }
            None => precision *= 2,
        }
    }
}

/// Direct evaluation when all exponents are small integers.
fn exact_sign(basis: &[(BigUint, Exponent)]) -> Option<Ordering> {
    let mut pos_bits = 0u64;
    let mut neg_bits = 0u64;
    let mut exps = Vec::new();
    for (q, e) in basis {
        let k = e.to_bigint()?.to_i64()?;
        let bits = (k.unsigned_abs()).checked_mul(q.bits())?;
        if k > 0 {
            pos_bits = pos_bits.checked_add(bits)?;
        } else {
            neg_bits = neg_bits.checked_add(bits)?;
        }
        exps.push(k);
    }
    if pos_bits > EXACT_BITS || neg_bits > EXACT_BITS {
        return None;
    }
    let mut lhs = BigUint::one();
    let mut rhs = BigUint::one();
    for ((q, _), k) in basis.iter().zip(exps) {
        let p = num::pow::pow(q.clone(), k.unsigned_abs() as usize);
        if k > 0 {
            lhs *= p;
        } else {
            rhs *= p;
        }
    }
    Some(lhs.cmp(&rhs))
}

/// Enclosure of `sum m_q log2 q`, scaled by `2^p`.
fn combo_enclosure(
    basis: &[(BigUint, Exponent)],
    coeffs: &[(usize, BigInt)],
    p: u32,
) -> (BigInt, BigInt) {
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    for (qi, m) in coeffs {
        let (l, h) = log2_enclosure(&basis[*qi].0, p);
        if m.is_positive() {
            lo += m * l;
            hi += m * h;
        } else {
            lo += m * h;
            hi += m * l;
        }
    }
    (lo, hi)
}

fn interval_sign(
    basis: &[(BigUint, Exponent)],
    mut by_t: BTreeMap<u64, Vec<(usize, BigInt)>>,
    p: u32,
) -> Option<Ordering> {
    loop {
        let (&t1, _) = by_t.iter().next_back()?;
        let top = by_t.remove(&t1).unwrap();
        let top = merge_coeffs(top);
        if top.is_empty() {
            if by_t.is_empty() {
                return Some(Ordering::Equal);
            }
            continue;
        }
        let (lo, hi) = combo_enclosure(basis, &top, p);
        let Some((&t2, _)) = by_t.iter().next_back() else {
            if lo.is_positive() {
                return Some(Ordering::Greater);
            }
            if hi.is_negative() {
                return Some(Ordering::Less);
            }
            return None;
        };
        // Everything below t1 is at most 2^t2 * sum_T U_T in absolute value.
        let mut rest = BigInt::zero();
        for coeffs in by_t.values() {
            for (qi, m) in coeffs {
                let (_, h) = log2_enclosure(&basis[*qi].0, p);
                rest += m.abs() * (h + 1);
            }
        }
        let gap = t1 - t2;
        let shift = gap.min(rest.bits() + 2) as usize;
        if lo.is_positive() && (lo.clone() << shift) > rest {
            return Some(Ordering::Greater);
        }
        if hi.is_negative() && ((-hi.clone()) << shift) > rest {
            return Some(Ordering::Less);
        }
        if gap > 4 * MATERIALIZE_T {
            // Merging would create enormous multiplicities; only precision can help.
            return None;
        }
        let slot = by_t.entry(t2).or_default();
        for (qi, m) in top {
            slot.push((qi, m << gap as usize));
        }
    }
}

fn merge_coeffs(v: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    let mut m: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (qi, c) in v {
        *m.entry(qi).or_insert_with(BigInt::zero) += c;
    }
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// `r < 2^t`, decided from the bit length of `r` alone.
pub fn bitlen_lt_pow2(r: &BigUint, t: &BigUint) -> bool {
    BigUint::from(r.bits()) <= *t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: u64) -> Magnitude {
        Magnitude::from_u64(v)
    }

    #[test]
    fn small_equalities() {
        assert_eq!(Magnitude::pow2(8).cmp_exact(&m(256)), Ok(Ordering::Equal));
        assert_eq!(
            Magnitude::power(2, Exponent::pow2(3)).cmp_exact(&m(256)),
            Ok(Ordering::Equal)
        );
        assert_eq!(
            Magnitude::power(4, Exponent::int(3)).cmp_exact(&Magnitude::power(8, Exponent::int(2))),
            Ok(Ordering::Equal)
        );
        assert_eq!(m(255).cmp_exact(&Magnitude::pow2(8)), Ok(Ordering::Less));
    }

    #[test]
    fn huge_towers_compare() {
        // 40^(8 * 101^3) * 2^(3m' + 4) against 40^(8 m'^3) with m' = 200 * 101^3 + 1.
        let mp = BigInt::from(200u64 * 101 * 101 * 101 + 1);
        let lhs = Magnitude::power(40, Exponent::int(8 * 101u64 * 101 * 101))
            .mul(&Magnitude::pow2(BigInt::from(3) * &mp + 4));
        let rhs = Magnitude::power(40, Exponent::int(BigInt::from(8) * &mp * &mp * &mp));
        assert_eq!(lhs.cmp_exact(&rhs), Ok(Ordering::Less));
        // 40^(8 m'^3) < 2^(2^(m' - 104))
        let cap = Magnitude::power(2, Exponent::pow2(206_060_201 - 104));
        assert_eq!(rhs.cmp_exact(&cap), Ok(Ordering::Less));
        assert_eq!(cap.cmp_exact(&rhs), Ok(Ordering::Greater));
    }

    #[test]
    fn close_nonmaterialized_values() {
        // 3^(2^5000) = 2^(1.58.. * 2^5000) sits strictly between 2^(2^5000) and 2^(2^5001).
        let a = Magnitude::power(3, Exponent::pow2(5000));
        let b = Magnitude::power(2, Exponent::pow2(5001));
        assert_eq!(a.cmp_exact(&b), Ok(Ordering::Less));
        assert_eq!(a.cmp_exact(&Magnitude::pow2_pow2(5000)), Ok(Ordering::Greater));
        let c = Magnitude::power(2, Exponent::pow2(5001).add(&Exponent::int(1)));
        assert_eq!(b.cmp_exact(&c), Ok(Ordering::Less));
        let d = Magnitude::power(4, Exponent::pow2(5000));
        assert_eq!(b.cmp_exact(&d), Ok(Ordering::Equal));
    }

    #[test]
    fn exponent_sign_with_cancellation() {
        let e = Exponent::pow2(5001)
            .sub(&Exponent::pow2(5000))
            .sub(&Exponent::pow2(5000));
        assert!(e.is_zero());
        let f = Exponent::pow2(6000).sub(&Exponent::pow2(5999)).sub(&Exponent::int(1));
        assert_eq!(f.signum(), Ordering::Greater);
        let g = Exponent::pow2(5000).neg().add(&Exponent::int(7));
        assert_eq!(g.signum(), Ordering::Less);
    }

    #[test]
    fn half_and_recip() {
        let r = Magnitude::pow2(16);
        let lower = r.pow_u64(4).half();
        assert_eq!(lower.cmp_exact(&Magnitude::pow2(63)), Ok(Ordering::Equal));
        assert_eq!(lower.to_biguint(100), Some(BigUint::one() << 63usize));
    }

    #[test]
    fn json_round_trip() {
        let a = Magnitude::from_u64(3)
            .mul(&Magnitude::power(40, Exponent::int(8_242_408)))
            .mul(&Magnitude::power(2, Exponent::pow2(206_060_198).add(&Exponent::int(-1))));
        let j = a.to_json();
        assert_eq!(Magnitude::from_json(&j).unwrap(), a);
        assert_eq!(
            Magnitude::pow2_pow2(5000).to_json(),
            json!({"coeff": "1", "factors": [{"base": "2", "exp": {"base": "2", "exp": "5000"}}]})
        );
    }

    #[test]
    fn bitlen_threshold() {
        let t = |v: u64| BigUint::from(v);
        assert!(bitlen_lt_pow2(&t(255), &t(8)));
        assert!(!bitlen_lt_pow2(&t(256), &t(8)));
        assert!(!bitlen_lt_pow2(&t(1), &t(0)));
        assert!(bitlen_lt_pow2(&t(1), &t(1)));
    }
}
