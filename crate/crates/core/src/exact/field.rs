//! Coefficient fields and the dense vectors that live over them.
//!
//! Every linear-algebra routine in the crate is generic over [`Field`]. A field
//! value carries whatever runtime data it needs (the modulus for `GF(p)`), and
//! owns the dense vector representation used for rows: packed bitsets over
//! `GF(2)`, machine words over `GF(p)`, and big rationals over `Q`.

use std::fmt::Debug;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;
    type Vector: Clone + PartialEq + Debug + Send + Sync;

    /// Short stable name used in reports: `gf2`, `gfp:<p>`, `rational`.
    fn name(&self) -> String;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// Image of a rational number; fails when the denominator vanishes in the field.
    fn from_rational(&self, r: &BigRational) -> Result<Self::Elem>;

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_rational(&BigRational::from_integer(BigInt::from(v)))
            .expect("integers always map into a field")
    }

    /// Canonical decimal rendering; `parse_elem(format_elem(a)) == a`.
    fn format_elem(&self, a: &Self::Elem) -> String;

    fn parse_elem(&self, s: &str) -> Result<Self::Elem> {
        let r = parse_rational(s)?;
        self.from_rational(&r)
    }

    fn zero_vec(&self, len: usize) -> Self::Vector;
    fn vec_len(&self, v: &Self::Vector) -> usize;
    fn get(&self, v: &Self::Vector, i: usize) -> Self::Elem;
    fn set(&self, v: &mut Self::Vector, i: usize, a: &Self::Elem);

    /// First index `>= from` holding a nonzero entry.
    fn next_nonzero(&self, v: &Self::Vector, from: usize) -> Option<usize>;

    /// `y += a * x`.
    fn axpy(&self, y: &mut Self::Vector, a: &Self::Elem, x: &Self::Vector);

    fn scale(&self, v: &mut Self::Vector, a: &Self::Elem);

    fn is_zero_vec(&self, v: &Self::Vector) -> bool {
        self.next_nonzero(v, 0).is_none()
    }

    fn add_at(&self, v: &mut Self::Vector, i: usize, a: &Self::Elem) {
        let cur = self.get(v, i);
        self.set(v, i, &self.add(&cur, a));
    }

    fn nonzeros(&self, v: &Self::Vector) -> Vec<(usize, Self::Elem)> {
        let mut out = Vec::new();
        let mut i = 0;
        while let Some(j) = self.next_nonzero(v, i) {
            out.push((j, self.get(v, j)));
            i = j + 1;
        }
        out
    }

    fn dot(&self, a: &Self::Vector, b: &Self::Vector) -> Self::Elem {
        let mut acc = self.zero();
        for (i, x) in self.nonzeros(a) {
            let y = self.get(b, i);
            if !self.is_zero(&y) {
                acc = self.add(&acc, &self.mul(&x, &y));
            }
        }
        acc
    }

    fn from_sparse(&self, len: usize, entries: &[(usize, Self::Elem)]) -> Self::Vector {
        let mut v = self.zero_vec(len);
        for (i, a) in entries {
            self.add_at(&mut v, *i, a);
        }
        v
    }
}

/// Parses `a`, `-a`, or `a/b` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse {
        line: 1,
        column: 1,
        message: format!("invalid number `{s}`"),
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// The two-element field; vectors are packed 64 entries per word.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Gf2;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if bit {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i >> 6] ^= 1u64 << (i & 63);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn next_one(&self, from: usize) -> Option<usize> {
        if from >= self.len {
            return None;
        }
        let mut w = from >> 6;
        let mut word = self.words[w] & (!0u64 << (from & 63));
        loop {
            if word != 0 {
                let i = (w << 6) + word.trailing_zeros() as usize;
                return (i < self.len).then_some(i);
            }
            w += 1;
            if w >= self.words.len() {
                return None;
            }
            word = self.words[w];
        }
    }

    pub fn and_parity(&self, other: &BitVec) -> bool {
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }
}

impl Field for Gf2 {
    type Elem = bool;
    type Vector = BitVec;

    fn name(&self) -> String {
        "gf2".into()
    }
    fn zero(&self) -> bool {
        false
    }
    fn one(&self) -> bool {
        true
    }
    fn is_zero(&self, a: &bool) -> bool {
        !*a
    }
    fn add(&self, a: &bool, b: &bool) -> bool {
        a ^ b
    }
    fn neg(&self, a: &bool) -> bool {
        *a
    }
    fn mul(&self, a: &bool, b: &bool) -> bool {
        *a && *b
    }
    fn inv(&self, a: &bool) -> Option<bool> {
        a.then_some(true)
    }
    fn from_rational(&self, r: &BigRational) -> Result<bool> {
        let two = BigInt::from(2);
        if (r.denom() % &two).is_zero() {
            return Err(Error::Field(format!("{r} has no image in GF(2)")));
        }
        Ok(!(r.numer() % &two).is_zero())
    }
    fn format_elem(&self, a: &bool) -> String {
        if *a { "1" } else { "0" }.into()
    }

    fn zero_vec(&self, len: usize) -> BitVec {
        BitVec::zeros(len)
    }
    fn vec_len(&self, v: &BitVec) -> usize {
        v.len
    }
    fn get(&self, v: &BitVec, i: usize) -> bool {
        v.get(i)
    }
    fn set(&self, v: &mut BitVec, i: usize, a: &bool) {
        v.set(i, *a)
    }
    fn next_nonzero(&self, v: &BitVec, from: usize) -> Option<usize> {
        v.next_one(from)
    }
    fn axpy(&self, y: &mut BitVec, a: &bool, x: &BitVec) {
        if *a {
            y.xor_assign(x);
        }
    }
    fn scale(&self, v: &mut BitVec, a: &bool) {
        if !*a {
            v.words.iter_mut().for_each(|w| *w = 0);
        }
    }
    fn add_at(&self, v: &mut BitVec, i: usize, a: &bool) {
        if *a {
            v.flip(i);
        }
    }
    fn dot(&self, a: &BitVec, b: &BitVec) -> bool {
        a.and_parity(b)
    }
}

/// A prime field `GF(p)` with `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gfp {
    p: u32,
}

impl Gfp {
    pub fn new(p: u32) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::Field(format!("modulus {p} is not below 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::Field(format!("modulus {p} is not prime")));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    fn reduce(&self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }

    fn pow(&self, mut base: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.reduce(acc as u64 * base as u64);
            }
            base = self.reduce(base as u64 * base as u64);
            e >>= 1;
        }
        acc
    }
}

/// Deterministic trial division; moduli are below 2^31 so this is at most ~46k steps.
pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut f = 3u64;
    while f * f <= p as u64 {
        if (p as u64).is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

impl Field for Gfp {
    type Elem = u32;
    type Vector = Vec<u32>;

    fn name(&self) -> String {
        format!("gfp:{}", self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 + *b as u64)
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 * *b as u64)
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        (*a != 0).then(|| self.pow(*a, self.p as u64 - 2))
    }
    fn from_rational(&self, r: &BigRational) -> Result<u32> {
        let p = BigInt::from(self.p);
        let reduce = |x: &BigInt| -> u32 {
            let m = ((x % &p) + &p) % &p;
            m.to_u32().expect("residue fits in u32")
        };
        let d = reduce(r.denom());
        let inv = self
            .inv(&d)
            .ok_or_else(|| Error::Field(format!("{r} has no image in GF({})", self.p)))?;
        Ok(self.mul(&reduce(r.numer()), &inv))
    }
    fn format_elem(&self, a: &u32) -> String {
        a.to_string()
    }

    fn zero_vec(&self, len: usize) -> Vec<u32> {
        vec![0; len]
    }
    fn vec_len(&self, v: &Vec<u32>) -> usize {
        v.len()
    }
    fn get(&self, v: &Vec<u32>, i: usize) -> u32 {
        v[i]
    }
    fn set(&self, v: &mut Vec<u32>, i: usize, a: &u32) {
        v[i] = *a;
    }
    fn next_nonzero(&self, v: &Vec<u32>, from: usize) -> Option<usize> {
        v.iter()
            .skip(from)
            .position(|x| *x != 0)
            .map(|i| i + from)
    }
    fn axpy(&self, y: &mut Vec<u32>, a: &u32, x: &Vec<u32>) {
        if *a == 0 {
            return;
        }
        let p = self.p as u64;
        let a = *a as u64;
        for (yi, xi) in y.iter_mut().zip(x) {
            if *xi != 0 {
                *yi = ((*yi as u64 + a * *xi as u64) % p) as u32;
            }
        }
    }
    fn scale(&self, v: &mut Vec<u32>, a: &u32) {
        for x in v.iter_mut() {
            *x = self.mul(x, a);
        }
    }
}

/// The rationals, with dense rows of big rationals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;
    type Vector = Vec<BigRational>;

    fn name(&self) -> String {
        "rational".into()
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_rational(&self, r: &BigRational) -> Result<BigRational> {
        Ok(r.clone())
    }
    fn format_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn zero_vec(&self, len: usize) -> Vec<BigRational> {
        vec![BigRational::zero(); len]
    }
    fn vec_len(&self, v: &Vec<BigRational>) -> usize {
        v.len()
    }
    fn get(&self, v: &Vec<BigRational>, i: usize) -> BigRational {
        v[i].clone()
    }
    fn set(&self, v: &mut Vec<BigRational>, i: usize, a: &BigRational) {
        v[i] = a.clone();
    }
    fn next_nonzero(&self, v: &Vec<BigRational>, from: usize) -> Option<usize> {
        v.iter()
            .skip(from)
            .position(|x| !x.is_zero())
            .map(|i| i + from)
    }
    fn axpy(&self, y: &mut Vec<BigRational>, a: &BigRational, x: &Vec<BigRational>) {
        if a.is_zero() {
            return;
        }
        for (yi, xi) in y.iter_mut().zip(x) {
            if !xi.is_zero() {
                *yi += a * xi;
            }
        }
    }
    fn scale(&self, v: &mut Vec<BigRational>, a: &BigRational) {
        for x in v.iter_mut() {
            *x *= a;
        }
    }
}

/// Runtime field selection, as accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Gf2,
    Gfp(u32),
    Rational,
}

impl FromStr for FieldChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gf2" => Ok(Self::Gf2),
            "rational" | "q" => Ok(Self::Rational),
            _ => {
                let p = s
                    .strip_prefix("gfp:")
                    .and_then(|p| p.parse::<u32>().ok())
                    .ok_or_else(|| Error::Usage(format!("unknown field `{s}`")))?;
                Gfp::new(p)?;
                Ok(Self::Gfp(p))
            }
        }
    }
}

impl std::fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Gf2 => write!(f, "gf2"),
            Self::Gfp(p) => write!(f, "gfp:{p}"),
            Self::Rational => write!(f, "rational"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check_axioms<F: Field>(f: &F, sample: impl Fn(&mut ChaCha8Rng) -> F::Elem) {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let (a, b, c) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));
            assert_eq!(f.add(&a, &b), f.add(&b, &a));
            assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            assert_eq!(
                f.mul(&a, &f.add(&b, &c)),
                f.add(&f.mul(&a, &b), &f.mul(&a, &c))
            );
            assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
            if let Some(ai) = f.inv(&a) {
                assert_eq!(f.mul(&a, &ai), f.one());
            } else {
                assert!(f.is_zero(&a));
            }
            assert_eq!(f.parse_elem(&f.format_elem(&a)).unwrap(), a);
        }
    }

    #[test]
    fn field_axioms_hold() {
        check_axioms(&Gf2, |r| r.gen());
        let f = Gfp::new(2_147_483_647).unwrap();
        check_axioms(&f, |r| r.gen_range(0..2_147_483_647));
        let small = Gfp::new(7).unwrap();
        check_axioms(&small, |r| r.gen_range(0..7));
        check_axioms(&Rationals, |r| {
            BigRational::new(
                BigInt::from(r.gen_range(-20i64..20)),
                BigInt::from(r.gen_range(1i64..9)),
            )
        });
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(Gfp::new(15).is_err());
        assert!(Gfp::new(1).is_err());
        assert!(Gfp::new(2_147_483_659).is_err());
    }

    #[test]
    fn rational_images() {
        let f = Gfp::new(7).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.from_rational(&half).unwrap(), 4);
        assert!(Gf2.from_rational(&half).is_err());
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn bitvec_scan() {
        let mut v = BitVec::zeros(130);
        v.set(3, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.next_one(0), Some(3));
        assert_eq!(v.next_one(4), Some(64));
        assert_eq!(v.next_one(65), Some(129));
        assert_eq!(v.next_one(130), None);
    }

    #[test]
    fn field_choice_parses() {
        assert_eq!("gf2".parse::<FieldChoice>().unwrap(), FieldChoice::Gf2);
        assert_eq!(
            "gfp:101".parse::<FieldChoice>().unwrap(),
            FieldChoice::Gfp(101)
        );
        assert!("gfp:100".parse::<FieldChoice>().is_err());
    }
}
