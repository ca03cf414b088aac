//! Elements of the free algebra with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num::rational::BigRational;
use num::{One, Signed, Zero};

use super::word::{generator_name, Word};
use crate::error::{Error, Result};
use crate::exact::Field;

/// A finite sum of words with nonzero rational coefficients.
///
/// Terms are ordered by degree and then lexicographically, so iterating yields
/// the homogeneous components in increasing degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    d: u32,
    terms: BTreeMap<Word, BigRational>,
}

impl Element {
    pub fn zero(d: u32) -> Self {
        Self {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(d: u32, c: BigRational) -> Self {
        Self::monomial(d, Word::EMPTY, c)
    }

    pub fn generator(d: u32, l: u32) -> Self {
        Self::monomial(d, Word::letter(l), BigRational::one())
    }

    pub fn monomial(d: u32, w: Word, c: BigRational) -> Self {
        let mut e = Self::zero(d);
        e.add_term(w, c);
        e
    }

    pub fn from_terms(d: u32, terms: impl IntoIterator<Item = (Word, BigRational)>) -> Self {
        let mut e = Self::zero(d);
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn gens(&self) -> u32 {
        self.d
    }

    pub fn add_term(&mut self, w: Word, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Element {
        self.scale(&-BigRational::one())
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Element {
        Element::from_terms(self.d, self.terms.iter().map(|(w, a)| (*w, a * c)))
    }

    /// Concatenation product; fails when a product term would exceed `cap`.
    pub fn mul(&self, other: &Element, cap: usize) -> Result<Element> {
        if self.d != other.d {
            return Err(Error::Invalid(format!(
                "generator counts differ: {} vs {}",
                self.d, other.d
            )));
        }
        if let (Some(a), Some(b)) = (self.top_degree(), other.top_degree()) {
            if a + b > cap {
                return Err(Error::DegreeCap {
                    degree: a + b,
                    cap,
                });
            }
        }
        let mut out = Element::zero(self.d);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v, self.d), a * b);
            }
        }
        Ok(out)
    }

    /// Product that silently drops terms of degree above `max_deg`.
    pub fn mul_truncated(&self, other: &Element, max_deg: usize) -> Element {
        let mut out = Element::zero(self.d);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if (u.deg + v.deg) as usize <= max_deg {
                    out.add_term(u.concat(v, self.d), a * b);
                }
            }
        }
        out
    }

    /// Least degree carrying a nonzero term.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().next().map(|w| w.deg as usize)
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|w| w.deg as usize)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.order() == self.top_degree()
    }

    /// Degree-`k` part.
    pub fn component(&self, k: usize) -> Element {
        Element::from_terms(
            self.d,
            self.terms
                .iter()
                .filter(|(w, _)| w.deg as usize == k)
                .map(|(w, c)| (*w, c.clone())),
        )
    }

    /// Nonzero homogeneous components in increasing degree.
    pub fn components(&self) -> Vec<(usize, Element)> {
        let mut out: Vec<(usize, Element)> = Vec::new();
        for (w, c) in &self.terms {
            let k = w.deg as usize;
            match out.last_mut() {
                Some((deg, e)) if *deg == k => e.add_term(*w, c.clone()),
                _ => out.push((k, Element::monomial(self.d, *w, c.clone()))),
            }
        }
        out
    }

    pub fn truncate(&self, max_deg: usize) -> Element {
        Element::from_terms(
            self.d,
            self.terms
                .iter()
                .filter(|(w, _)| w.deg as usize <= max_deg)
                .map(|(w, c)| (*w, c.clone())),
        )
    }

    /// Dense coefficient vector of the degree-`k` component over `field`.
    pub fn to_vector<F: Field>(&self, field: &F, k: usize) -> Result<F::Vector> {
        let n = (self.d as usize).pow(k as u32);
        let mut v = field.zero_vec(n);
        for (w, c) in &self.terms {
            if w.deg as usize == k {
                field.add_at(&mut v, w.idx as usize, &field.from_rational(c)?);
            }
        }
        Ok(v)
    }
}

impl fmt::Display for Element {
    /// Canonical text: terms by degree then lex order, `c*x*y` style.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            let letters: Vec<String> = w
                .letters(self.d)
                .iter()
                .map(|l| generator_name(self.d, *l))
                .collect();
            let coeff = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("{}/{}", a.numer(), a.denom())
            };
            if letters.is_empty() {
                write!(f, "{coeff}")?;
            } else if a.is_one() {
                write!(f, "{}", letters.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", letters.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn products() {
        let x = Element::generator(2, 0);
        let y = Element::generator(2, 1);
        assert_eq!(x.mul(&y, 20).unwrap().to_string(), "x*y");
        let s = x.add(&y);
        assert_eq!(s.mul(&s, 20).unwrap().to_string(), "x*x + x*y + y*x + y*y");
        let c = x.mul(&y, 20).unwrap().sub(&y.mul(&x, 20).unwrap());
        assert_eq!(c.mul(&x, 20).unwrap().to_string(), "x*y*x - y*x*x");
        assert!(c.mul(&c, 3).is_err());
    }

    #[test]
    fn components_and_order() {
        let x = Element::generator(2, 0);
        let e = x.mul(&x, 20).unwrap().add(&x.mul(&x, 20).unwrap().mul(&x, 20).unwrap().scale(&q(3)));
        assert_eq!(e.order(), Some(2));
        assert_eq!(e.top_degree(), Some(3));
        assert_eq!(e.components().len(), 2);
        assert_eq!(e.truncate(2).to_string(), "x*x");
    }
}
