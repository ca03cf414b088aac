use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exact::{Exponent, Magnitude};

/// Relation degrees with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeSupport {
    entries: Vec<(Magnitude, Magnitude)>,
}

impl DegreeSupport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_degrees(degrees: &[u64]) -> Self {
        let mut s = Self::new();
        for d in degrees {
            s.push(Magnitude::from_u64(*d), Magnitude::one());
        }
        s
    }

    pub fn push(&mut self, degree: Magnitude, count: Magnitude) {
        self.entries.push((degree, count));
    }

    pub fn entries(&self) -> &[(Magnitude, Magnitude)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|(d, c)| json!({"degree": d.to_json(), "count": c.to_json()}))
                .collect(),
        )
    }

    /// A list of integers, or of `{"degree": magnitude, "count": magnitude}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Invalid("degrees must be an array".into()))?;
        let mut s = Self::new();
        for e in arr {
            match e.get("degree") {
                Some(d) => {
                    let c = e.get("count").map(Magnitude::from_json).transpose()?;
                    s.push(Magnitude::from_json(d)?, c.unwrap_or_else(Magnitude::one));
                }
                None => s.push(Magnitude::from_json(e)?, Magnitude::one()),
            }
        }
        Ok(s)
    }
}

/// `r_n` for the levels with at least one relation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DyadicProfile {
    r: BTreeMap<u64, Magnitude>,
}

impl DyadicProfile {
    pub fn new(r: BTreeMap<u64, Magnitude>) -> Self {
        Self { r }
    }

    pub fn from_counts(counts: impl IntoIterator<Item = (u64, u64)>) -> Self {
        Self {
            r: counts
                .into_iter()
                .filter(|(_, c)| *c > 0)
                .map(|(n, c)| (n, Magnitude::from_u64(c)))
                .collect(),
        }
    }

    pub fn r(&self, n: u64) -> Option<&Magnitude> {
        self.r.get(&n)
    }

    pub fn levels(&self) -> &BTreeMap<u64, Magnitude> {
        &self.r
    }

    /// `Y`.
    pub fn support(&self) -> Vec<u64> {
        self.r.keys().copied().collect()
    }

    pub fn to_json(&self) -> Value {
        let r: Map<String, Value> = self.r.iter().map(|(n, m)| (n.to_string(), m.to_json())).collect();
        json!({"r": r})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .get("r")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Invalid("profile needs an object `r`".into()))?;
        let mut r = BTreeMap::new();
        for (k, m) in obj {
            let n: u64 = k
                .parse()
                .map_err(|_| Error::Invalid(format!("bad level `{k}`")))?;
            r.insert(n, Magnitude::from_json(m)?);
        }
        Ok(Self { r })
    }
}

/// `n` with `2^n < d <= 2^{n+1}`.
pub fn dyadic_index(d: &Magnitude) -> Result<u64> {
    if d.le(&Magnitude::from_u64(1))? {
        return Err(Error::Invalid(format!("degree {d} is below 2")));
    }
    let guess = (d.approx_log2().ceil() as i64 - 1).max(0) as u64;
    for n in guess.saturating_sub(2)..=guess + 2 {
        if Magnitude::pow2(n).lt(d)? && d.le(&Magnitude::pow2(n + 1))? {
            return Ok(n);
        }
    }
    Err(Error::Undecided(format!("dyadic index of {d}")))
}

/// Counts per dyadic level; counts landing on one level must be plain integers.
pub fn dyadic_profile(degrees: &DegreeSupport) -> Result<DyadicProfile> {
    let mut r: BTreeMap<u64, Magnitude> = BTreeMap::new();
    for (d, c) in degrees.entries() {
        let n = dyadic_index(d)?;
        let merged = match r.remove(&n) {
            None => c.clone(),
            Some(prev) => {
                let cap = 1 << 20;
                match (prev.to_biguint(cap), c.to_biguint(cap)) {
                    (Some(a), Some(b)) => Magnitude::from_biguint(a + b),
                    _ => {
                        return Err(Error::Invalid(format!(
                            "cannot add the symbolic counts landing on level {n}"
                        )))
                    }
                }
            }
        };
        r.insert(n, merged);
    }
    Ok(DyadicProfile { r })
}

/// A seeded profile aimed inside the hypotheses, with one degree `3 * 2^{n-1}` per level.
///
/// Each `r_n = c * 2^a` with `c` odd and small. The exponent `a` is drawn
/// between the chained lower bound and the caps, and the next level is
/// pushed far enough out that its window is non-empty.
pub fn random_valid_profile(seed: u64) -> (DyadicProfile, DegreeSupport) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let levels = rng.gen_range(1..=4);
    let mut r = BTreeMap::new();
    let mut degrees = DegreeSupport::new();
    let mut prev_n = 0u64;
    let mut prev_bits = 0u64;
    let mut n = rng.gen_range(22..=30u64);
    for _ in 0..levels {
        let cap = |n: u64, prev_n: u64| -> u64 {
            let a = n.saturating_sub(prev_n + 3).min(62);
            let b = (n / 2).saturating_sub(4).min(62);
            (1u64 << a).min(1u64 << b)
        };
        let lower = 3 * n + 4 + 33 * prev_bits + 1;
        while cap(n, prev_n) <= lower + 8 {
            n += 1;
        }
        let upper = cap(n, prev_n) - 4;
        let a = rng.gen_range(lower..upper);
        let c = [1u64, 3, 5, 7][rng.gen_range(0..4)];
        let m = Magnitude::from_u64(c).mul(&Magnitude::power(2, Exponent::int(a)));
        degrees.push(
            Magnitude::from_u64(3).mul(&Magnitude::pow2(n - 1)),
            m.clone(),
        );
        r.insert(n, m);
        prev_n = n;
        prev_bits = a + 3;
        n += rng.gen_range(15..=25);
    }
    (DyadicProfile { r }, degrees)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile_of(ds: &[u64]) -> BTreeMap<u64, String> {
        dyadic_profile(&DegreeSupport::from_degrees(ds))
            .unwrap()
            .levels()
            .iter()
            .map(|(n, m)| (*n, m.to_string()))
            .collect()
    }

    #[test]
    fn windows() {
        assert_eq!(profile_of(&[3]), BTreeMap::from([(1, "1".into())]));
        assert_eq!(profile_of(&[256]), BTreeMap::from([(7, "1".into())]));
        assert_eq!(profile_of(&[257, 300, 512]), BTreeMap::from([(8, "3".into())]));
        assert!(dyadic_profile(&DegreeSupport::from_degrees(&[1])).is_err());
    }

    #[test]
    fn huge_degrees() {
        let d = Magnitude::from_u64(3).mul(&Magnitude::pow2(206060200u64));
        assert_eq!(dyadic_index(&d).unwrap(), 206060201);
        assert_eq!(dyadic_index(&Magnitude::pow2(5000u64)).unwrap(), 4999);
    }

    #[test]
    fn json_round_trip() {
        let (p, d) = random_valid_profile(4);
        assert_eq!(DyadicProfile::from_json(&p.to_json()).unwrap(), p);
        assert_eq!(DegreeSupport::from_json(&d.to_json()).unwrap(), d);
        assert_eq!(dyadic_profile(&d).unwrap(), p);
    }
}
