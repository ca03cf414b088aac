use serde_json::{json, Value};

use super::schedule::Schedule;
use super::validate::{weak_check, Check};
use crate::error::{Error, Result};
use crate::exact::{Exponent, Magnitude};

/// Lower bounds contributed by one level `j` with `2^j <= n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBound {
    pub j: u64,
    /// `r_j^4 / 2`.
    pub quartic: Magnitude,
    /// `2^{2^{e(j)}} / 2`.
    pub tower: Magnitude,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub n: Magnitude,
    /// Largest level `k` with `2^k <= n^2`.
    pub k: Option<u64>,
    /// `8 n^4 r_k^33`.
    pub upper_top_level: Option<Magnitude>,
    /// `8 n^3 prod_{i <= 2 log n} 2^{2^{e(i)+2}}`.
    pub upper_product: Magnitude,
    pub lower: Vec<LowerBound>,
    pub checks: Vec<Check>,
    pub schedule_valid: bool,
}

impl BoundsReport {
    pub fn consistent(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    /// The smallest applicable upper bound.
    pub fn best_upper(&self) -> Result<&Magnitude> {
        Ok(match &self.upper_top_level {
            Some(u) if u.lt(&self.upper_product)? => u,
            _ => &self.upper_product,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n.to_json(),
            "k": match self.k { Some(k) => json!(k), None => json!("inapplicable") },
            "upper": {
                "top_level": self.upper_top_level.as_ref().map(Magnitude::to_string),
                "product": self.upper_product.to_string(),
            },
            "lower": self.lower.iter().map(|l| json!({
                "j": l.j,
                "quartic": l.quartic.to_string(),
                "tower": l.tower.to_string(),
            })).collect::<Vec<_>>(),
            "consistent": self.consistent(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "schedule_valid": self.schedule_valid,
        })
    }
}

/// Upper and lower bounds on the dimension of the quotient up to degree `n`.
pub fn eval_bounds(schedule: &Schedule, n: &Magnitude) -> Result<BoundsReport> {
    if n.lt(&Magnitude::one())? {
        return Err(Error::Invalid(format!("degree {n} is below 1")));
    }
    let n2 = n.pow_u64(2);
    let mut k = None;
    let mut spent = Exponent::zero();
    let mut lower = Vec::new();
    for (&i, e) in &schedule.e {
        let level = Magnitude::pow2(i);
        if !level.le(&n2)? {
            break;
        }
        k = Some(i);
        spent = spent.add(&Exponent::pow2(e + 2));
        if level.le(n)? {
            let r = schedule.profile.r(i).unwrap();
            lower.push(LowerBound {
                j: i,
                quartic: r.pow_u64(4).half(),
                tower: Magnitude::pow2_pow2(*e).half(),
            });
        }
    }
    let eight = Magnitude::from_u64(8);
    let upper_top_level = k.map(|k| eight.mul(&n.pow_u64(4)).mul(&schedule.profile.r(k).unwrap().pow_u64(33)));
    let upper_product = eight.mul(&n.pow_u64(3)).mul(&Magnitude::power(2, spent));
    let mut checks = Vec::new();
    for l in &lower {
        for (name, lo) in [("quartic", &l.quartic), ("tower", &l.tower)] {
            if let Some(u) = &upper_top_level {
                checks.push(weak_check(format!("{name}(j={}) <= top_level", l.j), lo, u)?);
            }
            checks.push(weak_check(format!("{name}(j={}) <= product", l.j), lo, &upper_product)?);
        }
    }
    Ok(BoundsReport {
        n: n.clone(),
        k,
        upper_top_level,
        upper_product,
        lower,
        checks,
        schedule_valid: schedule.is_valid(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planner::{compute_e_schedule, DyadicProfile, PlannerOptions};
    use std::collections::BTreeMap;

    fn schedule(levels: &[(u64, u64)]) -> Schedule {
        let p = DyadicProfile::new(levels.iter().map(|(n, a)| (*n, Magnitude::pow2(*a))).collect::<BTreeMap<_, _>>());
        compute_e_schedule(&p, &PlannerOptions::default()).unwrap()
    }

    #[test]
    fn single_level_at_1024() {
        let s = schedule(&[(8, 16)]);
        assert_eq!(s.e[&8], 7);
        let b = eval_bounds(&s, &Magnitude::from_u64(1024)).unwrap();
        assert_eq!(b.k, Some(8));
        assert!(b.upper_top_level.as_ref().unwrap().cmp_exact(&Magnitude::pow2(571)).unwrap().is_eq());
        assert!(b.upper_product.cmp_exact(&Magnitude::pow2(545)).unwrap().is_eq());
        assert!(b.lower[0].quartic.cmp_exact(&Magnitude::pow2(63)).unwrap().is_eq());
        assert!(b.lower[0].tower.cmp_exact(&Magnitude::pow2(127)).unwrap().is_eq());
        assert!(b.consistent());
    }

    #[test]
    fn empty_and_inapplicable() {
        let s = schedule(&[]);
        let b = eval_bounds(&s, &Magnitude::from_u64(100)).unwrap();
        assert!(b.upper_product.cmp_exact(&Magnitude::from_u64(8_000_000)).unwrap().is_eq());
        assert!(b.lower.is_empty() && b.k.is_none());
        let s = schedule(&[(8, 16)]);
        let b = eval_bounds(&s, &Magnitude::from_u64(4)).unwrap();
        assert_eq!(b.k, None);
        assert!(b.upper_top_level.is_none());
        // 2^8 <= n^2 but 2^8 > n: k applies, no lower bound yet.
        let b = eval_bounds(&s, &Magnitude::from_u64(16)).unwrap();
        assert_eq!((b.k, b.lower.len()), (Some(8), 0));
    }
}
