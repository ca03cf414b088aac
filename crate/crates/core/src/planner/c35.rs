//! The doubly-exponential profile `r_m = 40^{8m^3}` on levels `m_1 = 101`,
//! `m_{i+1} = 200 m_i^3 + 1`, and the growth verdicts drawn from it.

use std::collections::BTreeMap;

use num::bigint::{BigInt, BigUint};
use serde_json::{json, Value};

use super::bounds::{eval_bounds, BoundsReport};
use super::profile::{DegreeSupport, DyadicProfile};
use super::schedule::{compute_e_schedule, Schedule};
use super::validate::{strict_check, validate_theorem_a, Check, ValidationReport};
use super::PlannerOptions;
use crate::error::{Error, Result};
use crate::exact::{Exponent, Magnitude};

/// Growth samples `n = 2^L`; the first three are the ones a verdict rests on.
pub const GROWTH_SAMPLES: [u64; 5] = [10, 20, 40, 51, 64];
const VERDICT_SAMPLES: usize = 3;

/// `m_1, ..., m_count`; levels past `u64` are refused.
pub fn c35_levels(count: usize) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(count);
    let mut m: u64 = 101;
    for i in 0..count {
        if i > 0 {
            m = 200u64
                .checked_mul(m)
                .and_then(|x| x.checked_mul(m))
                .and_then(|x| x.checked_mul(m))
                .and_then(|x| x.checked_add(1))
                .ok_or_else(|| Error::Invalid(format!("level {} does not fit in 64 bits", i + 1)))?;
        }
        out.push(m);
    }
    Ok(out)
}

fn cube(m: u64) -> BigInt {
    BigInt::from(m).pow(3)
}

/// `40^{8m^3}`.
fn count_at(m: u64) -> Magnitude {
    Magnitude::power(40, Exponent::int(cube(m) * 8))
}

#[derive(Clone, Debug)]
pub struct GrowthSample {
    pub log_n: u64,
    pub bound: &'static str,
    pub check: Check,
    pub informational: bool,
}

#[derive(Clone, Debug)]
pub struct C35Report {
    pub levels: Vec<u64>,
    pub profile: DyadicProfile,
    pub degrees: DegreeSupport,
    pub side_conditions: Vec<Check>,
    pub validation: ValidationReport,
    pub schedule: Schedule,
    pub growth: Vec<GrowthSample>,
    /// `lower(2^{m+1}) > 40^{8m^2}` at the first level.
    pub lower_at_first: Option<Check>,
    pub monotone: Vec<Check>,
    /// `c^n > 2^{400 (log n)^3}` at `c = 1 + 2^{-10}`, `n = 2^64`.
    pub refutation: Check,
}

impl C35Report {
    pub fn ok(&self) -> bool {
        self.side_conditions.iter().all(|c| c.ok)
            && self.validation.ok()
            && self.schedule.is_valid()
            && self.growth.iter().filter(|g| !g.informational).all(|g| g.check.ok)
            && self.lower_at_first.as_ref().is_none_or(|c| c.ok)
            && self.monotone.iter().all(|c| c.ok)
            && self.refutation.ok
    }

    pub fn to_json(&self) -> Value {
        let f: BTreeMap<String, String> = self
            .levels
            .iter()
            .map(|m| (m.to_string(), format!("2^{m}+2^{}", m - 1)))
            .collect();
        json!({
            "levels": self.levels,
            "relation_degree": f,
            "profile": self.profile.to_json(),
            "side_conditions": self.side_conditions.iter().map(Check::to_json).collect::<Vec<_>>(),
            "validation": self.validation.to_json(),
            "schedule": self.schedule.to_json(),
            "growth": self.growth.iter().map(|g| json!({
                "log_n": g.log_n,
                "bound": g.bound,
                "informational": g.informational,
                "check": g.check.to_json(),
            })).collect::<Vec<_>>(),
            "lower_at_first": self.lower_at_first.as_ref().map(Check::to_json),
            "monotone": self.monotone.iter().map(Check::to_json).collect::<Vec<_>>(),
            "refutation": self.refutation.to_json(),
            "ok": self.ok(),
        })
    }
}

fn growth_sample(schedule: &Schedule, log_n: u64, informational: bool) -> Result<GrowthSample> {
    let b: BoundsReport = eval_bounds(schedule, &Magnitude::pow2(log_n))?;
    let l = BigInt::from(log_n);
    let cap = Magnitude::power(2, Exponent::int(BigInt::from(3) + &l * 4 + l.pow(3) * 200));
    let (bound, upper) = match &b.upper_top_level {
        Some(u) => ("top_level", u.clone()),
        None => ("product", b.upper_product.clone()),
    };
    let mut check = strict_check(format!("n=2^{log_n}"), &upper, &cap)?;
    check.ok = upper.le(&cap)?;
    Ok(GrowthSample {
        log_n,
        bound,
        check,
        informational,
    })
}

pub fn gen_c35_schedule(count: usize) -> Result<C35Report> {
    let levels = c35_levels(count)?;
    let mut side_conditions = Vec::new();
    let mut degrees = DegreeSupport::new();
    let mut r = BTreeMap::new();
    for (i, &m) in levels.iter().enumerate() {
        let m_mag = Magnitude::from_u64(m);
        side_conditions.push(strict_check(format!("100 < m={m}"), &Magnitude::from_u64(100), &m_mag)?);
        let m3 = Magnitude::from_biguint(BigUint::from(m).pow(3));
        side_conditions.push(strict_check(format!("m^3 < 2^(m/2-4), m={m}"), &m3, &Magnitude::pow2((m / 2) as i64 - 4))?);
        if let Some(&next) = levels.get(i + 1) {
            side_conditions.push(strict_check(
                format!("200m^3 < m', m={m}"),
                &m3.mul(&Magnitude::from_u64(200)),
                &Magnitude::from_u64(next),
            )?);
        }
        degrees.push(Magnitude::from_u64(3).mul(&Magnitude::pow2(m - 1)), count_at(m));
        r.insert(m, count_at(m));
    }
    let profile = DyadicProfile::new(r);
    let options = PlannerOptions::default();
    let validation = validate_theorem_a(&profile, &degrees, &options)?;
    let schedule = compute_e_schedule(&profile, &options)?;
    let mut growth = Vec::new();
    for (i, &log_n) in GROWTH_SAMPLES.iter().enumerate() {
        growth.push(growth_sample(&schedule, log_n, i >= VERDICT_SAMPLES)?);
    }
    let lower_at_first = match levels.first() {
        Some(&m) => {
            let b = eval_bounds(&schedule, &Magnitude::pow2(m + 1))?;
            let target = Magnitude::power(40, Exponent::int(BigInt::from(m).pow(2) * 8));
            let best = b
                .lower
                .iter()
                .find(|l| l.j == m)
                .ok_or_else(|| Error::Invalid("no lower bound at the first level".into()))?;
            Some(strict_check(format!("lower(2^{}) vs 40^(8m^2)", m + 1), &target, &best.quartic)?)
        }
        None => None,
    };
    let monotone = levels
        .windows(2)
        .map(|w| strict_check(format!("r_{} < r_{}", w[0], w[1]), &count_at(w[0]), &count_at(w[1])))
        .collect::<Result<Vec<_>>>()?;
    let n_exp = Exponent::pow2(64);
    let c_pow = Magnitude::power(1025, n_exp.clone()).mul(&Magnitude::power(2, n_exp.mul_int(&BigInt::from(-10))));
    let rhs = Magnitude::power(2, Exponent::int(400 * 64u64.pow(3)));
    let refutation = strict_check("c=1+2^-10, n=2^64".into(), &rhs, &c_pow)?;
    Ok(C35Report {
        levels,
        profile,
        degrees,
        side_conditions,
        validation,
        schedule,
        growth,
        lower_at_first,
        monotone,
        refutation,
    })
}
