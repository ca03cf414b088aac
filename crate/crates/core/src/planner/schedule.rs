use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::One;
use serde_json::{json, Value};

use super::profile::DyadicProfile;
use super::{BlockReading, PlannerOptions};
use crate::error::{Error, Result};
use crate::exact::{Exponent, Magnitude};

/// The unique `e` with `2^{2^{e-3}} <= r < 2^{2^{e-2}}`.
pub fn bracket_e(r: &Magnitude) -> Result<u64> {
    if r.lt(&Magnitude::from_u64(2))? {
        return Err(Error::Hypothesis(format!("no exponent brackets r = {r}")));
    }
    let mut t = r.approx_log2().log2().floor().max(0.0) as u64;
    loop {
        if r.lt(&Magnitude::pow2_pow2(t))? {
            t -= 1;
        } else if !r.lt(&Magnitude::pow2_pow2(t + 1))? {
            t += 1;
        } else {
            return Ok(t + 3);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduleCheck {
    pub key: &'static str,
    pub n: u64,
    pub ok: bool,
    pub detail: String,
}

impl ScheduleCheck {
    pub fn to_json(&self) -> Value {
        json!({"key": self.key, "n": self.n, "ok": self.ok, "detail": self.detail})
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub profile: DyadicProfile,
    pub options: PlannerOptions,
    pub e: BTreeMap<u64, u64>,
    /// `t_n = 2^{e(n)-1} - 3n - 4 - sum_{k<n} 2^{e(k)+2}`.
    pub t: BTreeMap<u64, BigInt>,
    pub checks: Vec<ScheduleCheck>,
}

impl Schedule {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failing(&self) -> Vec<&ScheduleCheck> {
        self.checks.iter().filter(|c| !c.ok).collect()
    }

    /// The block `S_n` as the set of its members.
    pub fn block(&self, n: u64) -> Option<Vec<i64>> {
        let e = *self.e.get(&n)? as i64;
        let (lo, hi) = (n as i64 - 1 - e, n as i64 - 1);
        Some(match self.options.blocks {
            BlockReading::Interval => (lo..=hi).collect(),
            BlockReading::Endpoints => vec![lo, hi],
        })
    }

    /// `e` keyed by level, in the shape ladder targets take.
    pub fn e_map_u32(&self) -> BTreeMap<u32, u32> {
        self.e.iter().map(|(n, e)| (*n as u32, *e as u32)).collect()
    }

    pub fn to_json(&self) -> Value {
        let levels: Vec<Value> = self
            .e
            .iter()
            .map(|(n, e)| {
                json!({
                    "n": n,
                    "r": self.profile.r(*n).unwrap().to_json(),
                    "e": e,
                    "S": [*n as i64 - 1 - *e as i64, *n as i64 - 1],
                    "t": self.t[n].to_string(),
                })
            })
            .collect();
        json!({
            "options": self.options.to_json(),
            "profile": self.profile.to_json(),
            "levels": levels,
            "checks": self.checks.iter().map(ScheduleCheck::to_json).collect::<Vec<_>>(),
            "valid": self.is_valid(),
        })
    }

    /// Rebuilds from the embedded profile and options and checks the stored `e` values.
    pub fn from_json(v: &Value) -> Result<Self> {
        let profile = DyadicProfile::from_json(v.get("profile").unwrap_or(v))?;
        let options = match v.get("options") {
            Some(o) => PlannerOptions::from_json(o)?,
            None => PlannerOptions::default(),
        };
        let s = compute_e_schedule(&profile, &options)?;
        if let Some(levels) = v.get("levels").and_then(Value::as_array) {
            for l in levels {
                let (n, e) = (l.get("n").and_then(Value::as_u64), l.get("e").and_then(Value::as_u64));
                if let (Some(n), Some(e)) = (n, e) {
                    if s.e.get(&n) != Some(&e) {
                        return Err(Error::Invalid(format!("stored e({n}) = {e} does not match the profile")));
                    }
                }
            }
        }
        Ok(s)
    }
}

/// `e(n)` for every level of the profile, with each invariant recorded as a check.
pub fn compute_e_schedule(profile: &DyadicProfile, options: &PlannerOptions) -> Result<Schedule> {
    let mut e = BTreeMap::new();
    let mut t = BTreeMap::new();
    let mut checks = Vec::new();
    let mut spent = Exponent::zero();
    for (&n, r) in profile.levels() {
        let en = bracket_e(r)?;
        let lo = Magnitude::pow2_pow2(en - 3);
        let hi = Magnitude::pow2_pow2(en - 2);
        checks.push(ScheduleCheck {
            key: "bracketing",
            n,
            ok: lo.le(r)? && r.lt(&hi)?,
            detail: format!("2^(2^{}) <= r < 2^(2^{})", en - 3, en - 2),
        });
        checks.push(ScheduleCheck {
            key: "fourth_power",
            n,
            ok: r.pow_u64(4).le(&Magnitude::pow2_pow2(en))?,
            detail: format!("r^4 <= 2^(2^{en})"),
        });
        checks.push(ScheduleCheck {
            key: "e_range",
            n,
            ok: en >= 1 && en < n,
            detail: format!("1 <= {en} <= {}", n as i64 - 1),
        });
        checks.push(ScheduleCheck {
            key: "regime",
            n,
            ok: options.toy || 2 * en + 2 < n,
            detail: if options.toy {
                "not required in toy mode".into()
            } else {
                format!("{en} < {n}/2 - 1")
            },
        });
        let cost = Exponent::int(3 * n + 4).add(&spent);
        let lhs = r.mul(&Magnitude::power(2, cost.clone()));
        checks.push(ScheduleCheck {
            key: "master",
            n,
            ok: lhs.le(&Magnitude::pow2_pow2(en - 1))?,
            detail: format!("r * 2^({cost}) <= 2^(2^{})", en - 1),
        });
        let tn = (BigInt::one() << (en - 1)) - cost.to_bigint().expect("integer exponent");
        t.insert(n, tn);
        spent = spent.add(&Exponent::pow2(en + 2));
        e.insert(n, en);
    }
    let mut s = Schedule {
        profile: profile.clone(),
        options: *options,
        e,
        t,
        checks,
    };
    let levels: Vec<u64> = s.e.keys().copied().collect();
    for (i, &a) in levels.iter().enumerate() {
        for &b in &levels[i + 1..] {
            let (sa, sb) = (s.block(a).unwrap(), s.block(b).unwrap());
            let clash = sa.iter().find(|x| sb.contains(x));
            s.checks.push(ScheduleCheck {
                key: "disjoint",
                n: b,
                ok: clash.is_none(),
                detail: match clash {
                    Some(x) => format!("S_{a} and S_{b} share {x}"),
                    None => format!("S_{a} and S_{b}"),
                },
            });
        }
    }
    Ok(s)
}
