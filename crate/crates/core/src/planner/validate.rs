use num::bigint::BigInt;
use serde_json::{json, Value};

use super::profile::{dyadic_index, DegreeSupport, DyadicProfile};
use super::{PlannerOptions, ZeroLevel};
use crate::error::Result;
use crate::exact::{Exponent, Magnitude};

/// One inequality instance. `margin` is `rhs / lhs` when both sides are magnitudes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub ok: bool,
    pub margin: Option<String>,
}

impl Check {
    fn strict(label: String, lhs: &Magnitude, rhs: &Magnitude) -> Result<Self> {
        Ok(Self {
            label,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            ok: lhs.lt(rhs)?,
            margin: Some(rhs.div(lhs).to_string()),
        })
    }

    fn weak(label: String, lhs: &Magnitude, rhs: &Magnitude) -> Result<Self> {
        Ok(Self {
            label,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            ok: lhs.le(rhs)?,
            margin: Some(rhs.div(lhs).to_string()),
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "at": self.label,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ok": self.ok,
            "margin": self.margin,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub key: &'static str,
    pub statement: &'static str,
    pub skipped: bool,
    pub note: Option<String>,
    pub checks: Vec<Check>,
}

impl Condition {
    fn new(key: &'static str, statement: &'static str) -> Self {
        Self {
            key,
            statement,
            skipped: false,
            note: None,
            checks: Vec::new(),
        }
    }

    pub fn holds(&self) -> bool {
        self.skipped || self.checks.iter().all(|c| c.ok)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "key": self.key,
            "statement": self.statement,
            "status": if self.skipped { "skipped" } else if self.holds() { "pass" } else { "fail" },
            "note": self.note,
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub options: PlannerOptions,
    pub conditions: Vec<Condition>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.conditions.iter().all(Condition::holds)
    }

    pub fn failing(&self) -> Vec<&'static str> {
        self.conditions.iter().filter(|c| !c.holds()).map(|c| c.key).collect()
    }

    pub fn condition(&self, key: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.key == key)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ok": self.ok(),
            "failing": self.failing(),
            "conditions": self.conditions.iter().map(Condition::to_json).collect::<Vec<_>>(),
        })
    }
}

/// `2^{2^k}` for any integer `k`; `None` when `k < 0`, where the bound lies strictly between 1 and 2.
fn tower(k: i64) -> Option<Magnitude> {
    (k >= 0).then(|| Magnitude::pow2_pow2(k as u64))
}

/// `r < 2^{2^k}` for an integer count `r >= 1`.
fn below_tower(label: String, r: &Magnitude, k: i64) -> Result<Check> {
    match tower(k) {
        Some(t) => Check::strict(label, r, &t),
        None => Ok(Check {
            label,
            lhs: r.to_string(),
            rhs: format!("2^(2^{k})"),
            ok: r.le(&Magnitude::one())?,
            margin: None,
        }),
    }
}

fn pow2_i(e: i64) -> Magnitude {
    Magnitude::power(2, Exponent::int(e))
}

/// The hypotheses on a profile and its relation degrees, one condition per key.
pub fn validate_theorem_a(
    profile: &DyadicProfile,
    degrees: &DegreeSupport,
    options: &PlannerOptions,
) -> Result<ValidationReport> {
    let y = profile.support();
    let mut conditions = Vec::new();

    let mut low = Condition::new("no_low_levels", "r_i = 0 for i < 8");
    if options.toy {
        low.skipped = true;
        low.note = Some("toy mode".into());
    } else {
        for &n in y.iter().filter(|n| **n < 8) {
            low.checks.push(Check {
                label: format!("n={n}"),
                lhs: profile.r(n).unwrap().to_string(),
                rhs: "0".into(),
                ok: false,
                margin: None,
            });
        }
    }
    conditions.push(low);

    let mut windows = Condition::new(
        "forbidden_windows",
        "no degree d with 2^n - 2^{n-3} <= d <= 2^n + 2^{n-2}",
    );
    if degrees.is_empty() {
        windows.note = Some("no degree data supplied".into());
    }
    for (d, _) in degrees.entries() {
        let i = dyadic_index(d)?;
        for n in [i, i + 1] {
            let p = Magnitude::pow2(n);
            let d8 = d.mul(&Magnitude::from_u64(8));
            let d4 = d.mul(&Magnitude::from_u64(4));
            let inside = p.mul(&Magnitude::from_u64(7)).le(&d8)? && d4.le(&p.mul(&Magnitude::from_u64(5)))?;
            if inside {
                windows.checks.push(Check {
                    label: format!("n={n}"),
                    lhs: d.to_string(),
                    rhs: format!("[7*2^{}, 5*2^{}]", n as i64 - 3, n as i64 - 2),
                    ok: false,
                    margin: None,
                });
            }
        }
    }
    conditions.push(windows);

    let zero_in_y = y.first() == Some(&0);
    let lower_ms: Vec<u64> = if zero_in_y { y.clone() } else { std::iter::once(0).chain(y.iter().copied()).collect() };

    let mut lower = Condition::new("pairwise_lower", "2^{3n+4} r_m^33 < r_n for m < n in Y and m = 0");
    let mut upper = Condition::new("pairwise_upper", "r_n < 2^{2^{n-m-3}} for m < n in Y and m = 0");
    if !zero_in_y {
        lower.note = Some(match options.zero_level {
            ZeroLevel::One => "m = 0 read with r_0 = 1".into(),
            ZeroLevel::Zero => "m = 0 read with r_0 = 0, requiring only r_n >= 1".into(),
        });
    }
    for &n in &y {
        let rn = profile.r(n).unwrap();
        for &m in lower_ms.iter().filter(|m| **m < n) {
            let label = format!("m={m},n={n}");
            let rm = match profile.r(m) {
                Some(r) => Some(r.clone()),
                None => match options.zero_level {
                    ZeroLevel::One => Some(Magnitude::one()),
                    ZeroLevel::Zero => None,
                },
            };
            lower.checks.push(match rm {
                Some(rm) => {
                    let lhs = pow2_i(3 * n as i64 + 4).mul(&rm.pow_u64(33));
                    Check::strict(label.clone(), &lhs, rn)?
                }
                None => Check {
                    label: label.clone(),
                    lhs: "1".into(),
                    rhs: rn.to_string(),
                    ok: true,
                    margin: None,
                },
            });
            upper.checks.push(below_tower(label, rn, n as i64 - m as i64 - 3)?);
        }
    }
    conditions.push(lower);
    conditions.push(upper);

    let mut cap = Condition::new("sqrt_cap", "r_n < 2^{2^{floor(n/2)-4}}");
    for &n in &y {
        cap.checks.push(below_tower(format!("n={n}"), profile.r(n).unwrap(), (n / 2) as i64 - 4)?);
    }
    conditions.push(cap);

    Ok(ValidationReport {
        options: *options,
        conditions,
    })
}

/// `2^{3n+4} prod_{i<n, i∈Y} r_i^32 < r_n` for every `n ∈ Y`.
pub fn check_lemma33(profile: &DyadicProfile) -> Result<Condition> {
    let mut c = Condition::new("chained_product", "2^{3n+4} prod_{i<n} r_i^32 < r_n");
    let mut prod = Magnitude::one();
    let big32 = BigInt::from(32);
    for (&n, rn) in profile.levels() {
        let lhs = pow2_i(3 * n as i64 + 4).mul(&prod);
        c.checks.push(Check::strict(format!("n={n}"), &lhs, rn)?);
        prod = prod.mul(&rn.pow(&big32));
    }
    Ok(c)
}

pub(crate) fn weak_check(label: String, lhs: &Magnitude, rhs: &Magnitude) -> Result<Check> {
    Check::weak(label, lhs, rhs)
}

pub(crate) fn strict_check(label: String, lhs: &Magnitude, rhs: &Magnitude) -> Result<Check> {
    Check::strict(label, lhs, rhs)
}
