//! Dyadic relation profiles, their hypotheses, the `e(n)` schedule and the
//! growth bounds they imply, all over [`Magnitude`](crate::exact::Magnitude).
//!
//! A profile records `r_n`, the number of relations with degree in
//! `(2^n, 2^{n+1}]`; `Y` is the set of levels with `r_n > 0`.

mod bounds;
mod c35;
mod profile;
mod schedule;
mod validate;

pub use bounds::{eval_bounds, BoundsReport, LowerBound};
pub use c35::{c35_levels, gen_c35_schedule, C35Report, GrowthSample, GROWTH_SAMPLES};
pub use profile::{dyadic_index, dyadic_profile, random_valid_profile, DegreeSupport, DyadicProfile};
pub use schedule::{bracket_e, compute_e_schedule, Schedule, ScheduleCheck};
pub use validate::{check_lemma33, validate_theorem_a, Check, Condition, ValidationReport};

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// How the `m = 0` instance of the pairwise conditions reads `r_0` when `0 ∉ Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroLevel {
    /// `r_0 = 1`: the lower condition becomes `2^{3n+4} < r_n`.
    One,
    /// `r_0 = 0`: the lower condition degenerates to `r_n >= 1`.
    Zero,
}

/// How the blocks `S_n` are read: the full range `n-1-e(n) ..= n-1`, or its two endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockReading {
    Interval,
    Endpoints,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlannerOptions {
    pub zero_level: ZeroLevel,
    pub blocks: BlockReading,
    /// Drops `r_i = 0 for i < 8` and the `e(n) < n/2 - 1` regime so small indices can be exercised.
    pub toy: bool,
}

impl Default for PlannerOptions {
    fn default() -> Self {
        Self {
            zero_level: ZeroLevel::One,
            blocks: BlockReading::Interval,
            toy: false,
        }
    }
}

impl PlannerOptions {
    pub fn to_json(&self) -> Value {
        json!({
            "r0": match self.zero_level { ZeroLevel::One => "1", ZeroLevel::Zero => "0" },
            "blocks": match self.blocks { BlockReading::Interval => "interval", BlockReading::Endpoints => "endpoints" },
            "toy": self.toy,
            "half_index": "floor",
            "log": "base 2",
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let mut o = Self::default();
        match v.get("r0").and_then(Value::as_str) {
            None | Some("1") => {}
            Some("0") => o.zero_level = ZeroLevel::Zero,
            Some(x) => return Err(Error::Invalid(format!("unknown r0 reading `{x}`"))),
        }
        match v.get("blocks").and_then(Value::as_str) {
            None | Some("interval") => {}
            Some("endpoints") => o.blocks = BlockReading::Endpoints,
            Some(x) => return Err(Error::Invalid(format!("unknown block reading `{x}`"))),
        }
        o.toy = v.get("toy").and_then(Value::as_bool).unwrap_or(false);
        Ok(o)
    }
}
