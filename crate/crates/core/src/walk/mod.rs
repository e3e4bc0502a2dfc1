//! Walker trajectories and the three walk variants.
//!
//! A trajectory is the sequence of steps `(T_i, V_i, I_i)` with jumps
//! `J_i = V_i T_i I_i`. With `N(t)` the number of renewals up to and including
//! `t`, the walks are
//!
//! * wait-first: `U(t) = J_1 + ... + J_N(t)`,
//! * jump-first: `O(t) = J_1 + ... + J_N(t)+1`,
//! * continuous: `W(t) = U(t) + (t - T_1 - ... - T_N(t)) V_N(t)+1 I_N(t)+1`.

mod model;
mod trajectory;

pub use model::{WalkModel, Walker, DEFAULT_STEP_CAP};
pub use trajectory::{StepTriple, Trajectory};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    WaitFirst,
    JumpFirst,
    Continuous,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::WaitFirst, Variant::JumpFirst, Variant::Continuous];

    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::WaitFirst => "wait-first",
            Variant::JumpFirst => "jump-first",
            Variant::Continuous => "continuous",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variant::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| {
                format!("unknown variant {s:?} (expected wait-first, jump-first or continuous)")
            })
    }
}
