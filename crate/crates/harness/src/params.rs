use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use adjlab_core::exec::Exec;
use adjlab_core::ideal::Budget;
use adjlab_core::poly::is_prime;
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;

/// `q` for the rationals, `p:PRIME` for a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FieldChoice {
    Rationals,
    Prime(u64),
}

pub const DEFAULT_PRIME: u64 = 32003;

impl FieldChoice {
    pub fn mod_p() -> Self {
        FieldChoice::Prime(DEFAULT_PRIME)
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Rationals => write!(f, "q"),
            FieldChoice::Prime(p) => write!(f, "p:{p}"),
        }
    }
}

impl FromStr for FieldChoice {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldChoice::Rationals);
        }
        let p = s
            .strip_prefix("p:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| HarnessError::Invalid(format!("field `{s}`: expected q or p:PRIME")))?;
        if !is_prime(p) || p >= 1 << 31 {
            return Err(HarnessError::Invalid(format!("{p} is not a prime below 2^31")));
        }
        Ok(FieldChoice::Prime(p))
    }
}

impl From<FieldChoice> for String {
    fn from(f: FieldChoice) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for FieldChoice {
    type Error = HarnessError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[derive(Default)]
pub struct Params {
    pub seed: u64,
    /// `None` keeps the scenario's own default field.
    pub field: Option<FieldChoice>,
    pub deg_cap: Option<u32>,
    pub time_budget: Option<Duration>,
    /// Matrix size for the pfaffian scenario.
    pub n: Option<usize>,
    pub stretch: bool,
    pub exec: Exec,
}


impl Params {
    pub fn deadline(&self, start: Instant) -> Option<Instant> {
        self.time_budget.map(|d| start + d)
    }

    pub fn budget(&self, deadline: Option<Instant>) -> Budget {
        let mut b = Budget::default();
        if let Some(cap) = self.deg_cap {
            b.max_degree = cap;
        }
        b.deadline = deadline;
        b
    }
}
