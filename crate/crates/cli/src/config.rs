use std::path::PathBuf;

use ccurve_core::forge::SampleConfig;
use ccurve_core::jacobian::SieveParams;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SieveConfig {
    pub prime_count: usize,
    pub prime_min: u64,
    pub bound: u32,
    pub support: usize,
    pub op_budget: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        let p = SieveParams::default();
        SieveConfig {
            prime_count: p.prime_count,
            prime_min: p.prime_min,
            bound: p.bound,
            support: p.support,
            op_budget: p.op_budget,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub seed: u64,
    pub height: u32,
    pub max_retries: u32,
    pub sieve: SieveConfig,
    pub output: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        let s = SampleConfig::default();
        Config { seed: 0, height: s.height, max_retries: s.max_retries, sieve: SieveConfig::default(), output: None }
    }
}

impl Config {
    pub fn validate(&self) -> Result<(), CliError> {
        let s = &self.sieve;
        let bad = [
            ("height", self.height == 0),
            ("max_retries", self.max_retries == 0),
            ("sieve.prime_count", s.prime_count == 0),
            ("sieve.prime_min", s.prime_min == 0),
            ("sieve.bound", s.bound == 0),
            ("sieve.support", s.support == 0),
            ("sieve.op_budget", s.op_budget == 0),
        ];
        match bad.iter().find(|(_, b)| *b) {
            Some((name, _)) => Err(CliError::Usage(format!("config: {name} must be positive"))),
            None => Ok(()),
        }
    }

    pub fn sample(&self) -> SampleConfig {
        SampleConfig { height: self.height, max_retries: self.max_retries }
    }

    pub fn sieve_params(&self) -> SieveParams {
        let s = &self.sieve;
        SieveParams {
            prime_count: s.prime_count,
            prime_min: s.prime_min,
            bound: s.bound,
            support: s.support,
            op_budget: s.op_budget,
        }
    }
}
