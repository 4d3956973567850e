//! Per-invocation settings shared by the command-line front end and the
//! worked-example runner.

use std::str::FromStr;

use crate::auxiliary::DEFAULT_ABAR_CAP;
use crate::classes::CheckOptions;
use crate::error::{Error, Result};
use crate::falsify::SearchOptions;
use crate::lcp::{DEFAULT_ADEQUACY_CAP, DEFAULT_ENUMERATION_CAP};
use crate::tcp::{EnumerateOptions, OmegaOptions, DEFAULT_TCP_CAP};

/// Environment variable holding the default base seed.
pub const SEED_ENV: &str = "TENSORCP_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ArithmeticMode {
    #[default]
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Unknown {
                kind: "format",
                value: s.to_string(),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest LCP size for exact support enumeration.
    pub lcp: usize,
    /// Largest matrix size for exhaustive sign-cone adequacy checks.
    pub adequacy: usize,
    /// Largest tensor dimension for TCP support enumeration.
    pub tcp: usize,
    /// Largest `N` for which the padded auxiliary matrix is stored.
    pub abar: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            lcp: DEFAULT_ENUMERATION_CAP,
            adequacy: DEFAULT_ADEQUACY_CAP,
            tcp: DEFAULT_TCP_CAP,
            abar: DEFAULT_ABAR_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub mode: ArithmeticMode,
    pub seed: u64,
    /// Independent random searches per falsification run.
    pub seeds: u64,
    /// Samples per seed; `None` keeps the engine default.
    pub budget: Option<usize>,
    pub caps: Caps,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: ArithmeticMode::Exact,
            seed: 0,
            seeds: SearchOptions::default().seeds,
            budget: None,
            caps: Caps::default(),
            format: OutputFormat::Text,
        }
    }
}

impl RunConfig {
    /// Defaults with the base seed taken from the environment when set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = RunConfig::default();
        if let Ok(raw) = std::env::var(SEED_ENV) {
            cfg.seed = raw.trim().parse().map_err(|_| Error::Unknown {
                kind: "seed",
                value: raw.clone(),
            })?;
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let caps = [
            ("lcp", self.caps.lcp),
            ("adequacy", self.caps.adequacy),
            ("tcp", self.caps.tcp),
            ("abar", self.caps.abar),
        ];
        if let Some((name, _)) = caps.iter().find(|(_, c)| *c == 0) {
            return Err(Error::Unknown {
                kind: "cap",
                value: format!("{name}=0 (caps must be positive)"),
            });
        }
        if self.seeds == 0 {
            return Err(Error::Unknown {
                kind: "seeds",
                value: "0 (need at least one)".to_string(),
            });
        }
        Ok(())
    }

    pub fn search(&self) -> SearchOptions {
        let mut s = SearchOptions {
            seeds: self.seeds,
            base_seed: self.seed,
            ..SearchOptions::default()
        };
        if let Some(b) = self.budget {
            s.samples = b;
        }
        s
    }

    pub fn check(&self) -> CheckOptions {
        CheckOptions {
            search: self.search(),
            adequacy_cap: self.caps.adequacy,
        }
    }

    pub fn enumerate(&self) -> EnumerateOptions {
        let mut e = EnumerateOptions {
            cap: self.caps.tcp,
            seed: self.seed,
            ..EnumerateOptions::default()
        };
        if let Some(b) = self.budget {
            e.budget = b;
        }
        e
    }

    pub fn omega(&self) -> OmegaOptions {
        OmegaOptions {
            lcp_cap: self.caps.lcp,
            enumerate: self.enumerate(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_validation() {
        let cfg = RunConfig::default();
        assert!(cfg.validate().is_ok());
        assert_eq!(cfg.caps.lcp, 12);
        assert_eq!(cfg.caps.abar, 5000);
        let mut bad = cfg;
        bad.caps.tcp = 0;
        assert!(bad.validate().is_err());
        assert_eq!("JSON".parse::<OutputFormat>().unwrap(), OutputFormat::Json);
        assert!("yaml".parse::<OutputFormat>().is_err());
    }

    #[test]
    fn budget_reaches_the_engines() {
        let cfg = RunConfig {
            budget: Some(7),
            seed: 9,
            ..RunConfig::default()
        };
        assert_eq!(cfg.search().samples, 7);
        assert_eq!(cfg.search().base_seed, 9);
        assert_eq!(cfg.enumerate().budget, 7);
        assert_eq!(cfg.omega().enumerate.seed, 9);
    }
}
