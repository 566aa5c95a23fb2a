//! Run configuration shared by every subcommand.

use serde::Serialize;

/// Default hard cap on enumerated subspaces.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// Default seed for randomized suites.
pub const DEFAULT_SEED: u64 = 1729;

/// Environment variable overriding the enumeration cap (a flag still wins).
pub const ENUM_CAP_ENV: &str = "FANO_STRATA_ENUM_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

/// Seed, cap, and output format, echoed into every report so results are
/// reproducible from the report alone.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub enumeration_cap: u64,
    #[serde(skip)]
    pub format: OutputFormat,
}

impl RunConfig {
    pub fn resolve(seed: Option<u64>, cap_flag: Option<u64>, format: OutputFormat) -> Self {
        let env_cap = std::env::var(ENUM_CAP_ENV)
            .ok()
            .and_then(|v| v.parse::<u64>().ok());
        RunConfig {
            seed: seed.unwrap_or(DEFAULT_SEED),
            enumeration_cap: cap_flag.or(env_cap).unwrap_or(DEFAULT_ENUMERATION_CAP),
            format,
        }
    }
}
