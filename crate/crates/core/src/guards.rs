//! Size limits for the exhaustive routines.
//!
//! Defaults can be overridden through the environment variable
//! `HELLY_GUARDS`, a comma-separated list such as
//! `nerve=16,faces=4096,radon=10,piercing=24`.

use std::env;

use thiserror::Error;

pub const ENV_VAR: &str = "HELLY_GUARDS";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{what}: size {size} exceeds guard {limit}")]
pub struct GuardError {
    pub what: &'static str,
    pub size: usize,
    pub limit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    /// Largest family for nerve enumeration.
    pub nerve: usize,
    /// Largest face count for the backtracking collapsibility oracle.
    pub faces: usize,
    /// Largest ground set for the Radon-number search.
    pub radon: usize,
    /// Largest family for exact piercing, matching and the LP.
    pub piercing: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            nerve: 20,
            faces: 1 << 14,
            radon: 12,
            piercing: 30,
        }
    }
}

impl Guards {
    /// Defaults overridden by `HELLY_GUARDS` when set; malformed entries are ignored.
    pub fn from_env() -> Self {
        match env::var(ENV_VAR) {
            Ok(spec) => Guards::default().with_overrides(&spec),
            Err(_) => Guards::default(),
        }
    }

    pub fn with_overrides(mut self, spec: &str) -> Self {
        for item in spec.split(',') {
            let Some((key, value)) = item.split_once('=') else {
                continue;
            };
            let Ok(value) = value.trim().parse::<usize>() else {
                continue;
            };
            match key.trim() {
                "nerve" => self.nerve = value,
                "faces" => self.faces = value,
                "radon" => self.radon = value,
                "piercing" => self.piercing = value,
                _ => {}
            }
        }
        self
    }

    pub fn check(what: &'static str, size: usize, limit: usize) -> Result<(), GuardError> {
        if size > limit {
            Err(GuardError { what, size, limit })
        } else {
            Ok(())
        }
    }
}
