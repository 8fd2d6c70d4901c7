//! Parameter ranges and limits shared by the verification suites and the
//! table builders.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::johnson::DEFAULT_BRUTEFORCE_CAP;
use crate::lattice::DEFAULT_LATTICE_CAP;

/// Which anchors `x0` the anchor-dependent Johnson checks use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnchorPolicy {
    /// `{0, ..., k-1}` only.
    Default,
    /// One seeded random anchor only.
    Random,
    /// Both of the above.
    #[default]
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub m_max: u32,
    pub n_max: u32,
    pub d_max: u32,
    /// Restricts the Johnson checks to a single `k` when set.
    pub k: Option<u32>,
    /// Largest `d` in the grid of bidiagonal modules `V_d(a,b)`.
    pub vd_d_max: u32,
    /// Largest `D` for which the lattice is split along every anchor.
    pub split_d_max: u32,
    pub binomial_n_max: u64,
    pub anchors: AnchorPolicy,
    pub seed: u64,
    /// Cap on `C(D,k)` for generated-algebra computations.
    pub cap: u64,
    /// Cap on `D` for building the `2^D`-dimensional lattice.
    pub lattice_cap: u32,
    /// Record wall-clock milliseconds per check. Off by default so reports
    /// are reproducible byte for byte.
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            m_max: 4,
            n_max: 4,
            d_max: 8,
            k: None,
            vd_d_max: 5,
            split_d_max: 6,
            binomial_n_max: 40,
            anchors: AnchorPolicy::Both,
            seed: 0,
            cap: DEFAULT_BRUTEFORCE_CAP,
            lattice_cap: DEFAULT_LATTICE_CAP,
            timing: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.cap == 0 {
            return Err(Error::Config("--cap must be at least 1".into()));
        }
        if let Some(k) = self.k {
            if k == 0 || k >= self.d_max.max(2) {
                return Err(Error::Config(format!("k = {k} is outside 1..D-1 for every D <= {}", self.d_max)));
            }
        }
        if self.d_max > 62 {
            return Err(Error::Config(format!("D = {} is too large for subset bitmasks", self.d_max)));
        }
        Ok(())
    }
}

/// Converts a signed command-line value into a range bound.
pub fn nonnegative<T: TryFrom<i64>>(name: &str, value: i64) -> Result<T> {
    T::try_from(value).map_err(|_| Error::Config(format!("{name} must be a nonnegative integer, got {value}")))
}
