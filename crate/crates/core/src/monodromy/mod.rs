//! Ground-truth Hurwitz numbers from monodromy.
//!
//! A degree-`n` covering of the sphere with numbered sheets and critical values
//! `w_1, …, w_c` is the same thing as a tuple `(σ_1, …, σ_c)` in `S_n` with
//! prescribed cycle types, `σ_1⋯σ_c = id`, generating a transitive subgroup.
//! Relabelling sheets is the `S_n` action by simultaneous conjugation, and the
//! stabilizer of a tuple is the automorphism group of its covering, so the
//! automorphism-weighted count of coverings is `#tuples / n!`.

mod cache;
mod enumerate;
pub mod perm;
mod transfer;

use serde::{Deserialize, Serialize};

pub use cache::{count_cached, CacheOutcome, CountCache};
pub use enumerate::{count_by_enumeration, work_estimate};
pub use transfer::count_by_transfer;

use crate::combinatorics::RamificationProfile;
use crate::error::{Error, Result};
use crate::exact::{factorial_q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Loop over all but the last factor; the last is forced to be the inverse
    /// of the partial product.
    #[default]
    Enumerate,
    /// Dynamic programming over (partial product, orbit partition) states.
    Transfer,
}

#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Largest admissible covering degree.
    pub max_degree: u32,
    /// Worker threads; `None` uses the rayon default.
    pub threads: Option<usize>,
    pub method: Method,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_degree: 7,
            threads: None,
            method: Method::Enumerate,
        }
    }
}

impl OracleConfig {
    pub fn with_method(method: Method) -> Self {
        OracleConfig {
            method,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationCount {
    pub n: u32,
    pub profile: String,
    /// Number of admissible tuples.
    #[serde(with = "serde_u128")]
    pub raw_count: u128,
    /// `raw_count / n!`.
    #[serde(with = "crate::exact::serde_q")]
    pub hurwitz_number: Q,
}

impl FactorizationCount {
    pub(crate) fn new(profile: &RamificationProfile, raw_count: u128) -> Self {
        let hurwitz_number =
            Q::from_integer(raw_count.into()) / factorial_q(profile.n() as u64);
        FactorizationCount {
            n: profile.n(),
            profile: profile.to_string(),
            raw_count,
            hurwitz_number,
        }
    }
}

/// Counts transitive factorizations of the identity with the profile's cycle types.
///
/// Profiles that break `Σ d(κ_i) = 2n − 2` describe no genus-zero covering and
/// get a zero count without any search.
pub fn count_factorizations(
    profile: &RamificationProfile,
    config: &OracleConfig,
) -> Result<FactorizationCount> {
    if profile.n() > config.max_degree {
        return Err(Error::refused(format!(
            "degree {} exceeds the enumeration bound {}",
            profile.n(),
            config.max_degree
        )));
    }
    if profile.n() as usize > perm::MAX_DEGREE {
        return Err(Error::refused(format!(
            "degree {} exceeds the supported maximum {}",
            profile.n(),
            perm::MAX_DEGREE
        )));
    }
    if !profile.is_balanced() {
        return Ok(FactorizationCount::new(profile, 0));
    }
    let raw = match config.method {
        Method::Enumerate => count_by_enumeration(profile, config.threads)?,
        Method::Transfer => count_by_transfer(profile),
    };
    Ok(FactorizationCount::new(profile, raw))
}

mod serde_u128 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &u128, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u128, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}
