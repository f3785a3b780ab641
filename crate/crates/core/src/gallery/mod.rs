//! Example systems: each exposes a state set, an invertible map on it and
//! the statistics that are known to be homomesic for it.

pub mod chains;
pub mod lyness;
pub mod sandpile;
pub mod ssyt;
pub mod suter;
pub mod words;

use crate::error::{Error, Result};

pub(crate) fn guard_count(what: impl Into<String>, count: u128, guard: u64) -> Result<()> {
    if count > guard as u128 {
        Err(Error::GuardExceeded { what: what.into(), limit: guard })
    } else {
        Ok(())
    }
}
