use std::env;

use dltk_core::braid::DEFAULT_SSS_CAP;
use dltk_core::dlpoints::{DEFAULT_FLAG_CAP, DEFAULT_SEARCH_CAP};

/// Resource caps, overridable through `DLTK_SSS_CAP`, `DLTK_FLAG_CAP` and
/// `DLTK_SEARCH_CAP`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub sss: usize,
    pub flags: usize,
    pub search: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            sss: DEFAULT_SSS_CAP,
            flags: DEFAULT_FLAG_CAP,
            search: DEFAULT_SEARCH_CAP,
        }
    }
}

impl Caps {
    pub fn from_env() -> Result<Caps, String> {
        Self::from_lookup(|k| env::var(k).ok())
    }

    pub fn from_lookup(lookup: impl Fn(&str) -> Option<String>) -> Result<Caps, String> {
        let d = Caps::default();
        Ok(Caps {
            sss: read(&lookup, "DLTK_SSS_CAP", d.sss as u64)? as usize,
            flags: read(&lookup, "DLTK_FLAG_CAP", d.flags as u64)? as usize,
            search: read(&lookup, "DLTK_SEARCH_CAP", d.search)?,
        })
    }
}

fn read(lookup: &impl Fn(&str) -> Option<String>, key: &str, default: u64) -> Result<u64, String> {
    match lookup(key) {
        None => Ok(default),
        Some(v) => match v.trim().parse::<u64>() {
            Ok(x) if x > 0 && usize::try_from(x).is_ok() => Ok(x),
            _ => Err(format!("{key} must be a positive integer, got {v:?}")),
        },
    }
}
