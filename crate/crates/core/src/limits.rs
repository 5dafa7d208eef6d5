//! Resource guards.
//!
//! Intersections and powers of monomial ideals can grow combinatorially, so
//! every operation that may blow up takes a [`Limits`] and fails with
//! [`Error::Resource`] instead of running away.

use crate::error::{Error, Result};

/// Environment variable consulted by [`Limits::from_env`].
pub const CAP_ENV: &str = "VSPREAD_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Upper bound on the number of minimal generators of any intermediate
    /// ideal produced while folding intersections.
    pub max_generators: usize,
    /// Largest ambient variable count the brute-force facet oracle accepts.
    pub oracle_max_vars: usize,
    /// Largest generator count for the backtracking linear-quotient search.
    pub linquot_max_generators: usize,
    /// Largest exponent `k` for ordinary/symbolic power comparisons.
    pub max_power: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_generators: 200_000, oracle_max_vars: 16, linquot_max_generators: 5_000, max_power: 3 }
    }
}

impl Limits {
    /// Defaults, overridden by `VSPREAD_CAP` when it is set.
    ///
    /// The variable holds either a bare integer (replacing `max_generators`)
    /// or a comma-separated list of `key=value` pairs with keys `gens`,
    /// `oracle_vars`, `linquot`, `k`.
    pub fn from_env() -> Result<Self> {
        match std::env::var(CAP_ENV) {
            Ok(raw) => Limits::default().with_overrides(&raw),
            Err(_) => Ok(Limits::default()),
        }
    }

    pub fn with_overrides(mut self, raw: &str) -> Result<Self> {
        let raw = raw.trim();
        if raw.is_empty() {
            return Ok(self);
        }
        if let Ok(v) = raw.parse::<usize>() {
            self.max_generators = v;
            return Ok(self);
        }
        for item in raw.split(',') {
            let (key, value) =
                item.split_once('=').ok_or_else(|| Error::domain(format!("bad {CAP_ENV} entry `{item}`")))?;
            let value: usize =
                value.trim().parse().map_err(|_| Error::domain(format!("bad {CAP_ENV} value in `{item}`")))?;
            match key.trim() {
                "gens" => self.max_generators = value,
                "oracle_vars" => self.oracle_max_vars = value,
                "linquot" => self.linquot_max_generators = value,
                "k" => self.max_power = value as u32,
                other => return Err(Error::domain(format!("unknown {CAP_ENV} key `{other}`"))),
            }
        }
        Ok(self)
    }

    pub(crate) fn check_generators(&self, count: usize, what: &str) -> Result<()> {
        if count > self.max_generators {
            Err(Error::Resource(format!("{what}: {count} generators exceeds cap {}", self.max_generators)))
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_power(&self, k: u32) -> Result<()> {
        if k > self.max_power {
            Err(Error::Resource(format!("power k={k} exceeds cap {}", self.max_power)))
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let l = Limits::default().with_overrides("1234").unwrap();
        assert_eq!(l.max_generators, 1234);
        let l = Limits::default().with_overrides("gens=10, k=4,oracle_vars=20").unwrap();
        assert_eq!((l.max_generators, l.max_power, l.oracle_max_vars), (10, 4, 20));
        assert!(Limits::default().with_overrides("bogus=1").is_err());
        assert!(Limits::default().with_overrides("gens").is_err());
    }
}
