//! Guard on exhaustive enumeration size.

use crate::error::{Error, Result};

pub const DEFAULT_ENUM_LIMIT: usize = 10;

/// Environment variable overriding [`DEFAULT_ENUM_LIMIT`].
pub const ENUM_LIMIT_ENV: &str = "BINEULER_ENUM_LIMIT";

/// Largest `n` for which `S_n` (or a subset of it) may be enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumLimit(usize);

impl EnumLimit {
    pub fn new(limit: usize) -> Result<Self> {
        if limit == 0 {
            return Err(Error::Domain("enumeration limit must be positive".into()));
        }
        Ok(Self(limit))
    }

    /// Reads [`ENUM_LIMIT_ENV`], falling back to the default when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var(ENUM_LIMIT_ENV) {
            Ok(v) => {
                let limit = v.trim().parse::<usize>().map_err(|_| {
                    Error::Domain(format!("{ENUM_LIMIT_ENV}={v:?} is not a positive integer"))
                })?;
                Self::new(limit)
            }
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn check(self, n: usize) -> Result<()> {
        if n > self.0 {
            Err(Error::LimitExceeded { n, limit: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for EnumLimit {
    fn default() -> Self {
        Self(DEFAULT_ENUM_LIMIT)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_rejects_sizes_above_limit() {
        let limit = EnumLimit::new(4).unwrap();
        assert!(limit.check(4).is_ok());
        assert_eq!(limit.check(5), Err(Error::LimitExceeded { n: 5, limit: 4 }));
        assert!(EnumLimit::new(0).is_err());
        assert_eq!(EnumLimit::default().get(), 10);
    }
}
