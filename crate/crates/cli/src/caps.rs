use lpa_core::cycles::DEFAULT_CENSUS_CAP;
use lpa_core::ideals::DEFAULT_LATTICE_CAP;
use lpa_core::paths::DEFAULT_MONOMIAL_CAP;
use serde::Serialize;

use crate::CliError;

pub const CAPS_ENV: &str = "LPA_MATRIX_CAPS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub lattice: usize,
    pub census: usize,
    pub monomials: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { lattice: DEFAULT_LATTICE_CAP, census: DEFAULT_CENSUS_CAP, monomials: DEFAULT_MONOMIAL_CAP }
    }
}

impl Caps {
    /// Applies `lattice=N,census=N,monomials=N` (any subset, any order).
    pub fn with_env(mut self, spec: &str) -> Result<Self, CliError> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("{CAPS_ENV}: expected key=value, got `{item}`")))?;
            let bad = || CliError::Usage(format!("{CAPS_ENV}: `{value}` is not a count"));
            match key.trim() {
                "lattice" => self.lattice = value.trim().parse().map_err(|_| bad())?,
                "census" => self.census = value.trim().parse().map_err(|_| bad())?,
                "monomials" => self.monomials = value.trim().parse().map_err(|_| bad())?,
                other => return Err(CliError::Usage(format!("{CAPS_ENV}: unknown cap `{other}`"))),
            }
        }
        Ok(self)
    }

    /// Defaults, then the environment, then explicit flags.
    pub fn resolve(
        env: Option<&str>,
        lattice: Option<usize>,
        census: Option<usize>,
        monomials: Option<u128>,
    ) -> Result<Self, CliError> {
        let mut caps = match env {
            Some(spec) => Caps::default().with_env(spec)?,
            None => Caps::default(),
        };
        if let Some(v) = lattice {
            caps.lattice = v;
        }
        if let Some(v) = census {
            caps.census = v;
        }
        if let Some(v) = monomials {
            caps.monomials = v;
        }
        Ok(caps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let caps = Caps::resolve(Some("lattice=5, census=7"), None, Some(3), None).unwrap();
        assert_eq!(caps, Caps { lattice: 5, census: 3, monomials: DEFAULT_MONOMIAL_CAP });
        assert_eq!(Caps::resolve(None, None, None, None).unwrap(), Caps::default());
    }

    #[test]
    fn malformed_env() {
        assert!(Caps::resolve(Some("lattice"), None, None, None).is_err());
        assert!(Caps::resolve(Some("lattice=x"), None, None, None).is_err());
        assert!(Caps::resolve(Some("colour=3"), None, None, None).is_err());
    }
}
