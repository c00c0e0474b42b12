//! Ring configuration: a JSON document naming the torus signature and the
//! upper triangle of the commutation matrix.
//!
//! ```json
//! {
//!   "n": 3, "m": 1, "r": 1,
//!   "q": [[{"torsion": 0, "free": [0]}, {"torsion": 0, "free": [1]}],
//!         [{"torsion": 0, "free": [1]}]],
//!   "precision": 8
//! }
//! ```
//!
//! `q[i-1][k]` is the entry for the pair `(i, i+1+k)` in 1-based naming;
//! row i lists the pairs (i, i+1) .. (i, n).  `precision` is optional and
//! defaults to 8 (the key `default_precision` is accepted as an alias).

use serde::Deserialize;

use qcps_core::lattice::QMatrix;
use qcps_core::scalar::{GroupUnit, Signature};

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitLiteral {
    pub torsion: i64,
    pub free: Vec<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingConfig {
    pub n: usize,
    pub m: u64,
    pub r: usize,
    #[serde(default)]
    pub q: Vec<Vec<UnitLiteral>>,
    #[serde(default = "default_precision", alias = "default_precision")]
    pub precision: u32,
}

fn default_precision() -> u32 {
    8
}

impl RingConfig {
    pub fn parse(text: &str) -> Result<RingConfig, CliError> {
        let cfg: RingConfig = serde_json::from_str(text)
            .map_err(|e| CliError::Config(format!("malformed config: {}", e)))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.n < 1 {
            return Err(CliError::Config("n must be at least 1".into()));
        }
        if self.m < 1 {
            return Err(CliError::Config("m must be at least 1".into()));
        }
        if self.precision < 1 {
            return Err(CliError::Config("precision must be at least 1".into()));
        }
        for i in 1..self.n {
            let row = self.q.get(i - 1).ok_or_else(|| {
                CliError::Config(format!(
                    "missing q entry for pair ({}, {}): row {} is absent",
                    i,
                    i + 1,
                    i
                ))
            })?;
            let expected = self.n - i;
            if row.len() < expected {
                return Err(CliError::Config(format!(
                    "missing q entry for pair ({}, {})",
                    i,
                    i + 1 + row.len()
                )));
            }
            if row.len() > expected {
                return Err(CliError::Config(format!(
                    "row {} has {} entries but only the pairs ({}, {})..({}, {}) exist",
                    i,
                    row.len(),
                    i,
                    i + 1,
                    i,
                    self.n
                )));
            }
            for (k, lit) in row.iter().enumerate() {
                if lit.free.len() != self.r {
                    return Err(CliError::Config(format!(
                        "entry ({}, {}): free part has {} exponents, expected r = {}",
                        i,
                        i + 1 + k,
                        lit.free.len(),
                        self.r
                    )));
                }
            }
        }
        if self.q.len() > self.n.saturating_sub(1) {
            return Err(CliError::Config(format!(
                "expected {} rows of q entries for n = {}, found {}",
                self.n - 1,
                self.n,
                self.q.len()
            )));
        }
        Ok(())
    }

    pub fn matrix(&self) -> Result<QMatrix, CliError> {
        let sig = Signature::new(self.m, self.r);
        let upper: Vec<GroupUnit> = self
            .q
            .iter()
            .flatten()
            .map(|lit| GroupUnit::new(self.m, lit.torsion, lit.free.clone()))
            .collect();
        QMatrix::from_upper(self.n, sig, upper)
            .map_err(|e| CliError::Config(format!("invalid commutation matrix: {}", e)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_minimal_config() {
        let cfg = RingConfig::parse(r#"{"n":2,"m":4,"r":0,"q":[[{"torsion":1,"free":[]}]]}"#)
            .unwrap();
        assert_eq!(cfg.precision, 8);
        let q = cfg.matrix().unwrap();
        assert_eq!(q.n(), 2);
        assert_eq!(q.sig(), Signature::new(4, 0));
    }

    #[test]
    fn accepts_the_precision_alias() {
        let cfg = RingConfig::parse(
            r#"{"n":1,"m":1,"r":0,"q":[],"default_precision":5}"#,
        )
        .unwrap();
        assert_eq!(cfg.precision, 5);
    }

    #[test]
    fn names_the_missing_pair() {
        let err = RingConfig::parse(
            r#"{"n":3,"m":1,"r":1,"q":[[{"torsion":0,"free":[0]}],[{"torsion":0,"free":[1]}]]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("(1, 3)"), "got: {}", err);
    }

    #[test]
    fn names_the_pair_with_a_bad_free_part() {
        let err = RingConfig::parse(
            r#"{"n":2,"m":1,"r":2,"q":[[{"torsion":0,"free":[1]}]]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("(1, 2)"), "got: {}", err);
        assert!(err.to_string().contains("expected r = 2"), "got: {}", err);
    }

    #[test]
    fn rejects_zero_torsion_order() {
        let err =
            RingConfig::parse(r#"{"n":1,"m":0,"r":0,"q":[]}"#).unwrap_err();
        assert!(err.to_string().contains("m must be at least 1"));
    }
}
