//! Units of the scalar group `<zeta_m> x <t_1, ..., t_r>` in exponent form.
//!
//! Matrix entries `q_ij` and every bicharacter value live in this group, so
//! equality and inversion are exact integer operations.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Signature;

/// `zeta^torsion * t_1^{free[0]} * ... * t_r^{free[r-1]}`, torsion reduced
/// into `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupUnit {
    m: u64,
    torsion: u64,
    free: Vec<i64>,
}

impl GroupUnit {
    pub fn new(m: u64, torsion: i64, free: Vec<i64>) -> Self {
        assert!(m >= 1, "torsion order must be at least 1");
        GroupUnit {
            m,
            torsion: torsion.rem_euclid(m as i64) as u64,
            free,
        }
    }

    pub fn identity(sig: Signature) -> Self {
        GroupUnit {
            m: sig.m,
            torsion: 0,
            free: vec![0; sig.r],
        }
    }

    pub fn sig(&self) -> Signature {
        Signature {
            m: self.m,
            r: self.free.len(),
        }
    }

    pub fn torsion(&self) -> u64 {
        self.torsion
    }

    pub fn free(&self) -> &[i64] {
        &self.free
    }

    pub fn is_identity(&self) -> bool {
        self.torsion == 0 && self.free.iter().all(|e| *e == 0)
    }

    fn check_sig(&self, other: &GroupUnit) -> Result<()> {
        if self.m != other.m || self.free.len() != other.free.len() {
            return Err(Error::SignatureMismatch {
                expected_m: self.m,
                expected_r: self.free.len(),
                found_m: other.m,
                found_r: other.free.len(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &GroupUnit) -> Result<GroupUnit> {
        self.check_sig(other)?;
        Ok(GroupUnit {
            m: self.m,
            torsion: (self.torsion + other.torsion) % self.m,
            free: self
                .free
                .iter()
                .zip(&other.free)
                .map(|(a, b)| a.checked_add(*b).expect("free exponent overflow"))
                .collect(),
        })
    }

    pub fn inv(&self) -> GroupUnit {
        self.pow(-1)
    }

    pub fn pow(&self, e: i64) -> GroupUnit {
        let t = (self.torsion as i128 * e as i128).rem_euclid(self.m as i128) as u64;
        GroupUnit {
            m: self.m,
            torsion: t,
            free: self
                .free
                .iter()
                .map(|a| a.checked_mul(e).expect("free exponent overflow"))
                .collect(),
        }
    }
}

impl fmt::Display for GroupUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.torsion {
            0 => {}
            1 => parts.push("zeta".to_string()),
            a => parts.push(format!("zeta^{}", a)),
        }
        for (k, e) in self.free.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("t{}", k + 1)),
                e => parts.push(format!("t{}^{}", k + 1, e)),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}
