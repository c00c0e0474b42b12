//! The coefficient tower `Q(zeta_m)(t_1..t_r)`.
//!
//! Three layers:
//! - [`Cyclotomic`]: elements of `Q(zeta_m)` in the power basis of
//!   `Q[z]/Phi_m(z)`.
//! - [`GroupUnit`]: elements of the scalar group `<zeta> x <t_1..t_r>`,
//!   stored in exponent form.  The `q_ij` entries and all bicharacter values
//!   live here.
//! - [`FieldElem`]: elements of the full rational function field, stored as
//!   fractions of Laurent polynomials with cyclotomic coefficients.
//!
//! Equality of field elements is decided by cross-multiplication; fractions
//! are never put through a full gcd, only content and monomial-shift
//! normalization.

mod cyclotomic;
mod field;
mod unit;

pub use cyclotomic::{cyclotomic_poly, euler_phi, Cyclotomic};
pub use field::{FieldElem, LaurentPoly};
pub use unit::GroupUnit;

/// Shape of the scalar tower: torsion order `m >= 1` and free rank `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub m: u64,
    pub r: usize,
}

impl Signature {
    pub fn new(m: u64, r: usize) -> Self {
        assert!(m >= 1, "torsion order must be at least 1");
        Signature { m, r }
    }
}
