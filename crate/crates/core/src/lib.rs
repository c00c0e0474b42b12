//! Exact arithmetic for q-commutative power series rings and their Laurent
//! localizations.
//!
//! The ring is `k_q[[x_1..x_n]]` over `k = Q(zeta_m)(t_1..t_r)`, with the
//! variables subject to `x_i x_j = q_ij x_j x_i` for a multiplicatively
//! antisymmetric matrix `q`.  The crate computes the commutation bicharacter
//! and its radical lattice, decides genericity, decomposes elements over the
//! center, monomializes torus-stable ideals, and stratifies the prime
//! spectrum by the 2^n torus-invariant primes.
//!
//! Modules:
//! - [`scalar`]: the coefficient tower (cyclotomic numbers, scalar group
//!   units, rational function field elements).
//! - [`lattice`]: integer matrix normal forms, the bicharacter, its radical
//!   lattice, transversals, and genericity.
//! - [`series`]: truncated skew power series and the torus action.
//! - [`laurent`]: elements of the Laurent localization `x^{-u} * body`.
//! - [`center`]: central decomposition, coset shears, monomialization.
//! - [`spectrum`]: torus-invariant primes, strata, and the spectrum report.

pub mod center;
pub mod error;
pub mod lattice;
pub mod laurent;
pub mod scalar;
pub mod series;
pub mod spectrum;

pub use error::Error;

/// Truncation order used when none is given explicitly.
pub const DEFAULT_PRECISION: u32 = 8;
