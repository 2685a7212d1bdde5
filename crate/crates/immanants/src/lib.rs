//! Exact second (and fourth) moments of immanants of the upper-left `n x n`
//! block of Haar-distributed matrices in U(N), O(N) and the circular
//! orthogonal ensemble COE(N).
//!
//! The closed forms live in [`moments`]; everything they are built from —
//! integer partitions and the polynomial families `[N]_λ^(α)` and `{N}_λ`
//! ([`partitions`]), symmetric-group characters ([`symgroup`]), perfect
//! matchings, the hyperoctahedral group and zonal spherical functions
//! ([`matchings`]), and Weingarten functions ([`weingarten`]) — is exact
//! rational arithmetic throughout. Each closed form is paired with a raw
//! Weingarten-sum oracle that expands the matrix-entry moments with no
//! character orthogonality applied, so agreement is a genuine cross-check.
//!
//! [`conjecture`] certifies, by exact evaluation at more integer points than
//! the relevant degree bound, the identity relating zonal polynomials at the
//! identity to dimensions of orthogonal-group representations. [`montecarlo`]
//! samples the three ensembles and compares empirical immanant moments
//! against the exact values.

pub mod conjecture;
pub mod error;
pub mod matchings;
pub mod matrix;
pub mod moments;
pub mod montecarlo;
pub mod partitions;
pub mod rational;
pub mod symgroup;
pub mod weingarten;

pub use error::Error;
pub use partitions::Partition;
pub use rational::Rat;
pub use symgroup::Permutation;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
