//! Error type shared across the crate.
//!
//! Only genuinely runtime conditions are errors: evaluation at a pole of an
//! exact formula, and enumeration requests past the documented bounds.
//! Contract violations (degree mismatches, malformed partitions) panic.

use crate::partitions::Partition;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A polynomial denominator vanished at the requested evaluation point.
    /// `family` is the polynomial family (`"[N]^(1)"`, `"[N]^(2)"`, `"{N}"`),
    /// `shape` the partition it was evaluated at.
    #[error("pole: {family}_{shape} vanishes at N = {point}")]
    Pole {
        family: &'static str,
        shape: Partition,
        point: i64,
    },

    /// An enumeration was requested past its documented size bound.
    #[error("{what} bound exceeded: requested {requested}, maximum {maximum}")]
    BoundExceeded {
        what: &'static str,
        requested: usize,
        maximum: usize,
    },

    /// An ensemble / immanant / power combination that has no defined moment.
    #[error("invalid combination: {0}")]
    InvalidCombination(String),
}
