//! Canonical bases of the tensor and exterior spaces of the natural
//! representation of quantum gl(m|n), their crystals, and the resulting
//! multiplicity and Ext tables for finite dimensional gl(m|n)-modules.
//!
//! All coordinates are weight functions `f: I(m|n) -> Z` with
//! `I(m|n) = {-m..-1, 1..n}`; see [`weights`].

pub mod canonical;
pub mod checks;
pub mod exterior;
pub mod laurent;
pub mod rep;
pub mod tensor;
pub mod weights;

pub use laurent::{LaurentPoly, Poly, SmallPoly};
pub use weights::{GlWeight, InfWeight, Shape, SymElem, WeightFn};

use thiserror::Error as ThisError;

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum Error {
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
    /// Input outside the domain of an operation (bound, shape, dominance).
    #[error("domain error: {0}")]
    Domain(String),
    /// Two routes that must agree did not, or an internal invariant broke.
    #[error("consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
