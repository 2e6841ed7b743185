//! Twisted Alexander polynomials (Wada invariants) of knot groups, with
//! presentation builders and closed form recursions for tunnel number one
//! Montesinos knots.

pub mod builders;
pub mod closed;
pub mod engine;
pub mod error;
pub mod group;
pub mod json;
pub mod laurent;
pub mod repn;
pub mod scalar;

pub use error::{Error, Result};
