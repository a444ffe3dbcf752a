//! Exact construction and brute-force verification of error-correcting codes
//! over finite fields: generic linear codes, Reed-Solomon codes, evaluation
//! codes on weight-function algebras of plane curves, Bezout codes, and the
//! order bound on minimum distance.

pub mod bezout_code;
pub mod bipoly;
pub mod curve_algebra;
pub mod error;
pub mod evaluation_code;
pub mod gf;
pub mod harness;
pub mod linear;
pub mod order_bound;
pub mod reed_solomon;
pub mod semigroup;

pub use error::{Error, Result};
