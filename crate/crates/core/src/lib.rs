//! Exact algebra kernel: finite fields, sparse polynomials, Hasse–Schmidt
//! derivatives, Groebner bases, and projective duality via elimination.

pub mod duality;
pub mod error;
pub mod field;
pub mod forms;
pub mod groebner;
pub mod hasse;
pub mod poly;

pub use error::{AlgebraError, Result};
