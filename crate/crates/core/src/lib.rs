//! Exact-arithmetic Macdonald polynomials, Macdonald characters, and the
//! probabilistic structure of the (q,t)-Gelfand-Tsetlin graph.

pub mod certified;
pub mod error;
pub mod laurent;
pub mod macdonald;
pub mod qseries;
pub mod scalar;
pub mod signature;

pub use error::Error;
