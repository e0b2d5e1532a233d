//! Exact-arithmetic toolkit for finite point configurations in projective
//! space: evaluation ranks, Cayley-Bacharach verdicts, special-position
//! reports, configuration classification, seeded generators, and the
//! moduli dimension tables.

pub mod error;
pub mod scalar;
pub mod linalg;
pub mod geometry;
pub mod conditions;
pub mod position;
pub mod classify;
pub mod generate;
pub mod io;
pub mod moduli;
pub mod verify;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
