pub mod error;
pub mod graph;
pub mod inequalities;
pub mod linalg;
pub mod magic;
pub mod pauli;
pub mod rays;
pub mod report;
pub mod sampling;
pub mod selftest;
pub mod states;
pub mod tolerance;

pub use error::{Error, Result};
pub use tolerance::Tolerances;
