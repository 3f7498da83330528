//! Constructions and certificates for the multicolour Ramsey numbers
//! `r_k(K_{2,t}; K_m)`.

pub mod bounds;
pub mod construction;
pub mod error;
pub mod field;
pub mod graph;
pub mod independence;
pub mod primes;
pub mod random;
pub mod spectral;
pub mod subgroup;

pub use error::{Error, Result};
