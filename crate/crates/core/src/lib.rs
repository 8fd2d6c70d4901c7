//! Exact computations with finite-dimensional U(sl2)-modules, the universal
//! Hahn algebra, and the Terwilliger algebras of Johnson graphs.
//!
//! Every quantity is an exact rational; there is no floating point anywhere
//! in the library.

pub mod binomial;
pub mod config;
pub mod error;
pub mod hahn;
pub mod johnson;
pub mod lattice;
pub mod matrix;
pub mod rational;
pub mod report;
pub mod sl2;
pub mod span;
pub mod strategy;
pub mod suite;
pub mod tables;
pub mod weight;

pub use error::{Error, Result};
pub use matrix::RepMatrix;
pub use rational::Rational;
