//! Element-order spectra, Gruenberg–Kegel prime graphs, permutation-group
//! spectra, modular coset-order checks, and an elimination engine that
//! narrows down which almost simple groups can share a given spectrum.

pub mod arith;
pub mod catalog;
pub mod error;
pub mod modlinalg;
pub mod permgroup;
pub mod prime_graph;
pub mod recognizer;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use prime_graph::PrimeGraph;
pub use spectrum::{MuSet, Spectrum};
