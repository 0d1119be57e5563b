//! Local analysis of strongly parabolic Higgs fields.
//!
//! Over a truncated power series ring `k[[t]] / t^N` with `k` a finite field,
//! the crate samples strongly parabolic endomorphisms of a flagged lattice,
//! bounds the valuations of their characteristic polynomials, factors
//! spectral polynomials along their Newton polygons, splits the lattice into
//! kernel summands, runs the reverse spectral construction, and evaluates the
//! dimension formulas of the global parabolic Hitchin system.

pub mod census;
pub mod combinatorics;
pub mod error;
pub mod field;
pub mod literal;
pub mod local_higgs;
pub mod series_ring;
pub mod spectral;

pub use error::{Error, Result};
