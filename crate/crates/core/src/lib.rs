//! Crystals of `gl_N`, their tensor products, and finite-field point counts of
//! the nilpotent varieties whose irreducible components realize them.
//!
//! * [`weights`]: partitions, weights and dimension formulas.
//! * [`crystal`]: finite normal crystals, tensor products and decomposition.
//! * [`gl2`]: the explicit `gl_2` crystals and the labeling map `tau_2`.
//! * [`tableaux`]: semistandard tableau model of `M_N(lambda)`.
//! * [`decomp`]: product decompositions, Littlewood–Richardson multiplicities, `tau_N`.
//! * [`schur`]: Jacobi–Trudi Schur polynomials used as an independent reference.
//! * [`ffgeom`]: brute-force geometry over prime fields and exact interpolation.

pub mod crystal;
pub mod decomp;
pub mod error;
pub mod ffgeom;
pub mod gl2;
pub mod schur;
pub mod tableaux;
pub mod weights;

pub use error::{Error, Result};
