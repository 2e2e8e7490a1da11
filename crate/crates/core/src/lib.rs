//! Numerical laboratory for a three-degree-of-freedom model of the Casimir
//! effect: two oscillators x1, x2 coupled through g(y) x1 x2 to a slow
//! coordinate y.
//!
//! * [`model`]: parameters, coupling families and the normal-mode spectrum
//! * [`classical`]: classical solutions, force and a symplectic integrator
//! * [`quantum`]: closed-form vacuum energy, forces and Bogoliubov structure
//! * [`fock`]: truncated Fock-space diagonalization used as an oracle
//! * [`dynamics`]: semiclassical motion of y under the vacuum force
//! * [`cli`]: configuration, experiment commands and file output

// `!(x > 0.0)` is deliberate: NaN has to fail validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classical;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod fock;
pub mod model;
pub mod quantum;
pub mod reference;

pub use error::{Error, Result};
pub use model::{validate, CouplingFamily, CouplingSpec, ModelParams, Spectrum, ValidatedModel};
