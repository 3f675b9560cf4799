//! Numerical core for building, validating and analysing discrete ontological
//! models of qubit systems.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the command line
//! front end and parallel sweeps live in the `ontolab` crate.
//!
//! Module map:
//!
//! - [`quantum`]: states, projective measurements, Born probabilities, the CHSH
//!   operator and the orthogonal-basis cloning map.
//! - [`ontic`]: finite ontic spaces, epistemic states, response functions and
//!   the structural properties (outcome determinism, reciprocity).
//! - [`reference`]: reference models (psi-complete, Bell's model and the
//!   Kochen-Specker qubit model on an equal-area sphere partition).
//! - [`epistemicity`]: ontic overlaps, the degree of epistemicity and the
//!   CHSH-derived upper bounds on it.
//! - [`composite`]: two-party assignment tables, parameter/outcome
//!   independence, type classification and evolution under local measurement.
//! - [`cloning`]: the three-region CHSH budget of a cloning-machine input.
//! - [`search`]: a dense simplex, overlap maximisation with brute-force
//!   oracles, and a seeded Monte-Carlo CHSH estimator.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cloning;
pub mod composite;
pub mod epistemicity;
mod error;
pub mod ontic;
pub mod quantum;
pub mod reference;
pub mod search;
pub mod tolerance;

pub use crate::error::{Error, Result};
