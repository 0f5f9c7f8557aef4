//! Bound states of the D-dimensional Hulthén potential.
//!
//! The closed-form spectrum, normalized eigenfunctions and Hellmann-Feynman
//! expectation values follow from the Nikiforov-Uvarov method applied to the
//! hyperradial equation with an exponential approximation of the centrifugal
//! term. [`oracle`] solves the exact equation numerically so the size of that
//! approximation can be measured.
//!
//! ```
//! use hulthen::{hulthen::energy, PotentialParams, QuantumNumbers};
//!
//! let p = PotentialParams::new(1.0, 0.05, 1.0, 1.0, 3)?;
//! let level = energy(&p, QuantumNumbers::new(0, 0));
//! assert_eq!(level.energy.map(|e| (e + 0.4753125).abs() < 1e-12), Some(true));
//! # Ok::<(), hulthen::Error>(())
//! ```

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod expectation;
pub mod hulthen;
pub mod nu_engine;
pub mod oracle;
pub mod specfun;

pub use error::{Error, Result};
pub use hulthen::{Eigenstate, PotentialParams, QuantumNumbers};
