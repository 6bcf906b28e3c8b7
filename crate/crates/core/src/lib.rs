//! Finite-state quantum generators under projective measurement protocols:
//! exact measurement-word distributions and the information measures that
//! quantify how such processes store and generate information.
//!
//! A generator pairs a unitary with a complete set of orthogonal projectors,
//! one per output symbol; a measurement protocol decides when the projectors
//! are applied. From the exact word distribution the crate computes block
//! entropies, the entropy rate (with a closed form for deterministic
//! generators), excess entropy, transient information, and the von Neumann
//! entropy of the stationary state. Deterministic generators also get an
//! equivalent classical generator for cross-validation, and a seeded Monte
//! Carlo sampler provides an independent empirical check.
//!
//! ```
//! use qproc_core::{builtins, infotheory};
//!
//! let (generator, protocol) = builtins::beamsplitter_i();
//! let report = infotheory::analyze(&generator, &protocol, 12).unwrap();
//! assert!((report.h_mu_best() - 1.0).abs() < 1e-9);
//! assert!((report.internal_state_entropy - 1.0).abs() < 1e-9);
//! ```
//!
//! With the default `parallel` feature the exact enumeration expands
//! disjoint prefix subtrees on a rayon pool; disabling the feature falls
//! back to the identical sequential traversal.

pub mod builtins;
pub mod classical;
mod error;
pub mod generator;
pub mod infotheory;
pub mod linalg;
pub mod process;

pub use classical::ClassicalGenerator;
pub use error::{Error, Result};
pub use generator::{
    DensityMatrix, MeasurementAct, MeasurementProtocol, QuantumGenerator, StateVector,
};
pub use infotheory::{EntropyCurve, InfoReport};
pub use linalg::CMatrix;
pub use process::{Initial, Trajectory, WordDistribution};
