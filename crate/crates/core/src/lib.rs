//! Exact modular data, characters, modular invariants and exceptional
//! extensions of Virasoro minimal models.
//!
//! Everything that decides a pass/fail is exact: rationals, cyclotomic
//! numbers, truncated q-series with rational coefficients. Floating point
//! only appears as certified ball arithmetic where a sign has to be fixed,
//! and in the numerical character checks.

pub mod branching;
pub mod characters;
pub mod error;
pub mod exact;
pub mod extensions;
pub mod fusion;
pub mod invariants;
pub mod linalg;
pub mod minimal_model;
pub mod modular_data;
pub mod par;
pub mod report;

pub use error::{Error, Result};
pub use minimal_model::{central_charge, KacLabel, MinimalModel, Transversal};
