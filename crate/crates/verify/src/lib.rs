//! Independent oracles and the acceptance suite for `minmod`.
//!
//! The oracles share no code with the library beyond the label types: the
//! Gram-matrix oracle works in the Verma module directly, and the brute-force
//! invariant search uses its own floating S-matrix and transversal.

pub mod criteria;
pub mod numeric;
pub mod oracle;

pub use criteria::{run_all, run_criterion, Outcome, CRITERIA};
