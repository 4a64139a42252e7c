//! Exact rational and cyclotomic arithmetic, plus certified ball arithmetic
//! for the few places that need a floating sign.

pub mod ball;
pub mod cyc;
pub mod field;
pub mod intcyc;
pub mod poly;
pub mod rational;
pub mod rootsum;

pub use ball::{Ball, ComplexBall};
pub use cyc::{cyc_cos, cyc_root_power, CycJson, CycNumber};
pub use intcyc::{IntCyc, IntField};
pub use poly::{cyclotomic_polynomial, euler_phi};
pub use rational::Rational;
pub use rootsum::{RootBasis, RootSum};
