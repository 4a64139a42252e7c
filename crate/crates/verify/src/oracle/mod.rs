pub mod brute;
pub mod gram;
