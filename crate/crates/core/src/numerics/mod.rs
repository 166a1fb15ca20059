//! Numerical building blocks: compensated summation and adaptive quadrature.

pub mod quad;
pub mod sum;

pub use quad::{integrate, Interval, QuadOptions, QuadResult};
pub use sum::NeumaierSum;
