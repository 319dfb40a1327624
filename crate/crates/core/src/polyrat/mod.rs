//! Polynomial and rational-function arithmetic over complex coefficients.
//!
//! Coefficients are dense and ascending. Root finding returns clustered
//! roots with multiplicities; deflation at the limit points z = 1 and s = 0
//! is done by synthetic division only.

mod poly;
mod rational;
mod roots;

pub use poly::Poly;
pub use rational::{Domain, Rational};
pub use roots::{relative_residual, roots, PoleSet, Root};
