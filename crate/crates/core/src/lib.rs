//! Shrinkage denoising, sparse regression and planted-clique recovery.
//!
//! Modules map onto the layers of the toolkit:
//! - [`model_gen`]: seeded random designs, signals, observations and clique graphs
//! - [`shrinkage`] and [`quadrature`]: scalar thresholding calculus and minimax risk
//! - [`classical`]: least squares, Fourier bias–variance, Haar wavelets, orthogonal denoising
//! - [`lasso`]: LASSO objective, ISTA, AMP, KKT check, brute-force RIP constant
//! - [`state_evolution`]: AMP state evolution and the noiseless phase boundary
//! - [`clique`]: degree, spectral and AMP planted-clique recovery

pub mod classical;
pub mod clique;
mod error;
pub mod lasso;
pub mod model_gen;
pub mod quadrature;
pub mod shrinkage;
pub mod state_evolution;

#[cfg(test)]
pub(crate) mod oracle;

pub use error::{Error, Result};
