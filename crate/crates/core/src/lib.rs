//! Fluctuation formulas for linear statistics of random matrix ensembles.
//!
//! The crate is organised around five layers:
//!
//! - [`basis`]: test-function representations (Fourier, cosine, Chebyshev,
//!   planar), coefficient transforms and the special functions that the
//!   closed-form constants are built from.
//! - [`exact`]: closed-form finite-`N` and limiting covariance formulas for
//!   circular-family and planar ensembles, structure functions and number
//!   variance asymptotics.
//! - [`loops`]: loop-equation resolvents and interval-supported covariance
//!   formulas for the Gaussian/Laguerre/Jacobi beta ensembles, Wigner
//!   matrices and product ensembles.
//! - [`samplers`]: deterministic, seedable realisations of every ensemble the
//!   formulas apply to.
//! - [`mc`]: Monte Carlo covariance estimation with jackknife errors, plus a
//!   small-`N` brute-force quadrature oracle.

pub mod basis;
pub mod error;
pub mod exact;
pub mod linalg;
pub mod loops;
pub mod mc;
pub mod quad;
pub mod rng;
pub mod samplers;

pub use error::{Error, Result};
