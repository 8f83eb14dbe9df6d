//! Exact cycle statistics for random graphs on the unit torus.
//!
//! A geometric random graph places n uniform points on the d-dimensional
//! unit torus and joins points within L_σ distance r.  This crate computes,
//! without simulation:
//!
//! - the probability Θ(G, q) that one particular labeled q-cycle is present,
//!   via lattice Fourier series for σ ∈ {2, ∞} ([`cycleprob`]);
//! - the expected number of Hamilton cycles Θ(G, n)·(n−1)!/2 and the edge
//!   probability at which it crosses 1 ([`spectral`]);
//! - the expected characteristic and permanental polynomials of the
//!   adjacency matrix, hence expected determinants, permanents, and
//!   elementary symmetric functions of the eigenvalues ([`spectral`]);
//!
//! together with the special functions the series need ([`specfun`]), ball
//! geometry on the torus ([`geometry`]), and independent Monte Carlo and
//! exhaustive-enumeration oracles used to validate all of the above
//! ([`oracle`]).
//!
//! ```
//! use torus_cycles::cycleprob::{theta, GraphModel};
//! use torus_cycles::geometry::Sigma;
//!
//! // A labeled triangle among 1-d points within distance 0.1: exactly 3r².
//! let model = GraphModel::gr(1, Sigma::Inf, 0.1).unwrap();
//! let t = theta(&model, 3, 1e-12).unwrap();
//! assert!((t.value - 0.03).abs() < 1e-10);
//! ```

pub mod cycleprob;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod specfun;
pub mod spectral;

pub use error::{Error, Result};

// The guide's code samples run with the crate's doc-tests, so the book and
// the library cannot drift apart.
#[doc = include_str!("../../../book/src/introduction.md")]
mod guide_introduction {}
#[doc = include_str!("../../../book/src/models.md")]
mod guide_models {}
#[doc = include_str!("../../../book/src/cycle-series.md")]
mod guide_cycle_series {}
#[doc = include_str!("../../../book/src/spectral.md")]
mod guide_spectral {}
#[doc = include_str!("../../../book/src/oracles.md")]
mod guide_oracles {}
