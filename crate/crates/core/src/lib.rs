//! Constructive zonal function (ZF) networks on the unit sphere `S^q`.
//!
//! A ZF network is a function `x ↦ Σ_k a_k φ(x·x_k)` on the sphere. This crate
//! builds such networks for the activations `φ_γ(t) = |t|^{2γ+1}` directly from
//! scattered samples of a target function, without any iterative training:
//!
//! 1. quadrature weights on the sample sites and on a set of centers are found
//!    from a reproducing-kernel Gram system ([`quadrature`]);
//! 2. the samples are smoothed by a band-limited kernel and divided, degree by
//!    degree, by the activation's expansion coefficients ([`kernels`],
//!    [`activation`]);
//! 3. the result, read at the centers and scaled by the center weights, gives
//!    the network coefficients ([`network`]).
//!
//! Everything reduces to univariate Jacobi polynomial series through the
//! addition formula, so no spherical harmonics are ever materialized.

pub mod activation;
pub mod error;
pub mod io;
pub mod kernels;
pub mod network;
pub mod orthopoly;
mod parallel;
pub mod quadrature;
pub mod sphere;

pub use activation::{ActivationSpec, CoefficientSequence};
pub use error::{Error, Result};
pub use kernels::{Cutoff, SeriesKernel, Window};
pub use network::{RateReport, SampleSet, ZFNetwork};
pub use orthopoly::{GaussJacobiRule, JacobiBasis};
pub use parallel::{set_threads, threads};
pub use quadrature::{QuadratureRule, RegularityEstimate};
pub use sphere::{PointCloud, PointKind, Rotation, SpherePoint};
