//! Shared fixtures for the criterion benches in `benches/`.

use zfnet::network::level_sites;
use zfnet::quadrature::{compute_weights_with, QuadratureOptions};
use zfnet::{PointKind, QuadratureRule};

/// An antipodally closed Fibonacci rule exact to order `4n` on `S^2`.
pub fn site_rule(n: usize, seed: u64) -> QuadratureRule {
    let sites = level_sites(2, PointKind::FibonacciS2, 4 * n, 1.6, seed).expect("valid sizes");
    compute_weights_with(&sites, 4 * n, &QuadratureOptions::default()).expect("well-posed solve")
}
