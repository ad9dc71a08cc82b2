//! Orthonormal Jacobi polynomials, Gauss–Jacobi rules and gamma-function
//! support.
//!
//! The internal normalization is orthonormal: for the weight
//! `(1-t)^α (1+t)^β` on `[-1, 1]`, `∫ p_i p_j w = δ_ij` and each `p_ℓ` has a
//! positive leading coefficient. All kernels in the crate are written in this
//! normalization.

mod dd;
mod gamma;
mod gauss;
mod jacobi;

pub(crate) use dd::{refined_gauss_jacobi, Dd, ExtendedJacobi};
pub use gamma::{ln_abs_gamma, ln_gamma};
pub use gauss::{gauss_jacobi, GaussJacobiRule};
pub use jacobi::{even_jacobi_at_zero, jacobi_at_one, JacobiBasis};

/// Dimension `d_ℓ^q` of the space of spherical harmonics of degree `ℓ` on `S^q`.
///
/// Partial sums give the dimension of the polynomial space: `Σ_{ℓ≤n} d_ℓ^q = d_n^{q+1}`.
pub fn harmonic_dimension(q: usize, degree: usize) -> u64 {
    assert!(q >= 1, "harmonic_dimension needs q >= 1");
    if degree == 0 {
        return 1;
    }
    // (2ℓ+q-1)/(ℓ+q-1) * C(ℓ+q-1, ℓ)
    let l = degree as u128;
    let q = q as u128;
    let binom = binomial(l + q - 1, l);
    let value = (2 * l + q - 1) * binom / (l + q - 1);
    u64::try_from(value).expect("harmonic dimension overflows u64")
}

/// Dimension of `Π_n^q`, the spherical polynomials of degree at most `n`.
pub fn polynomial_dimension(q: usize, n: usize) -> u64 {
    harmonic_dimension(q + 1, n)
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
