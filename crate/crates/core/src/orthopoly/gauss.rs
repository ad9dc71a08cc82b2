use super::jacobi::JacobiBasis;
use crate::error::{Error, Result};

const MAX_QL_SWEEPS: usize = 60;

/// An `m`-point Gauss–Jacobi rule: `Σ w_i f(t_i) = ∫ f(t) (1-t)^α (1+t)^β dt`
/// for every polynomial `f` of degree at most `2m - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussJacobiRule {
    pub alpha: f64,
    pub beta: f64,
    /// Strictly increasing, inside `(-1, 1)`.
    pub nodes: Vec<f64>,
    /// Strictly positive.
    pub weights: Vec<f64>,
}

impl GaussJacobiRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * f(t)).sum()
    }
}

/// Golub–Welsch construction: the nodes are the eigenvalues of the symmetric
/// tridiagonal Jacobi matrix and the weights are `mass · v_0²` with `v_0` the
/// first component of the normalized eigenvectors.
pub fn gauss_jacobi(alpha: f64, beta: f64, m: usize) -> Result<GaussJacobiRule> {
    if m == 0 {
        return Err(Error::domain("Gauss–Jacobi rule needs at least one node"));
    }
    let basis = JacobiBasis::new(alpha, beta, m)?;
    let (mut d, off) = basis.jacobi_matrix(m);
    let mut e = off;
    e.push(0.0);
    let mut z = vec![0.0; m];
    z[0] = 1.0;
    tridiagonal_ql(&mut d, &mut e, &mut z)?;

    let mass = basis.weight_mass();
    let mut pairs: Vec<(f64, f64)> = d.into_iter().zip(z).map(|(t, v)| (t, mass * v * v)).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (nodes, weights): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    Ok(GaussJacobiRule {
        alpha,
        beta,
        nodes,
        weights,
    })
}

/// Implicit QL iteration with Wilkinson-type shifts on a symmetric tridiagonal
/// matrix (`d` diagonal, `e[i]` couples `i` and `i+1`, `e[n-1] = 0`), rotating
/// only the first components `z` of the eigenvectors.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], z: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                if e[m].abs() <= f64::EPSILON * (d[m].abs() + d[m + 1].abs()) {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if sweeps == MAX_QL_SWEEPS {
                return Err(Error::Numeric(format!(
                    "tridiagonal QL did not converge for eigenvalue {l} of {n} after {MAX_QL_SWEEPS} sweeps (|e| = {:.3e})",
                    e[l].abs()
                )));
            }
            sweeps += 1;

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                if f.abs() >= g.abs() {
                    c = g / f;
                    r = c.hypot(1.0);
                    e[i + 1] = f * r;
                    s = 1.0 / r;
                    c *= s;
                } else {
                    s = f / g;
                    r = s.hypot(1.0);
                    e[i + 1] = g * r;
                    c = 1.0 / r;
                    s *= c;
                }
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn small_legendre_rules() {
        let r = gauss_jacobi(0.0, 0.0, 1).unwrap();
        assert!(r.nodes[0].abs() < 1e-15);
        assert!((r.weights[0] - 2.0).abs() < 1e-14);

        let r = gauss_jacobi(0.0, 0.0, 2).unwrap();
        let x = 1.0 / 3f64.sqrt();
        assert!((r.nodes[0] + x).abs() < 1e-15 && (r.nodes[1] - x).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-14 && (r.weights[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn chebyshev_second_kind_moment() {
        // ∫ t² (1-t²)^{1/2} dt = π/8
        let r = gauss_jacobi(0.5, 0.5, 8).unwrap();
        assert!((r.integrate(|t| t * t) - PI / 8.0).abs() < 1e-14);
    }

    #[test]
    fn nodes_increase_and_weights_positive() {
        for &(a, b) in &[(0.0, 0.0), (0.5, -0.5), (2.0, 0.25), (-0.75, -0.5)] {
            for m in [1, 3, 10, 64, 120] {
                let r = gauss_jacobi(a, b, m).unwrap();
                assert_eq!(r.len(), m);
                assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
                assert!(r.nodes.iter().all(|t| t.abs() < 1.0));
                assert!(r.weights.iter().all(|&w| w > 0.0));
            }
        }
    }

    #[test]
    fn rejects_empty_rule() {
        assert!(gauss_jacobi(0.0, 0.0, 0).is_err());
        assert!(gauss_jacobi(-1.5, 0.0, 3).is_err());
    }
}
