//! Double-double arithmetic (an unevaluated sum `hi + lo` of two doubles) for
//! the few places where a polynomial integral is much smaller than its terms.
//!
//! The φ̂ oracle sums `w_i p_ℓ(u_i)` whose result can be eight orders of
//! magnitude below the individual terms; nodes and weights accurate to a
//! double's last bit are then not enough, so they are polished by Newton's
//! method in this arithmetic.

use std::ops::{Add, Div, Mul, Neg, Sub};

use super::gauss::gauss_jacobi;
use super::jacobi::JacobiBasis;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    Dd {
        hi: s,
        lo: (a - (s - bb)) + (b - bb),
    }
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let x = Dd::from(self.hi.sqrt());
        // one Newton step doubles the number of correct digits
        x + (self - x * x) / (x + x)
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl From<f64> for Dd {
    fn from(hi: f64) -> Self {
        Dd { hi, lo: 0.0 }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.hi, o.hi);
        let t = two_sum(self.lo, o.lo);
        let s = quick_two_sum(s.hi, s.lo + t.hi);
        quick_two_sum(s.hi, s.lo + t.lo)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        quick_two_sum(p, e + (self.hi * o.lo + self.lo * o.hi))
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::from(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::from(q2);
        let q3 = r.hi / o.hi;
        quick_two_sum(q1, q2) + Dd::from(q3)
    }
}

/// Orthonormal Jacobi recurrence carried in double-double.
pub(crate) struct ExtendedJacobi {
    diag: Vec<Dd>,
    off: Vec<Dd>,
    p0: Dd,
}

impl ExtendedJacobi {
    /// Degrees `0..=max_degree`.
    pub fn new(alpha: f64, beta: f64, max_degree: usize) -> Result<Self> {
        let mass = JacobiBasis::new(alpha, beta, 0)?.weight_mass();
        let len = max_degree + 1;
        let (a, b) = (Dd::from(alpha), Dd::from(beta));
        let ab = a + b;
        let two = Dd::from(2.0);
        let four = Dd::from(4.0);
        let diag = (0..len)
            .map(|k| {
                if k == 0 {
                    (b - a) / (ab + two)
                } else {
                    let s = Dd::from(2.0 * k as f64) + ab;
                    (b * b - a * a) / (s * (s + two))
                }
            })
            .collect();
        let mut off = vec![Dd::ZERO; len + 1];
        for (k, o) in off.iter_mut().enumerate().skip(1) {
            let kf = Dd::from(k as f64);
            let bk = if k == 1 {
                four * (a + Dd::ONE) * (b + Dd::ONE) / ((two + ab) * (two + ab) * (Dd::from(3.0) + ab))
            } else {
                let s = Dd::from(2.0 * k as f64) + ab;
                four * kf * (kf + a) * (kf + b) * (kf + ab) / (s * s * (s + Dd::ONE) * (s - Dd::ONE))
            };
            *o = bk.sqrt();
        }
        Ok(Self {
            diag,
            off,
            p0: (Dd::ONE / Dd::from(mass)).sqrt(),
        })
    }

    pub fn max_degree(&self) -> usize {
        self.diag.len() - 1
    }

    /// `p_0(u), …, p_{out.len()-1}(u)`.
    pub fn eval_all(&self, u: Dd, out: &mut [Dd]) {
        let mut prev = Dd::ZERO;
        let mut cur = self.p0;
        for (k, o) in out.iter_mut().enumerate() {
            *o = cur;
            if k + 1 < self.diag.len() {
                let next = ((u - self.diag[k]) * cur - self.off[k] * prev) / self.off[k + 1];
                prev = cur;
                cur = next;
            }
        }
    }

    /// `(p_m(u), p_m'(u), Σ_{k<m} p_k(u)²)`.
    fn newton_terms(&self, m: usize, u: Dd) -> (Dd, Dd, Dd) {
        let (mut prev, mut cur) = (Dd::ZERO, self.p0);
        let (mut dprev, mut dcur) = (Dd::ZERO, Dd::ZERO);
        let mut squares = Dd::ZERO;
        for k in 0..m {
            squares = squares + cur * cur;
            let shifted = u - self.diag[k];
            let next = (shifted * cur - self.off[k] * prev) / self.off[k + 1];
            let dnext = (cur + shifted * dcur - self.off[k] * dprev) / self.off[k + 1];
            prev = cur;
            cur = next;
            dprev = dcur;
            dcur = dnext;
        }
        (cur, dcur, squares)
    }
}

/// The `m`-point Gauss–Jacobi rule with nodes and weights in double-double:
/// double-precision Golub–Welsch nodes polished by Newton's method on `p_m`,
/// weights from the Christoffel function `1 / Σ_{k<m} p_k(u)²`.
pub(crate) fn refined_gauss_jacobi(alpha: f64, beta: f64, m: usize) -> Result<Vec<(Dd, Dd)>> {
    let rough = gauss_jacobi(alpha, beta, m)?;
    let basis = ExtendedJacobi::new(alpha, beta, m)?;
    let mut rule = Vec::with_capacity(m);
    for &u0 in &rough.nodes {
        let mut u = Dd::from(u0);
        for _ in 0..3 {
            let (p, dp, _) = basis.newton_terms(m, u);
            if dp.hi == 0.0 {
                return Err(Error::Numeric(format!("vanishing derivative at Gauss node {u0}")));
            }
            u = u - p / dp;
        }
        let (_, _, squares) = basis.newton_terms(m, u);
        rule.push((u, Dd::ONE / squares));
    }
    Ok(rule)
}
