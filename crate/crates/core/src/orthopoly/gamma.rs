use std::f64::consts::PI;

use crate::error::{Error, Result};

// Lanczos approximation with g = 607/128 and 14 terms.
const LANCZOS_G_SHIFT: f64 = 5.242_187_5;
const LANCZOS_SERIES_0: f64 = 0.999_999_999_999_997_1;
const LANCZOS_COEFFS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain(format!(
            "ln_gamma needs a positive finite argument, got {x}"
        )));
    }
    Ok(ln_gamma_positive(x))
}

pub(crate) fn ln_gamma_positive(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    if x < 0.5 {
        // Keep the series in its accurate range: Γ(x) = Γ(x+1)/x.
        return ln_gamma_positive(x + 1.0) - x.ln();
    }
    let tmp = x + LANCZOS_G_SHIFT;
    let tmp = (x + 0.5) * tmp.ln() - tmp;
    let mut ser = LANCZOS_SERIES_0;
    let mut y = x;
    for c in LANCZOS_COEFFS {
        y += 1.0;
        ser += c / y;
    }
    tmp + (SQRT_2PI * ser / x).ln()
}

/// `(ln |Γ(x)|, sign Γ(x))` for any real `x` that is not a non-positive integer.
///
/// Negative arguments go through the reflection identity
/// `Γ(x) Γ(1-x) = π / sin(πx)`.
pub fn ln_abs_gamma(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return Err(Error::domain(format!("ln_abs_gamma needs a finite argument, got {x}")));
    }
    if x > 0.0 {
        return Ok((ln_gamma_positive(x), 1.0));
    }
    if x == x.floor() {
        return Err(Error::domain(format!("gamma has a pole at {x}")));
    }
    let s = (PI * x).sin();
    let ln_abs = (PI / s.abs()).ln() - ln_gamma_positive(1.0 - x);
    // Γ is negative on (-1,0), (-3,-2), ...
    let sign = if (x.floor() as i64).rem_euclid(2) == 1 {
        -1.0
    } else {
        1.0
    };
    Ok((ln_abs, sign))
}
