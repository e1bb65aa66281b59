use core::f64::consts::PI;

// Lanczos coefficients for g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// sin(πx) with the argument reduced before multiplying by π.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * libm::round(0.5 * x);
    // r in [-1, 1]; fold onto [-1/2, 1/2] where sin(πr) is well conditioned
    let r = if r > 0.5 {
        1.0 - r
    } else if r < -0.5 {
        -1.0 - r
    } else {
        r
    };
    libm::sin(PI * r)
}

/// Returns `Some((ln|Γ(x)|, sign Γ(x)))`, or `None` at the poles
/// x ∈ {0, −1, −2, …}.
pub fn ln_gamma_signed(x: f64) -> Option<(f64, f64)> {
    if x <= 0.0 && x == libm::floor(x) {
        return None;
    }
    if x < 0.5 {
        // Γ(x)Γ(1−x) = π / sin(πx)
        let s = sin_pi(x);
        let (lg, _) = ln_gamma_signed(1.0 - x)?;
        let sign = if s < 0.0 { -1.0 } else { 1.0 };
        return Some((libm::log(PI / s.abs()) - lg, sign));
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    Some((HALF_LN_TWO_PI + (x + 0.5) * libm::log(t) - t + libm::log(acc), 1.0))
}

/// Γ(x); `None` at the poles.
pub fn gamma(x: f64) -> Option<f64> {
    ln_gamma_signed(x).map(|(lg, s)| s * libm::exp(lg))
}
