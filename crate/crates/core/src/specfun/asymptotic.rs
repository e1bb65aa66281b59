//! Leading-order asymptotic forms of M(a, b, z).

use core::f64::consts::PI;

use super::gamma::{gamma, ln_gamma_signed};
use super::SpecFunError;

/// Applicability thresholds for the asymptotic forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticLimits {
    /// The large-negative-a form needs a ≤ −min_neg_a.
    pub min_neg_a: f64,
    /// The large-z form needs z ≥ min_z.
    pub min_z: f64,
}

impl Default for AsymptoticLimits {
    fn default() -> Self {
        Self {
            min_neg_a: 10.0,
            min_z: 30.0,
        }
    }
}

/// Amplitude Γ(b)·e^{z/2}·(bz/2 − az)^{1/4 − b/2}·π^{−1/2} of the oscillatory
/// large-negative-a form.
pub fn neg_a_envelope(a: f64, b: f64, z: f64) -> Result<f64, SpecFunError> {
    let gb = gamma(b).ok_or(SpecFunError::InvalidB { b })?;
    let base = 0.5 * b * z - a * z;
    if base <= 0.0 {
        return Err(SpecFunError::Domain("b·z/2 − a·z must be positive"));
    }
    Ok(gb * libm::exp(0.5 * z) * libm::pow(base, 0.25 - 0.5 * b) / libm::sqrt(PI))
}

/// M(a, b, z) ≈ Γ(b)·e^{z/2}·(bz/2 − az)^{1/4−b/2}·π^{−1/2}·cos[√(2bz − 4az) + (1/4 − b/2)π]
/// for a → −∞ at fixed b and z > 0.
pub fn kummer_asymptotic_neg_a(
    a: f64,
    b: f64,
    z: f64,
    limits: &AsymptoticLimits,
) -> Result<f64, SpecFunError> {
    if a > -limits.min_neg_a {
        return Err(SpecFunError::Domain("a is not negative enough for the a → −∞ form"));
    }
    if z <= 0.0 {
        return Err(SpecFunError::Domain("the a → −∞ form needs z > 0"));
    }
    let envelope = neg_a_envelope(a, b, z)?;
    let phase = libm::sqrt(2.0 * b * z - 4.0 * a * z) + (0.25 - 0.5 * b) * PI;
    Ok(envelope * libm::cos(phase))
}

/// M(a, b, z) ≈ Γ(b)·e^z·z^{a−b} / Γ(a) for large positive z.
pub fn kummer_asymptotic_large_z(
    a: f64,
    b: f64,
    z: f64,
    limits: &AsymptoticLimits,
) -> Result<f64, SpecFunError> {
    if z < limits.min_z {
        return Err(SpecFunError::Domain("z is below the large-z threshold"));
    }
    let (lga, sa) = ln_gamma_signed(a).ok_or(SpecFunError::GammaPole { a })?;
    let (lgb, sb) = ln_gamma_signed(b).ok_or(SpecFunError::InvalidB { b })?;
    Ok(sb * sa * libm::exp(lgb - lga + z + (a - b) * libm::log(z)))
}
