//! Definite-parity solutions of ψ'' − (z²/4 + a)ψ = 0:
//!
//! y1(a, z) = e^{−z²/4} M(a/2 + 1/4, 1/2, z²/2)
//! y2(a, z) = e^{−z²/4} z M(a/2 + 3/4, 3/2, z²/2)
//!
//! with z-derivatives from the recurrences
//! y1' = (a + 1/2) y2(a+1, z) − (z/2) y1,  y2' = y1(a+1, z) − (z/2) y2.

use super::kummer::{kummer_scaled, ScaledKummer};
use super::SpecFunError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParityBasisEval {
    pub y1: f64,
    pub y2: f64,
    pub dy1: f64,
    pub dy2: f64,
}

/// e^{−z²/4}·M with the Gaussian folded into the exponent before rounding.
fn damped(m: &ScaledKummer, z: f64) -> f64 {
    m.mantissa
        * libm::exp(
            f64::from(m.exp2) * core::f64::consts::LN_2 + m.log_factor - 0.25 * z * z,
        )
}

/// (y1, dy1/dz) at (a, z).
pub fn even_solution(a: f64, z: f64) -> Result<(f64, f64), SpecFunError> {
    let w = 0.5 * z * z;
    let m = kummer_scaled(0.5 * a + 0.25, 0.5, w)?;
    let m_up = kummer_scaled(0.5 * a + 1.25, 1.5, w)?;
    let y1 = damped(&m, z);
    let y2_up = z * damped(&m_up, z);
    Ok((y1, (a + 0.5) * y2_up - 0.5 * z * y1))
}

/// (y2, dy2/dz) at (a, z).
pub fn odd_solution(a: f64, z: f64) -> Result<(f64, f64), SpecFunError> {
    let w = 0.5 * z * z;
    let m = kummer_scaled(0.5 * a + 0.75, 1.5, w)?;
    let m_up = kummer_scaled(0.5 * a + 0.75, 0.5, w)?;
    let y2 = z * damped(&m, z);
    let y1_up = damped(&m_up, z);
    Ok((y2, y1_up - 0.5 * z * y2))
}

pub fn parity_basis(a: f64, z: f64) -> Result<ParityBasisEval, SpecFunError> {
    let (y1, dy1) = even_solution(a, z)?;
    let (y2, dy2) = odd_solution(a, z)?;
    Ok(ParityBasisEval { y1, y2, dy1, dy2 })
}
