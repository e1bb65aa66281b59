//! Kummer's confluent hypergeometric function M(a, b, z) = ₁F₁(a; b; z).
//!
//! The series is summed with the term ratio
//! `t_{n+1} = t_n · (a+n)·z / ((b+n)(n+1))`, never through Γ. Every
//! evaluation first runs in compensated `f64`; when the largest partial sum
//! exceeds the final value by more than [`CANCELLATION_LIMIT`] the series is
//! re-summed in double-double arithmetic.
//!
//! Accumulators are rescaled by exact powers of two whenever they grow past
//! 2^512, so [`kummer_scaled`] and [`kummer_ratio`] never overflow. Plain
//! [`kummer_m`] refuses |z| > [`SERIES_Z_LIMIT`], where e^z starts to brush
//! against the top of the `f64` range.

use super::SpecFunError;
use crate::numeric::{DoubleDouble, NeumaierSum};

/// Largest |z| accepted by [`kummer_m`].
pub const SERIES_Z_LIMIT: f64 = 600.0;
/// Cancellation ratio that triggers the double-double re-summation.
pub const CANCELLATION_LIMIT: f64 = 1e6;
/// A scaled value whose cancellation ratio exceeds this is pure rounding noise.
const NOISE_CANCELLATION: f64 = 1e30;

const MAX_TERMS: u32 = 10_000;
const STOP_RATIO: f64 = 1e-16;
const RESCALE_EXP: i32 = 512;
const RESCALE_THRESHOLD: f64 = 1.340_780_792_994_259_7e154; // 2^512

/// Result of a Kummer-series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerEval {
    pub value: f64,
    /// Largest |partial sum| divided by |value|; ∞ when the value is zero.
    pub cancellation_estimate: f64,
    pub terms_used: u32,
    /// Whether the double-double path produced `value`.
    pub extended_precision: bool,
}

/// M(a, b, z) represented as `mantissa · 2^exp2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledKummer {
    pub mantissa: f64,
    pub exp2: i32,
    /// Natural-log factor still to be applied (from Kummer's transformation
    /// for z < 0); the full value is `mantissa · 2^exp2 · e^log_factor`.
    pub log_factor: f64,
    pub cancellation_estimate: f64,
    pub terms_used: u32,
    pub extended_precision: bool,
}

impl ScaledKummer {
    pub fn to_f64(&self) -> f64 {
        if self.log_factor == 0.0 {
            libm::scalbn(self.mantissa, self.exp2)
        } else {
            self.mantissa
                * libm::exp(self.log_factor + f64::from(self.exp2) * core::f64::consts::LN_2)
        }
    }

    /// ln|M|, finite whenever the mantissa is nonzero.
    pub fn ln_abs(&self) -> f64 {
        libm::log(self.mantissa.abs()) + f64::from(self.exp2) * core::f64::consts::LN_2 + self.log_factor
    }

    pub fn is_noise(&self) -> bool {
        self.mantissa == 0.0 || self.cancellation_estimate > NOISE_CANCELLATION
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == libm::floor(x)
}

fn check_args(a: f64, b: f64, z: f64) -> Result<(), SpecFunError> {
    if !(a.is_finite() && b.is_finite() && z.is_finite()) {
        return Err(SpecFunError::NonFinite);
    }
    if is_nonpositive_integer(b) {
        return Err(SpecFunError::InvalidB { b });
    }
    Ok(())
}

/// Once both Pochhammer arguments are positive and the term ratio has dropped
/// below one, it stays below one for every later n.
fn past_peak(a: f64, b: f64, z: f64, n: f64, ratio: f64) -> bool {
    a + n > 0.0 && b + n > 0.0 && ratio.abs() < 1.0 && (a > b || n + 1.0 > z)
}

struct RawSeries {
    mantissa: f64,
    exp2: i32,
    cancellation: f64,
    terms: u32,
}

fn cancellation(max_partial: f64, value: f64) -> f64 {
    if value == 0.0 {
        f64::INFINITY
    } else {
        (max_partial / value.abs()).max(1.0)
    }
}

fn series_f64(a: f64, b: f64, z: f64) -> Result<RawSeries, SpecFunError> {
    let mut term = 1.0_f64;
    let mut sum = NeumaierSum::new(1.0);
    let mut max_partial = 1.0_f64;
    let mut exp2 = 0_i32;
    let mut quiet = 0;
    for n in 0..MAX_TERMS {
        let nf = f64::from(n);
        let ratio = (a + nf) * z / ((b + nf) * (nf + 1.0));
        term *= ratio;
        sum.add(term);
        let partial = sum.value();
        max_partial = max_partial.max(partial.abs());
        if term == 0.0 {
            return Ok(RawSeries {
                mantissa: partial,
                exp2,
                cancellation: cancellation(max_partial, partial),
                terms: n + 1,
            });
        }
        if term.abs() > RESCALE_THRESHOLD || partial.abs() > RESCALE_THRESHOLD {
            term = libm::scalbn(term, -RESCALE_EXP);
            sum.scale_pow2(-RESCALE_EXP);
            max_partial = libm::scalbn(max_partial, -RESCALE_EXP);
            exp2 += RESCALE_EXP;
        }
        if term.abs() < STOP_RATIO * partial.abs() && past_peak(a, b, z, nf + 1.0, ratio) {
            quiet += 1;
            if quiet == 2 {
                let value = sum.value();
                return Ok(RawSeries {
                    mantissa: value,
                    exp2,
                    cancellation: cancellation(max_partial, value),
                    terms: n + 2,
                });
            }
        } else {
            quiet = 0;
        }
    }
    Err(SpecFunError::NoConvergence {
        a,
        b,
        z,
        terms: MAX_TERMS,
    })
}

fn series_dd(a: f64, b: f64, z: f64) -> Result<RawSeries, SpecFunError> {
    let mut term = DoubleDouble::ONE;
    let mut sum = DoubleDouble::ONE;
    let mut max_partial = 1.0_f64;
    let mut exp2 = 0_i32;
    let mut quiet = 0;
    for n in 0..MAX_TERMS {
        let nf = f64::from(n);
        let num = DoubleDouble::sum_of(a, nf) * z;
        let den = DoubleDouble::sum_of(b, nf) * (nf + 1.0);
        let ratio = num / den;
        term = term * ratio;
        sum = sum + term;
        let partial = sum.to_f64();
        max_partial = max_partial.max(partial.abs());
        if term.is_zero() {
            return Ok(RawSeries {
                mantissa: partial,
                exp2,
                cancellation: cancellation(max_partial, partial),
                terms: n + 1,
            });
        }
        if term.hi.abs() > RESCALE_THRESHOLD || partial.abs() > RESCALE_THRESHOLD {
            term = term.scale_pow2(-RESCALE_EXP);
            sum = sum.scale_pow2(-RESCALE_EXP);
            max_partial = libm::scalbn(max_partial, -RESCALE_EXP);
            exp2 += RESCALE_EXP;
        }
        if term.hi.abs() < STOP_RATIO * partial.abs()
            && past_peak(a, b, z, nf + 1.0, ratio.hi)
        {
            quiet += 1;
            if quiet == 2 {
                let value = sum.to_f64();
                return Ok(RawSeries {
                    mantissa: value,
                    exp2,
                    cancellation: cancellation(max_partial, value),
                    terms: n + 2,
                });
            }
        } else {
            quiet = 0;
        }
    }
    Err(SpecFunError::NoConvergence {
        a,
        b,
        z,
        terms: MAX_TERMS,
    })
}

/// M(a, b, z) as a scaled value, valid for any finite z.
pub fn kummer_scaled(a: f64, b: f64, z: f64) -> Result<ScaledKummer, SpecFunError> {
    check_args(a, b, z)?;
    // Kummer's transformation keeps the summed argument nonnegative:
    // M(a, b, z) = e^z · M(b − a, b, −z).
    let (sa, sz, log_factor) = if z < 0.0 { (b - a, -z, z) } else { (a, z, 0.0) };
    let mut raw = series_f64(sa, b, sz)?;
    let mut extended = false;
    if raw.cancellation > CANCELLATION_LIMIT {
        raw = series_dd(sa, b, sz)?;
        extended = true;
    }
    Ok(ScaledKummer {
        mantissa: raw.mantissa,
        exp2: raw.exp2,
        log_factor,
        cancellation_estimate: raw.cancellation,
        terms_used: raw.terms,
        extended_precision: extended,
    })
}

/// M(a, b, z) for |z| ≤ [`SERIES_Z_LIMIT`].
pub fn kummer_m(a: f64, b: f64, z: f64) -> Result<KummerEval, SpecFunError> {
    check_args(a, b, z)?;
    if z.abs() > SERIES_Z_LIMIT {
        return Err(SpecFunError::OverflowRegime { z });
    }
    let s = kummer_scaled(a, b, z)?;
    Ok(KummerEval {
        value: s.to_f64(),
        cancellation_estimate: s.cancellation_estimate,
        terms_used: s.terms_used,
        extended_precision: s.extended_precision,
    })
}

/// M(a1, b1, z) / M(a2, b2, z) without forming either factor in `f64`.
pub fn kummer_ratio(a1: f64, b1: f64, a2: f64, b2: f64, z: f64) -> Result<f64, SpecFunError> {
    let den = kummer_scaled(a2, b2, z)?;
    if den.is_noise() {
        return Err(SpecFunError::DenominatorZero { a: a2, b: b2, z });
    }
    let num = kummer_scaled(a1, b1, z)?;
    let q = num.mantissa / den.mantissa;
    let dlog = num.log_factor - den.log_factor;
    let r = libm::scalbn(q, num.exp2 - den.exp2);
    Ok(if dlog == 0.0 { r } else { r * libm::exp(dlog) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(x: f64, y: f64) -> f64 {
        ((x - y) / y).abs()
    }

    #[test]
    fn origin_is_one() {
        let m = kummer_m(0.37, 0.5, 0.0).unwrap();
        assert_eq!(m.value, 1.0);
        assert!(m.terms_used >= 1);
        assert!(m.cancellation_estimate >= 1.0);
    }

    #[test]
    fn equal_parameters_give_exponential() {
        let m = kummer_m(1.0, 1.0, 1.0).unwrap();
        assert!(rel(m.value, core::f64::consts::E) < 1e-15);
        let m = kummer_m(1.0, 1.0, -3.0).unwrap();
        assert!(rel(m.value, libm::exp(-3.0)) < 1e-14);
    }

    #[test]
    fn terminating_polynomial() {
        // H_2(x) = -2 M(-1, 1/2, x^2), i.e. M = 1 - 2x^2
        let m = kummer_m(-1.0, 0.5, 1.0).unwrap();
        assert_eq!(m.value, -1.0);
        assert_eq!(m.terms_used, 2);
    }

    #[test]
    fn invalid_b_rejected() {
        assert!(matches!(kummer_m(0.5, 0.0, 1.0), Err(SpecFunError::InvalidB { .. })));
        assert!(matches!(kummer_m(0.5, -2.0, 1.0), Err(SpecFunError::InvalidB { .. })));
        assert!(kummer_m(0.5, -2.5, 1.0).is_ok());
    }

    #[test]
    fn overflow_guard() {
        assert!(matches!(
            kummer_m(0.5, 1.5, 601.0),
            Err(SpecFunError::OverflowRegime { .. })
        ));
        assert!(kummer_m(0.5, 1.5, 600.0).unwrap().value.is_finite());
        // the scaled path still works far beyond the guard
        let s = kummer_scaled(1.0, 1.0, 2000.0).unwrap();
        assert!((s.ln_abs() - 2000.0).abs() < 1e-9);
    }

    #[test]
    fn near_integer_a_does_not_stop_early() {
        // The (a+3) factor makes terms 4, 5, ... tiny for a while before the
        // e^z growth takes over; stopping there would lose the tail.
        let a = -3.0 + 1e-9;
        let m = kummer_m(a, 0.5, 36.0).unwrap();
        let poly = kummer_m(-3.0, 0.5, 36.0).unwrap();
        assert!((m.value - poly.value).abs() > 1e-3);
    }

    #[test]
    fn heavy_cancellation_uses_extended_precision() {
        let m = kummer_m(-18.3, 0.5, 36.0).unwrap();
        assert!(m.extended_precision);
        assert!(m.cancellation_estimate > CANCELLATION_LIMIT);
    }

    #[test]
    fn ratio_of_identical_arguments_is_one() {
        assert_eq!(kummer_ratio(0.3, 1.5, 0.3, 1.5, 17.0).unwrap(), 1.0);
        assert_eq!(kummer_ratio(0.3, 1.5, -4.2, 0.5, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn ratio_reports_zero_denominator() {
        assert!(matches!(
            kummer_ratio(0.5, 0.5, -1.0, 0.5, 0.5),
            Err(SpecFunError::DenominatorZero { .. })
        ));
    }
}
