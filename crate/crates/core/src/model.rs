//! The truncated harmonic well and its dimensionless reduction.
//!
//! Units: ħ = m = L = 1, so α = z_L and ω = z_L²/2. Energies are reported in
//! units of ħω and positions in units of L. Inside the well the potential is
//! V/ħω = z²/4 − r·z_L²/4 with z = z_L·x; outside it vanishes. At |x| = L the
//! outside value 0 is returned.
//!
//! The dimensionless energy offset `a = (V(0) − E)/ħω` is negative for bound
//! states; functions that take `a` use that signed convention, while
//! results meant for presentation carry `a_abs = |a|`.

use core::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ModelError {
    #[error("z_L must be positive and finite, got {0}")]
    InvalidWidth(f64),
    #[error("r must be finite, got {0}")]
    InvalidShape(f64),
    #[error("physical scales must all be positive and finite")]
    InvalidScales,
    #[error("a = {a} lies outside the bound-state window (−{threshold}, 0)")]
    OutsideBoundWindow { a: f64, threshold: f64 },
}

/// Mass, frequency, half-width and ħ in any consistent unit system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalScales {
    pub mass: f64,
    pub omega: f64,
    pub half_width: f64,
    pub hbar: f64,
}

impl PhysicalScales {
    /// α = √(2mω/ħ).
    pub fn alpha(&self) -> f64 {
        libm::sqrt(2.0 * self.mass * self.omega / self.hbar)
    }

    /// V(0) = −½ m ω² r L², in the units of ħω the scales imply.
    pub fn well_depth(&self, r: f64) -> f64 {
        -0.5 * self.mass * self.omega * self.omega * r * self.half_width * self.half_width
    }
}

/// The two dimensionless parameters that fix the spectrum, plus optional
/// physical scales they were derived from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellParameters {
    /// V(0) / [V(0) − V(L)].
    pub r: f64,
    /// α·L.
    pub z_l: f64,
    pub physical: Option<PhysicalScales>,
}

impl WellParameters {
    pub fn new(r: f64, z_l: f64) -> Result<Self, ModelError> {
        if !r.is_finite() {
            return Err(ModelError::InvalidShape(r));
        }
        if !(z_l.is_finite() && z_l > 0.0) {
            return Err(ModelError::InvalidWidth(z_l));
        }
        Ok(Self {
            r,
            z_l,
            physical: None,
        })
    }

    /// Width given as √ω·L in units of √(ħ/m): z_L = √2·√ω·L.
    pub fn from_sqrt_omega_l(r: f64, sqrt_omega_l: f64) -> Result<Self, ModelError> {
        Self::new(r, core::f64::consts::SQRT_2 * sqrt_omega_l)
    }

    pub fn from_physical(r: f64, scales: PhysicalScales) -> Result<Self, ModelError> {
        let PhysicalScales {
            mass,
            omega,
            half_width,
            hbar,
        } = scales;
        if ![mass, omega, half_width, hbar]
            .iter()
            .all(|v| v.is_finite() && *v > 0.0)
        {
            return Err(ModelError::InvalidScales);
        }
        let mut p = Self::new(r, scales.alpha() * half_width)?;
        p.physical = Some(scales);
        Ok(p)
    }

    pub fn z_l_squared(&self) -> f64 {
        self.z_l * self.z_l
    }

    /// √ω·L in units of √(ħ/m).
    pub fn sqrt_omega_l(&self) -> f64 {
        self.z_l / core::f64::consts::SQRT_2
    }

    /// r·z_L²/4 = |V(0)|/ħω, the largest |a| a bound state can have.
    pub fn threshold(&self) -> f64 {
        0.25 * self.r * self.z_l * self.z_l
    }

    /// V(0)/ħω.
    pub fn bottom(&self) -> f64 {
        -self.threshold()
    }

    /// Whether the open window −r·z_L²/4 < a < 0 is nonempty.
    pub fn admits_bound_states(&self) -> bool {
        self.r > 0.0
    }
}

/// A bound-state energy in both dimensionless forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyValue {
    /// (V(0) − E)/ħω, negative for bound states.
    pub a: f64,
    /// E/ħω.
    pub e_over_hw: f64,
}

/// V(x)/ħω with x in units of L.
pub fn potential_value(x: f64, p: &WellParameters) -> f64 {
    if x.abs() < 1.0 {
        let z = p.z_l * x;
        0.25 * z * z - p.threshold()
    } else {
        0.0
    }
}

/// V(x)/ħω with the discontinuity at |x| = L replaced by the mean of the
/// two one-sided limits.
pub fn potential_value_midpoint(x: f64, p: &WellParameters) -> f64 {
    if x.abs() == 1.0 {
        0.5 * (0.25 * p.z_l_squared() - p.threshold())
    } else {
        potential_value(x, p)
    }
}

/// k·L = z_L²·√(r/4 + a/z_L²), written as z_L·√(r·z_L²/4 − |a|) so the
/// radicand keeps its digits near the threshold.
pub fn decay_constant(a: f64, p: &WellParameters) -> Result<f64, ModelError> {
    let threshold = p.threshold();
    let radicand = threshold + a;
    if !(a <= 0.0 && radicand >= 0.0) {
        return Err(ModelError::OutsideBoundWindow { a, threshold });
    }
    Ok(p.z_l * libm::sqrt(radicand))
}

/// E/ħω = V(0)/ħω + |a|.
pub fn energy_from_a(a: f64, p: &WellParameters) -> EnergyValue {
    EnergyValue {
        a,
        e_over_hw: -(p.threshold() + a),
    }
}

/// Inverse of [`energy_from_a`].
pub fn a_from_energy(e_over_hw: f64, p: &WellParameters) -> f64 {
    -(p.threshold() + e_over_hw)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn well(r: f64, z_l2: f64) -> WellParameters {
        WellParameters::new(r, libm::sqrt(z_l2)).unwrap()
    }

    #[test]
    fn potential_profile() {
        let p = well(2.0, 4.5);
        assert!((potential_value(0.0, &p) + 2.25).abs() < 1e-14);
        assert_eq!(potential_value(2.0, &p), 0.0);
        assert_eq!(potential_value(-2.0, &p), 0.0);
        assert_eq!(potential_value(1.0, &p), 0.0);
        let touch = well(1.0, 4.5);
        assert!(potential_value(1.0 - 1e-12, &touch).abs() < 1e-11);
    }

    #[test]
    fn jump_at_edge() {
        for &r in &[0.5, 1.0, 2.0, 7.0] {
            let p = well(r, 4.5);
            let inside = potential_value(1.0 - 1e-15, &p);
            let jump = (inside - potential_value(1.0, &p)).abs();
            assert!((jump - ((r - 1.0) * 4.5 / 4.0).abs()).abs() < 1e-12, "r = {r}");
        }
    }

    #[test]
    fn decay_constant_examples() {
        let p = well(2.0, 4.5);
        assert_eq!(decay_constant(-p.threshold(), &p).unwrap(), 0.0);
        let near_top = decay_constant(-1e-15, &p).unwrap();
        assert!((near_top - 4.5 * libm::sqrt(2.0) / 2.0).abs() < 1e-12);
        // 4.5·√(0.5 − 0.520/4.5) = 2.79023...
        let kl = decay_constant(-0.520, &p).unwrap();
        assert!((kl - 4.5 * libm::sqrt(0.5 - 0.520 / 4.5)).abs() < 1e-14);
        assert!((kl - 2.7902).abs() < 1e-4);
        assert!(decay_constant(-3.0, &p).is_err());
        assert!(decay_constant(0.1, &p).is_err());
    }

    #[test]
    fn energy_examples() {
        let p = well(2.0, 4.5);
        let e = energy_from_a(-0.520, &p);
        assert!((e.e_over_hw + 1.730).abs() < 1e-12);
        assert!((energy_from_a(0.0, &p).e_over_hw + 2.25).abs() < 1e-14);
        assert_eq!(energy_from_a(-p.threshold(), &p).e_over_hw, 0.0);
    }

    #[test]
    fn width_conversions() {
        let p = WellParameters::from_sqrt_omega_l(2.0, 1.5).unwrap();
        assert!((p.z_l_squared() - 4.5).abs() < 1e-14);
        let scales = PhysicalScales {
            mass: 3.0,
            omega: 0.7,
            half_width: 1.9,
            hbar: 1.3,
        };
        let q = WellParameters::from_physical(1.0, scales).unwrap();
        let expect = core::f64::consts::SQRT_2 * libm::sqrt(0.7) * 1.9 / libm::sqrt(1.3 / 3.0);
        assert!(((q.z_l - expect) / expect).abs() < 1e-12);
        // physical depth over ħω equals −r z_L²/4
        let depth = scales.well_depth(1.0) / (scales.hbar * scales.omega);
        assert!(((depth - q.bottom()) / depth).abs() < 1e-12);
    }

    #[test]
    fn invalid_parameters() {
        assert!(WellParameters::new(1.0, 0.0).is_err());
        assert!(WellParameters::new(1.0, -1.0).is_err());
        assert!(WellParameters::new(f64::NAN, 1.0).is_err());
        assert!(!WellParameters::new(-1.0, 1.0).unwrap().admits_bound_states());
    }
}
