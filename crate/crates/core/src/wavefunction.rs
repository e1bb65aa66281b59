//! Piecewise bound-state eigenfunctions, with x measured in units of L.
//!
//! Inside the well ψ = norm·y(z_L·x), where y is the even or odd Kummer
//! solution with unit interior constant. Outside, ψ = ±norm·c·e^{−kL·|x|}
//! with c chosen so the two pieces agree at |x| = 1. The density is
//! normalized in x/L: multiply ψ by L^{−1/2} for physical units.

use alloc::vec::Vec;

use thiserror::Error;

use crate::model::{Parity, WellParameters};
use crate::numeric::{adaptive_simpson, QuadratureError};
use crate::specfun::{even_solution, odd_solution, SpecFunError};
use crate::spectrum::{brackets_root, exterior_ratio, BoundState, SpectrumError};

/// Interior quadrature tolerance used by [`normalize`].
pub const NORM_TOL: f64 = 1e-10;
/// Finite-difference step (in L) used by [`ode_residual`].
pub const FD_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum WavefunctionError {
    #[error("state at |a| = {a_abs} does not solve the quantization condition for these parameters")]
    StaleState { a_abs: f64 },
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenfunctionSpec {
    pub state: BoundState,
    pub params: WellParameters,
    pub norm: f64,
    pub inside_constant: f64,
    pub outside_constant: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavefunctionSample {
    pub x: f64,
    pub psi: f64,
    pub dpsi: f64,
}

/// The exterior amplitude c for an interior constant of one.
///
/// The state is rejected as stale when the quantization residual does not
/// change sign within a small window around its |a|.
pub fn match_constant(state: &BoundState, p: &WellParameters) -> Result<f64, WavefunctionError> {
    let delta = 1e-8 * state.a_abs.max(1.0);
    if !brackets_root(p, state.parity, state.a_abs, delta) {
        return Err(WavefunctionError::StaleState { a_abs: state.a_abs });
    }
    Ok(exterior_ratio(state.a(), p, state.parity)?)
}

impl EigenfunctionSpec {
    /// Matched but not yet normalized (norm = 1).
    pub fn new(state: BoundState, params: WellParameters) -> Result<Self, WavefunctionError> {
        let outside_constant = match_constant(&state, &params)?;
        Ok(Self {
            state,
            params,
            norm: 1.0,
            inside_constant: 1.0,
            outside_constant,
        })
    }

    /// Matched and normalized.
    pub fn normalized(state: BoundState, params: WellParameters) -> Result<Self, WavefunctionError> {
        normalize(Self::new(state, params)?)
    }

    fn kl(&self) -> f64 {
        self.state.kl
    }

    fn interior_raw(&self, x: f64) -> (f64, f64) {
        let z_l = self.params.z_l;
        let a = self.state.a();
        let solved = match self.state.parity {
            Parity::Even => even_solution(a, z_l * x),
            Parity::Odd => odd_solution(a, z_l * x),
        };
        // the series was already evaluated at the well edge, the largest
        // argument used, when the constant was matched
        let (y, dy) = solved.unwrap_or((f64::NAN, f64::NAN));
        (self.inside_constant * y, self.inside_constant * z_l * dy)
    }

    fn exterior_raw(&self, x: f64) -> (f64, f64) {
        let kl = self.kl();
        let side = if x < 0.0 { self.state.parity.sign() } else { 1.0 };
        let psi = side * self.outside_constant * libm::exp(-kl * x.abs());
        (psi, -kl * x.signum() * psi)
    }

    /// Interior formula at `x`, whether or not |x| < 1.
    pub fn evaluate_inside(&self, x: f64) -> WavefunctionSample {
        let (psi, dpsi) = self.interior_raw(x);
        WavefunctionSample {
            x,
            psi: self.norm * psi,
            dpsi: self.norm * dpsi,
        }
    }

    /// Exterior formula at `x`, whether or not |x| > 1.
    pub fn evaluate_outside(&self, x: f64) -> WavefunctionSample {
        let (psi, dpsi) = self.exterior_raw(x);
        WavefunctionSample {
            x,
            psi: self.norm * psi,
            dpsi: self.norm * dpsi,
        }
    }

    /// Probability outside |x| < L.
    pub fn exterior_probability(&self) -> f64 {
        let c = self.norm * self.outside_constant;
        c * c * libm::exp(-2.0 * self.kl()) / self.kl()
    }
}

/// ψ and dψ/dx at `x`; the edge |x| = L itself uses the interior form.
pub fn evaluate(spec: &EigenfunctionSpec, x: f64) -> WavefunctionSample {
    if x.abs() <= 1.0 {
        spec.evaluate_inside(x)
    } else {
        spec.evaluate_outside(x)
    }
}

/// `count` evenly spaced samples on [x_min, x_max].
pub fn sample(spec: &EigenfunctionSpec, x_min: f64, x_max: f64, count: usize) -> Vec<WavefunctionSample> {
    match count {
        0 => Vec::new(),
        1 => alloc::vec![evaluate(spec, x_min)],
        _ => {
            let step = (x_max - x_min) / (count - 1) as f64;
            (0..count)
                .map(|i| evaluate(spec, x_min + step * i as f64))
                .collect()
        }
    }
}

/// Rescales so that ∫|ψ|²dx = 1 with the interior tolerance [`NORM_TOL`].
pub fn normalize(spec: EigenfunctionSpec) -> Result<EigenfunctionSpec, WavefunctionError> {
    normalize_with(spec, NORM_TOL)
}

pub fn normalize_with(mut spec: EigenfunctionSpec, tol: f64) -> Result<EigenfunctionSpec, WavefunctionError> {
    spec.norm = 1.0;
    let interior = adaptive_simpson(
        |x| {
            let psi = spec.interior_raw(x).0;
            psi * psi
        },
        0.0,
        1.0,
        tol,
    )?;
    let total = 2.0 * interior + spec.exterior_probability();
    spec.norm = 1.0 / libm::sqrt(total);
    Ok(spec)
}

/// ψ'' + z_L²(ε − V/ħω)ψ at each sample, from centered second differences
/// (steps [`FD_STEP`] and twice that, extrapolated) of the formula of the
/// sample's own region, divided by |ψ''| + z_L²|ψ|.
pub fn ode_residual(spec: &EigenfunctionSpec, x_samples: &[f64]) -> Vec<f64> {
    let p = &spec.params;
    let z2 = p.z_l_squared();
    let h = FD_STEP;
    x_samples
        .iter()
        .map(|&x| {
            let inside = x.abs() < 1.0;
            let psi_at = |t: f64| {
                if inside {
                    spec.evaluate_inside(t).psi
                } else {
                    spec.evaluate_outside(t).psi
                }
            };
            let psi = psi_at(x);
            let second = |step: f64| (psi_at(x + step) - 2.0 * psi + psi_at(x - step)) / (step * step);
            // Richardson on steps h and 2h; the h² truncation term alone
            // exceeds 1e−6 of the local scale next to nodes of excited states
            let d2 = (4.0 * second(h) - second(2.0 * h)) / 3.0;
            // ε − V/ħω: |a| − z²/4 inside, −(T − |a|) outside
            let kinetic = if inside {
                spec.state.a_abs - 0.25 * z2 * x * x
            } else {
                spec.state.a_abs - p.threshold()
            };
            let residual = d2 + z2 * kinetic * psi;
            let scale = d2.abs() + z2 * psi.abs();
            if scale == 0.0 {
                0.0
            } else {
                residual / scale
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::solve_spectrum;
    use std::vec::Vec;

    fn states(r: f64, s: f64) -> (WellParameters, Vec<EigenfunctionSpec>) {
        let p = WellParameters::from_sqrt_omega_l(r, s).unwrap();
        let sp = solve_spectrum(&p).unwrap();
        let specs = sp
            .states
            .iter()
            .map(|st| EigenfunctionSpec::normalized(*st, p).unwrap())
            .collect();
        (p, specs)
    }

    #[test]
    fn boundary_values_at_origin() {
        let (_, specs) = states(1.0, 3.0);
        for s in &specs {
            let at0 = evaluate(s, 0.0);
            match s.state.parity {
                Parity::Even => {
                    assert!(at0.psi > 0.0);
                    assert_eq!(at0.dpsi, 0.0);
                }
                Parity::Odd => {
                    assert_eq!(at0.psi, 0.0);
                    assert!(at0.dpsi > 0.0);
                }
            }
        }
    }

    #[test]
    fn matching_at_edge() {
        let (_, specs) = states(2.0, 1.5);
        for s in &specs {
            let inside = s.evaluate_inside(1.0);
            let outside = s.evaluate_outside(1.0);
            assert!((inside.psi - outside.psi).abs() <= 1e-10 * inside.psi.abs().max(1.0));
            assert!((inside.dpsi - outside.dpsi).abs() <= 1e-8 * inside.dpsi.abs().max(1.0));
        }
    }

    #[test]
    fn ground_state_match_constant() {
        let (_, specs) = states(2.0, 1.5);
        let c = specs[0].outside_constant;
        assert!((c - 4.689259355446852).abs() < 1e-12, "c = {c}");
    }

    #[test]
    fn stale_state_rejected() {
        let p = WellParameters::from_sqrt_omega_l(2.0, 1.5).unwrap();
        let sp = solve_spectrum(&p).unwrap();
        let other = WellParameters::from_sqrt_omega_l(2.0, 1.6).unwrap();
        assert!(matches!(
            EigenfunctionSpec::new(sp.states[0], other),
            Err(WavefunctionError::StaleState { .. })
        ));
    }

    #[test]
    fn normalization_and_exterior() {
        let (_, specs) = states(0.5, 1.5);
        let s = &specs[0];
        let probability = 2.0 * adaptive_simpson(|x| evaluate(s, x).psi.powi(2), 0.0, 1.0, 1e-12).unwrap()
            + s.exterior_probability();
        assert!((probability - 1.0).abs() < 1e-9);
        let finer = normalize_with(*s, NORM_TOL / 2.0).unwrap();
        assert!(((finer.norm - s.norm) / s.norm).abs() < 1e-8);
        let (a, b) = (evaluate(s, 1.3).psi, evaluate(s, 2.1).psi);
        let expected = libm::exp(-s.state.kl * 0.8);
        assert!((b / a - expected).abs() < 1e-10 * expected);
    }

    #[test]
    fn residual_small_away_from_edge() {
        let (_, specs) = states(2.0, 1.5);
        let xs: Vec<f64> = (1..50).map(|i| i as f64 / 50.0 * 0.99).chain((1..20).map(|i| 1.01 + i as f64 * 0.1)).collect();
        for s in &specs {
            let worst = ode_residual(s, &xs).iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            assert!(worst < 1e-6, "worst {worst}");
        }
    }

    #[test]
    fn sampling_spans_range() {
        let (_, specs) = states(2.0, 1.5);
        let pts = sample(&specs[0], -3.0, 3.0, 7);
        assert_eq!(pts.len(), 7);
        assert_eq!(pts[0].x, -3.0);
        assert_eq!(pts[6].x, 3.0);
        assert_eq!(pts[0].psi, pts[6].psi);
        assert!(sample(&specs[0], 0.0, 1.0, 0).is_empty());
    }
}
