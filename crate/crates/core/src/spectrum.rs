//! The quantization condition f = g and the bound-state spectrum.
//!
//! Matching the interior solution to e^{−kx} at x = L gives, per parity,
//!
//! ```text
//! even: f = 1/2 − (a + 1/2)·M(a/2+5/4, 3/2, z_L²/2) / M(a/2+1/4, 1/2, z_L²/2)
//! odd:  f = 1/2 − (1/z_L²)·M(a/2+3/4, 1/2, z_L²/2) / M(a/2+3/4, 3/2, z_L²/2)
//! g = √(r/4 + a/z_L²) = kL / z_L²
//! ```
//!
//! f has vertical asymptotes at the zeros of its denominator. Roots are
//! bracketed on the cleared form `denominator · (f − g)`, which is continuous
//! through those asymptotes: for wide wells a level sits within 1e−15 of a
//! pole, far inside any exclusion zone a scan of f − g itself would need.

use alloc::vec::Vec;

use thiserror::Error;

use crate::model::{self, ModelError, Parity, WellParameters};
use crate::numeric::{bisect_sign, brent, RootError};
use crate::specfun::{self, kummer_ratio, kummer_scaled, ScaledKummer, SpecFunError};

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SpectrumError {
    #[error("no bound states for r ≤ 0 (r = {r})")]
    NoBoundStates { r: f64 },
    #[error("f has a pole at |a| = {a_abs}")]
    AtPole { a_abs: f64 },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Knobs of the root search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Absolute resolution in |a| passed to Brent (which adds 2ε|a| itself).
    pub root_tol: f64,
    /// Bisection resolution for the poles of f.
    pub pole_tol: f64,
    /// Roots closer than `endpoint_zone · r·z_L²/4` to either end of the
    /// bound window are rejected as boundary-grazing.
    pub endpoint_zone: f64,
    /// Residual |f − g| above which a state is flagged.
    pub residual_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            root_tol: 1e-15,
            pole_tol: 1e-12,
            endpoint_zone: 1e-9,
            residual_tol: 1e-8,
        }
    }
}

/// Something the solver noticed but did not treat as fatal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Diagnostic {
    /// A root within the endpoint zone was dropped.
    BoundaryGrazing { parity: Parity, a_abs: f64 },
    /// More than one root between two consecutive poles of f.
    MultipleRootsInBranch { parity: Parity, branch: usize },
    /// Parities do not alternate starting from an even ground state.
    ParityAlternation { index: usize },
    /// |f − g| above the configured tolerance; happens on branches so steep
    /// that adjacent doubles straddle the root.
    LargeResidual { index: usize, residual: f64 },
    /// No level below the threshold. The well binds nothing when its mean
    /// potential is repulsive enough, e.g. r < 1/3 as z_L → 0.
    Unbound,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    pub index: usize,
    pub parity: Parity,
    pub a_abs: f64,
    pub e_over_hw: f64,
    pub kl: f64,
    /// c / c_parity: exterior amplitude for an interior constant of one.
    pub match_ratio: f64,
    /// |f − g| at the returned root (∞ if f is evaluated exactly on a pole).
    pub residual: f64,
}

impl BoundState {
    /// The signed offset a = −|a|.
    pub fn a(&self) -> f64 {
        -self.a_abs
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub params: WellParameters,
    pub states: Vec<BoundState>,
    pub diagnostics: Vec<Diagnostic>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn ground(&self) -> Option<&BoundState> {
        self.states.first()
    }

    pub fn get(&self, index: usize) -> Option<&BoundState> {
        self.states.get(index)
    }

    pub fn a_abs(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.a_abs).collect()
    }
}

/// Kummer parameters (a, b) of the numerator and denominator of f.
fn f_parts(a: f64, parity: Parity) -> ((f64, f64), (f64, f64)) {
    match parity {
        Parity::Even => ((0.5 * a + 1.25, 1.5), (0.5 * a + 0.25, 0.5)),
        Parity::Odd => ((0.5 * a + 0.75, 0.5), (0.5 * a + 0.75, 1.5)),
    }
}

/// The left-hand side f of the quantization condition.
pub fn f_parity(a: f64, z_l: f64, parity: Parity) -> Result<f64, SpectrumError> {
    let w = 0.5 * z_l * z_l;
    let ((na, nb), (da, db)) = f_parts(a, parity);
    let ratio = kummer_ratio(na, nb, da, db, w).map_err(|e| match e {
        SpecFunError::DenominatorZero { .. } => SpectrumError::AtPole { a_abs: -a },
        other => SpectrumError::SpecFun(other),
    })?;
    Ok(match parity {
        Parity::Even => 0.5 - (a + 0.5) * ratio,
        Parity::Odd => 0.5 - ratio / (z_l * z_l),
    })
}

/// The right-hand side g = √(r/4 + a/z_L²).
pub fn g_func(a: f64, p: &WellParameters) -> Result<f64, SpectrumError> {
    Ok(model::decay_constant(a, p)? / p.z_l_squared())
}

/// `scaled.value · e^{−shift}` without forming the unscaled value.
fn shifted(m: &ScaledKummer, shift: f64) -> f64 {
    m.mantissa * libm::exp(f64::from(m.exp2) * core::f64::consts::LN_2 + m.log_factor - shift)
}

/// e^{−z_L²/2} · denominator · (f − g) at a = −a_abs: continuous in a_abs,
/// zero exactly at the levels, with the sign of f − g away from poles.
pub fn cleared_residual(a_abs: f64, p: &WellParameters, parity: Parity) -> Result<f64, SpectrumError> {
    let a = -a_abs;
    let w = 0.5 * p.z_l_squared();
    let g = g_func(a, p)?;
    let ((na, nb), (da, db)) = f_parts(a, parity);
    let num = shifted(&kummer_scaled(na, nb, w)?, w);
    let den = shifted(&kummer_scaled(da, db, w)?, w);
    Ok(match parity {
        Parity::Even => (0.5 - g) * den - (a + 0.5) * num,
        Parity::Odd => (0.5 - g) * den - num / p.z_l_squared(),
    })
}

fn denominator_sign_fn(p: &WellParameters, parity: Parity) -> impl Fn(f64) -> f64 + '_ {
    let w = 0.5 * p.z_l_squared();
    move |a_abs: f64| {
        let (_, (da, db)) = f_parts(-a_abs, parity);
        kummer_scaled(da, db, w).map(|m| m.mantissa).unwrap_or(f64::NAN)
    }
}

fn scan_step(len: f64) -> f64 {
    (0.01_f64).min(len / 50.0)
}

fn require_bound(p: &WellParameters) -> Result<(), SpectrumError> {
    if !p.admits_bound_states() {
        return Err(SpectrumError::NoBoundStates { r: p.r });
    }
    Ok(())
}

/// Poles of f (zeros of its denominator) inside the bound window, as
/// ascending |a| values.
pub fn find_branch_poles(p: &WellParameters, parity: Parity) -> Result<Vec<f64>, SpectrumError> {
    find_branch_poles_with(p, parity, &SolverConfig::default())
}

pub fn find_branch_poles_with(
    p: &WellParameters,
    parity: Parity,
    cfg: &SolverConfig,
) -> Result<Vec<f64>, SpectrumError> {
    require_bound(p)?;
    let top = p.threshold();
    let den = denominator_sign_fn(p, parity);
    let step = scan_step(top);
    let mut poles = Vec::new();
    let mut lo = 0.0;
    let mut f_lo = den(lo);
    let mut i = 1u64;
    while lo < top {
        let hi = (i as f64 * step).min(top);
        let f_hi = den(hi);
        if f_lo.is_nan() || f_hi.is_nan() {
            return Err(SpectrumError::SpecFun(SpecFunError::NoConvergence {
                a: -hi,
                b: 0.0,
                z: 0.5 * p.z_l_squared(),
                terms: 0,
            }));
        }
        if (f_lo > 0.0) != (f_hi > 0.0) && f_lo != 0.0 {
            poles.push(bisect_sign(&den, lo, hi, cfg.pole_tol)?);
        }
        lo = hi;
        f_lo = f_hi;
        i += 1;
    }
    Ok(poles)
}

/// Sign changes of the cleared residual on [0, top]. Each pole-free span is
/// scanned from its left end with a step that starts at min(0.01, span/50)
/// and widens geometrically up to min(0.1, span/20).
fn bracket_roots(
    p: &WellParameters,
    parity: Parity,
    poles: &[f64],
) -> Result<Vec<(f64, f64, f64, f64)>, SpectrumError> {
    let top = p.threshold();
    let h = |x: f64| cleared_residual(x, p, parity);
    let mut edges = Vec::with_capacity(poles.len() + 2);
    edges.push(0.0);
    edges.extend(poles.iter().copied().filter(|&x| x > 0.0 && x < top));
    edges.push(top);

    let mut brackets = Vec::new();
    let mut x = 0.0;
    let mut hx = h(x)?;
    for window in edges.windows(2) {
        let (lo, hi) = (window[0], window[1]);
        let len = hi - lo;
        if len <= 0.0 {
            continue;
        }
        let base = scan_step(len);
        let max_step = (0.1_f64).min(len / 20.0).max(base);
        let mut step = base;
        while x < hi {
            let next = (x + step).min(hi);
            let hn = h(next)?;
            if hx == 0.0 || (hx > 0.0) != (hn > 0.0) {
                brackets.push((x, next, hx, hn));
            }
            step = (step * 1.5).min(max_step);
            x = next;
            hx = hn;
        }
    }
    // a zero exactly on a scan node was pushed by both adjacent cells
    brackets.dedup_by(|b, a| a.1 == b.0 && a.3 == 0.0);
    Ok(brackets)
}

fn interior_value(a: f64, z_l: f64, parity: Parity) -> Result<f64, SpecFunError> {
    Ok(match parity {
        Parity::Even => specfun::even_solution(a, z_l)?.0,
        Parity::Odd => specfun::odd_solution(a, z_l)?.0,
    })
}

/// c / c_parity for a state at `a`: e^{kL} times the interior solution at z_L.
pub(crate) fn exterior_ratio(a: f64, p: &WellParameters, parity: Parity) -> Result<f64, SpectrumError> {
    let kl = model::decay_constant(a, p)?;
    let inner = interior_value(a, p.z_l, parity)?;
    Ok(inner * libm::exp(kl))
}

fn branch_of(a_abs: f64, poles: &[f64]) -> usize {
    poles.iter().take_while(|&&x| x < a_abs).count()
}

/// All bound states for `p`, ascending in |a|.
pub fn solve_spectrum(p: &WellParameters) -> Result<Spectrum, SpectrumError> {
    solve_spectrum_with(p, &SolverConfig::default())
}

pub fn solve_spectrum_with(p: &WellParameters, cfg: &SolverConfig) -> Result<Spectrum, SpectrumError> {
    require_bound(p)?;
    let top = p.threshold();
    let zone = cfg.endpoint_zone * top;
    let mut diagnostics = Vec::new();
    let mut found: Vec<(f64, Parity)> = Vec::new();

    for parity in [Parity::Even, Parity::Odd] {
        let poles = find_branch_poles_with(p, parity, cfg)?;
        let mut per_branch: Vec<usize> = Vec::new();
        for (lo, hi, h_lo, h_hi) in bracket_roots(p, parity, &poles)? {
            let h = |x: f64| cleared_residual(x, p, parity).unwrap_or(f64::NAN);
            let root = brent(h, lo, hi, h_lo, h_hi, cfg.root_tol)?;
            if root <= zone || root >= top - zone {
                diagnostics.push(Diagnostic::BoundaryGrazing {
                    parity,
                    a_abs: root,
                });
                continue;
            }
            let branch = branch_of(root, &poles);
            if per_branch.contains(&branch) {
                diagnostics.push(Diagnostic::MultipleRootsInBranch { parity, branch });
            }
            per_branch.push(branch);
            found.push((root, parity));
        }
    }
    if found.is_empty() {
        diagnostics.push(Diagnostic::Unbound);
    }
    found.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut states = Vec::with_capacity(found.len());
    for (index, &(a_abs, parity)) in found.iter().enumerate() {
        let a = -a_abs;
        let expected = if index % 2 == 0 { Parity::Even } else { Parity::Odd };
        if parity != expected {
            diagnostics.push(Diagnostic::ParityAlternation { index });
        }
        let g = g_func(a, p)?;
        let residual = match f_parity(a, p.z_l, parity) {
            Ok(f) => (f - g).abs(),
            Err(SpectrumError::AtPole { .. }) => f64::INFINITY,
            Err(e) => return Err(e),
        };
        if residual > cfg.residual_tol {
            diagnostics.push(Diagnostic::LargeResidual { index, residual });
        }
        states.push(BoundState {
            index,
            parity,
            a_abs,
            e_over_hw: model::energy_from_a(a, p).e_over_hw,
            kl: g * p.z_l_squared(),
            match_ratio: exterior_ratio(a, p, parity)?,
            residual,
        });
    }
    Ok(Spectrum {
        params: *p,
        states,
        diagnostics,
    })
}

/// Whether the cleared residual changes sign within ±delta of `a_abs`.
pub fn brackets_root(p: &WellParameters, parity: Parity, a_abs: f64, delta: f64) -> bool {
    let top = p.threshold();
    let lo = (a_abs - delta).max(0.0);
    let hi = (a_abs + delta).min(top);
    match (cleared_residual(lo, p, parity), cleared_residual(hi, p, parity)) {
        (Ok(l), Ok(h)) => l == 0.0 || h == 0.0 || (l > 0.0) != (h > 0.0),
        _ => false,
    }
}

/// One grid point of a level sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub z_l: f64,
    pub threshold: f64,
    pub levels: Vec<f64>,
    pub parities: Vec<Parity>,
}

impl SweepRow {
    pub fn sqrt_omega_l(&self) -> f64 {
        self.z_l / core::f64::consts::SQRT_2
    }
}

/// z_L grid points used by [`sweep_levels`].
pub fn sweep_grid(z_min: f64, z_max: f64, steps: usize) -> Vec<f64> {
    let n = steps.max(2);
    (0..n)
        .map(|i| {
            if i + 1 == n {
                z_max
            } else {
                z_min + (z_max - z_min) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

pub fn sweep_row(r: f64, z_l: f64) -> Result<SweepRow, SpectrumError> {
    sweep_row_with(r, z_l, &SolverConfig::default())
}

pub fn sweep_row_with(r: f64, z_l: f64, cfg: &SolverConfig) -> Result<SweepRow, SpectrumError> {
    let p = WellParameters::new(r, z_l)?;
    let s = solve_spectrum_with(&p, cfg)?;
    Ok(SweepRow {
        z_l,
        threshold: p.threshold(),
        levels: s.a_abs(),
        parities: s.states.iter().map(|st| st.parity).collect(),
    })
}

/// Spectra along a linear grid of `steps ≥ 2` widths z_L ∈ [z_min, z_max].
pub fn sweep_levels(r: f64, z_min: f64, z_max: f64, steps: usize) -> Result<Vec<SweepRow>, SpectrumError> {
    sweep_grid(z_min, z_max, steps)
        .into_iter()
        .map(|z| sweep_row(r, z))
        .collect()
}

/// A sample of f and g for plotting; `None` marks a pole neighbourhood.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantizationSample {
    pub a_abs: f64,
    pub f_even: Option<f64>,
    pub f_odd: Option<f64>,
    pub g: f64,
}

/// `count` evenly spaced samples of f and g over [0, r·z_L²/4]. Samples
/// within one grid spacing of a pole of f are blanked so that plotted
/// branches break at the asymptotes.
pub fn quantization_samples(p: &WellParameters, count: usize) -> Result<Vec<QuantizationSample>, SpectrumError> {
    require_bound(p)?;
    let top = p.threshold();
    let n = count.max(2);
    let spacing = top / (n - 1) as f64;
    let even_poles = find_branch_poles(p, Parity::Even)?;
    let odd_poles = find_branch_poles(p, Parity::Odd)?;
    let near = |x: f64, poles: &[f64]| poles.iter().any(|&q| (x - q).abs() < spacing);
    let eval = |x: f64, parity: Parity, poles: &[f64]| -> Result<Option<f64>, SpectrumError> {
        if near(x, poles) {
            return Ok(None);
        }
        match f_parity(-x, p.z_l, parity) {
            Ok(v) => Ok(Some(v)),
            Err(SpectrumError::AtPole { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    };
    (0..n)
        .map(|i| {
            let x = if i + 1 == n { top } else { i as f64 * spacing };
            Ok(QuantizationSample {
                a_abs: x,
                f_even: eval(x, Parity::Even, &even_poles)?,
                f_odd: eval(x, Parity::Odd, &odd_poles)?,
                g: g_func(-x, p)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn well(r: f64, z_l2: f64) -> WellParameters {
        WellParameters::new(r, libm::sqrt(z_l2)).unwrap()
    }

    #[test]
    fn f_small_width_limits() {
        let f_even = f_parity(-0.3, 1e-4, Parity::Even).unwrap();
        assert!((f_even - 0.3).abs() < 1e-6);
        let f_odd = f_parity(-0.3, 1e-4, Parity::Odd).unwrap();
        assert!(((f_odd - (0.5 - 1e8)) / 1e8).abs() < 1e-6);
    }

    #[test]
    fn f_large_width_plateau() {
        let z_l = libm::sqrt(72.0);
        let v = f_parity(-0.9, z_l, Parity::Even).unwrap();
        assert!((v + 0.5).abs() < 0.05, "f = {v}");
        let v = f_parity(-0.9, z_l, Parity::Odd).unwrap();
        assert!((v + 0.5).abs() < 0.05, "f = {v}");
    }

    #[test]
    fn g_examples() {
        let p = well(2.0, 4.5);
        assert!((g_func(0.0, &p).unwrap() - libm::sqrt(2.0) / 2.0).abs() < 1e-15);
        assert_eq!(g_func(-p.threshold(), &p).unwrap(), 0.0);
        // √(0.5 − 0.520/4.5) = 0.62004
        assert!((g_func(-0.520, &p).unwrap() - 0.620_04).abs() < 1e-5);
        assert!(g_func(-3.0, &p).is_err());
    }

    #[test]
    fn degenerate_parameters_are_errors() {
        let p = WellParameters::new(-1.0, 1.0).unwrap();
        assert!(matches!(solve_spectrum(&p), Err(SpectrumError::NoBoundStates { .. })));
        let p = WellParameters::new(0.0, 1.0).unwrap();
        assert!(matches!(solve_spectrum(&p), Err(SpectrumError::NoBoundStates { .. })));
    }

    #[test]
    fn tiny_width_has_no_poles() {
        let p = WellParameters::new(1.0, 1e-3).unwrap();
        assert!(find_branch_poles(&p, Parity::Even).unwrap().is_empty());
        assert!(find_branch_poles(&p, Parity::Odd).unwrap().is_empty());
    }

    #[test]
    fn cleared_residual_tracks_f_minus_g_sign() {
        let p = well(2.0, 4.5);
        let poles = find_branch_poles(&p, Parity::Even).unwrap();
        for i in 1..40 {
            let x = p.threshold() * i as f64 / 40.0;
            if poles.iter().any(|q| (q - x).abs() < 1e-3) {
                continue;
            }
            let fg = f_parity(-x, p.z_l, Parity::Even).unwrap() - g_func(-x, &p).unwrap();
            let h = cleared_residual(x, &p, Parity::Even).unwrap();
            let (_, (da, db)) = f_parts(-x, Parity::Even);
            let den = specfun::kummer_m(da, db, 2.25).unwrap().value;
            assert_eq!(fg > 0.0, (h > 0.0) == (den > 0.0), "x = {x}");
        }
    }
}
