//! Finite-difference cross-check of the analytic spectrum.
//!
//! In the variable z = z_L·x the Schrödinger equation reads
//! −ψ'' + U(z)ψ = εψ with U = V/ħω and ε = E/ħω. Three-point central
//! differences on a uniform grid with Dirichlet ends give a symmetric
//! tridiagonal matrix; its eigenvalues below zero are located with
//! Sturm-sequence bisection and the eigenvectors by inverse iteration.
//!
//! The grid spacing is adjusted so that x = ±L fall on nodes. On those two
//! nodes the potential takes the mean of its one-sided limits, which keeps
//! the scheme second order in h for r ≠ 1 and makes Richardson
//! extrapolation with the h² rule meaningful.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::model::{potential_value_midpoint, Parity, WellParameters};

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum OracleError {
    #[error("grid needs an odd point count ≥ {min} and a half-extent beyond the well edge")]
    InvalidGrid { min: usize },
    #[error("no bound states for r ≤ 0 (r = {r})")]
    NoBoundStates { r: f64 },
    #[error("exterior decay length {decay_length} exceeds (X − L)/8 = {allowed}; widen the grid")]
    ExtentTooSmall { decay_length: f64, allowed: f64 },
    #[error("eigensolver did not converge")]
    EigensolverFailure,
}

pub const MIN_POINTS: usize = 201;
pub const DEFAULT_POINTS: usize = 4001;

/// Uniform grid on [−X, X] in units of L.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub half_extent: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(half_extent: f64, points: usize) -> Result<Self, OracleError> {
        if points < MIN_POINTS || points.is_multiple_of(2) || half_extent.is_nan() || half_extent <= 1.0 {
            return Err(OracleError::InvalidGrid { min: MIN_POINTS });
        }
        Ok(Self {
            half_extent,
            points,
        })
    }

    /// Same extent, 2N − 1 points (half the spacing).
    pub fn refined(&self) -> Self {
        Self {
            half_extent: self.half_extent,
            points: 2 * self.points - 1,
        }
    }

    fn half_points(&self) -> usize {
        (self.points - 1) / 2
    }

    /// The grid actually used: spacing L/m with m = round(L/h), so both
    /// well edges are nodes. The extent shifts by less than half a spacing.
    pub fn aligned(&self) -> Result<Self, OracleError> {
        let half = self.half_points();
        let h = self.half_extent / half as f64;
        let per_l = libm::round(1.0 / h).max(1.0) as usize;
        if per_l >= half {
            return Err(OracleError::InvalidGrid { min: MIN_POINTS });
        }
        Ok(Self {
            half_extent: half as f64 / per_l as f64,
            points: self.points,
        })
    }

    /// Spacing in units of L.
    pub fn spacing(&self) -> f64 {
        self.half_extent / self.half_points() as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        (i as f64 - self.half_points() as f64) * self.spacing()
    }

    /// Nodes per L on an aligned grid.
    fn nodes_per_l(&self) -> usize {
        libm::round(1.0 / self.spacing()) as usize
    }

    /// Node position in units of L, exact at the well edges of an aligned grid.
    fn aligned_node(&self, i: usize) -> f64 {
        let offset = i as f64 - self.half_points() as f64;
        offset / self.nodes_per_l() as f64
    }
}

/// Bound levels from one (or two, after [`converge`]) diagonalizations.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub a_abs_list: Vec<f64>,
    pub parities: Vec<Parity>,
    /// Per level, values on all grid nodes (zeros at the Dirichlet ends),
    /// normalized so that Σψ²·Δx = 1 in units of L.
    pub eigenvectors: Vec<Vec<f64>>,
    pub grid: GridSpec,
    /// Richardson-extrapolated levels, filled by [`converge`].
    pub richardson_estimate: Option<Vec<f64>>,
    /// |fine − coarse| per level, filled by [`converge`].
    pub grid_error: Option<Vec<f64>>,
}

impl OracleResult {
    /// Extrapolated values when available, raw ones otherwise.
    pub fn best(&self) -> &[f64] {
        self.richardson_estimate.as_deref().unwrap_or(&self.a_abs_list)
    }

    pub fn len(&self) -> usize {
        self.a_abs_list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a_abs_list.is_empty()
    }
}

struct Tridiagonal {
    diag: Vec<f64>,
    off: f64,
}

impl Tridiagonal {
    /// Number of eigenvalues strictly below `lambda` (Sturm count via the
    /// signs of the LDLᵀ pivots).
    fn count_below(&self, lambda: f64) -> usize {
        let off2 = self.off * self.off;
        let mut count = 0;
        let mut q = 1.0;
        for (i, &d) in self.diag.iter().enumerate() {
            q = if i == 0 { d - lambda } else { d - lambda - off2 / q };
            if q == 0.0 {
                q = -f64::EPSILON * (d.abs() + self.off.abs() + lambda.abs());
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The k-th smallest eigenvalue (0-based) inside [lo, hi].
    fn eigenvalue(&self, k: usize, mut lo: f64, mut hi: f64) -> f64 {
        let scale = lo.abs().max(hi.abs()).max(1.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= 4.0 * f64::EPSILON * scale || mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Inverse iteration at shift `lambda`; returns a unit-norm vector.
    fn eigenvector(&self, lambda: f64) -> Result<Vec<f64>, OracleError> {
        let n = self.diag.len();
        let mut x = vec![1.0; n];
        // asymmetric start so odd vectors are not missed
        for (i, v) in x.iter_mut().enumerate() {
            *v += 1e-3 * (i as f64 / n as f64);
        }
        let shift = lambda + 1e-10 * (1.0 + lambda.abs());
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        for _ in 0..3 {
            // Thomas algorithm on (T − shift·I) y = x
            let tiny = 1e-300;
            let mut denom = self.diag[0] - shift;
            if denom.abs() < tiny {
                denom = tiny;
            }
            c[0] = self.off / denom;
            d[0] = x[0] / denom;
            for i in 1..n {
                let mut m = self.diag[i] - shift - self.off * c[i - 1];
                if m.abs() < tiny {
                    m = tiny;
                }
                c[i] = self.off / m;
                d[i] = (x[i] - self.off * d[i - 1]) / m;
            }
            x[n - 1] = d[n - 1];
            for i in (0..n - 1).rev() {
                x[i] = d[i] - c[i] * x[i + 1];
            }
            let norm = libm::sqrt(x.iter().map(|v| v * v).sum::<f64>());
            if !(norm.is_finite() && norm > 0.0) {
                return Err(OracleError::EigensolverFailure);
            }
            x.iter_mut().for_each(|v| *v /= norm);
        }
        Ok(x)
    }
}

fn sign_changes(v: &[f64]) -> usize {
    let peak = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let floor = 1e-9 * peak;
    let mut last = 0.0_f64;
    let mut changes = 0;
    for &x in v {
        if x.abs() <= floor {
            continue;
        }
        if last != 0.0 && (x > 0.0) != (last > 0.0) {
            changes += 1;
        }
        last = x;
    }
    changes
}

/// Number of sign changes of a sampled vector, ignoring entries below 1e−9
/// of its peak.
pub fn count_nodes(v: &[f64]) -> usize {
    sign_changes(v)
}

/// Bound levels of the discretized problem on `grid`.
pub fn diagonalize(p: &WellParameters, grid: &GridSpec) -> Result<OracleResult, OracleError> {
    if !p.admits_bound_states() {
        return Err(OracleError::NoBoundStates { r: p.r });
    }
    let grid = grid.aligned()?;
    let n = grid.points;
    let hz = p.z_l * grid.spacing();
    let inv_h2 = 1.0 / (hz * hz);
    let diag: Vec<f64> = (1..n - 1)
        .map(|i| 2.0 * inv_h2 + potential_value_midpoint(grid.aligned_node(i), p))
        .collect();
    let t = Tridiagonal { diag, off: -inv_h2 };

    let bottom = p.bottom();
    let bound = t.count_below(0.0);
    let mut a_abs_list = Vec::with_capacity(bound);
    let mut parities = Vec::with_capacity(bound);
    let mut eigenvectors = Vec::with_capacity(bound);
    for k in 0..bound {
        let eps = t.eigenvalue(k, bottom, 0.0);
        let inner = t.eigenvector(eps)?;
        let mut full = Vec::with_capacity(n);
        full.push(0.0);
        full.extend_from_slice(&inner);
        full.push(0.0);
        let norm = libm::sqrt(full.iter().map(|v| v * v).sum::<f64>() * grid.spacing());
        let center = (n - 1) / 2;
        // fix the sign: ψ(0) > 0 for even, ψ'(0) > 0 for odd
        let symmetric: f64 = (0..n).map(|i| full[i] * full[n - 1 - i]).sum();
        let parity = if symmetric >= 0.0 { Parity::Even } else { Parity::Odd };
        let reference = match parity {
            Parity::Even => full[center],
            Parity::Odd => full[center + 1] - full[center - 1],
        };
        let s = if reference < 0.0 { -1.0 } else { 1.0 };
        full.iter_mut().for_each(|v| *v *= s / norm);
        a_abs_list.push(eps - bottom);
        parities.push(parity);
        eigenvectors.push(full);
    }
    if let Some(&shallowest) = a_abs_list.last() {
        let kl = p.z_l * libm::sqrt((p.threshold() - shallowest).max(0.0));
        let decay_length = 1.0 / kl;
        let allowed = (grid.half_extent - 1.0) / 8.0;
        if decay_length > allowed {
            return Err(OracleError::ExtentTooSmall {
                decay_length,
                allowed,
            });
        }
    }
    Ok(OracleResult {
        a_abs_list,
        parities,
        eigenvectors,
        grid,
        richardson_estimate: None,
        grid_error: None,
    })
}

/// Diagonalize on `base` and on its refinement, then Richardson-extrapolate
/// each level present on both grids as (4·fine − coarse)/3. The returned
/// levels, eigenvectors and parities are those of the fine grid.
pub fn converge(p: &WellParameters, base: &GridSpec) -> Result<OracleResult, OracleError> {
    let coarse = diagonalize(p, base)?;
    let mut fine = diagonalize(p, &base.refined())?;
    let shared = coarse.len().min(fine.len());
    let mut extrapolated = Vec::with_capacity(shared);
    let mut errors = Vec::with_capacity(shared);
    for i in 0..shared {
        let (c, f) = (coarse.a_abs_list[i], fine.a_abs_list[i]);
        extrapolated.push((4.0 * f - c) / 3.0);
        errors.push((f - c).abs());
    }
    fine.richardson_estimate = Some(extrapolated);
    fine.grid_error = Some(errors);
    Ok(fine)
}

/// Smallest number of nodes per L that [`default_grid`] will use.
pub const MIN_NODES_PER_L: usize = 100;
/// Point-count ceiling for [`default_grid`].
pub const MAX_POINTS: usize = 2_000_001;

fn resolved_grid(half_extent: f64, points: usize) -> Result<GridSpec, OracleError> {
    let needed = 2 * libm::ceil(half_extent * MIN_NODES_PER_L as f64) as usize + 1;
    GridSpec::new(half_extent, points.max(needed).min(MAX_POINTS))
}

/// Extent L + max(8/k, 4L), with k taken from the shallowest level of a
/// trial grid and the trial widened until it contains that extent. The
/// point count is raised when needed so the well keeps at least
/// [`MIN_NODES_PER_L`] nodes per L.
pub fn default_grid(p: &WellParameters, points: usize) -> Result<GridSpec, OracleError> {
    if !p.admits_bound_states() {
        return Err(OracleError::NoBoundStates { r: p.r });
    }
    let mut extent = 5.0;
    for _ in 0..16 {
        let grid = resolved_grid(extent, points)?;
        let trial = match diagonalize(p, &grid) {
            Ok(r) => r,
            Err(OracleError::ExtentTooSmall { .. }) => {
                extent *= 4.0;
                continue;
            }
            Err(e) => return Err(e),
        };
        let Some(&shallowest) = trial.a_abs_list.last() else {
            extent *= 4.0;
            continue;
        };
        let kl = p.z_l * libm::sqrt((p.threshold() - shallowest).max(0.0));
        let wanted = 1.02 * (1.0 + (8.0 / kl).max(4.0));
        if wanted <= trial.grid.half_extent {
            return resolved_grid(wanted.max(5.0), points);
        }
        extent = wanted * 1.05;
    }
    resolved_grid(extent, points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(3.0, 200).is_err());
        assert!(GridSpec::new(3.0, 199).is_err());
        assert!(GridSpec::new(1.0, 401).is_err());
        let g = GridSpec::new(3.3, 401).unwrap().aligned().unwrap();
        let edge = 1.0 / g.spacing();
        assert!((edge - libm::round(edge)).abs() < 1e-9);
        assert_eq!(g.refined().points, 801);
    }

    #[test]
    fn sturm_count_on_diagonal_matrix() {
        let t = Tridiagonal {
            diag: vec![1.0, 2.0, 3.0],
            off: 0.0,
        };
        assert_eq!(t.count_below(0.5), 0);
        assert_eq!(t.count_below(2.5), 2);
        assert!((t.eigenvalue(1, 0.0, 4.0) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn free_laplacian_eigenvalues() {
        // −D² on n interior nodes with spacing 1: 2 − 2cos(kπ/(n+1))
        let n = 50;
        let t = Tridiagonal {
            diag: vec![2.0; n],
            off: -1.0,
        };
        for k in 0..5 {
            let exact = 2.0 - 2.0 * libm::cos((k + 1) as f64 * core::f64::consts::PI / (n + 1) as f64);
            assert!((t.eigenvalue(k, 0.0, 4.0) - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_parameters() {
        let p = WellParameters::new(-1.0, 1.0).unwrap();
        let g = GridSpec::new(5.0, 401).unwrap();
        assert!(matches!(diagonalize(&p, &g), Err(OracleError::NoBoundStates { .. })));
    }

    #[test]
    fn harmonic_ladder_on_fixed_grid() {
        let p = WellParameters::new(1.0, libm::sqrt(72.0)).unwrap();
        let g = GridSpec::new(3.0, 8001).unwrap();
        let res = diagonalize(&p, &g).unwrap();
        assert!((res.a_abs_list[0] - 0.5).abs() < 0.01);
        let conv = converge(&p, &GridSpec::new(3.0, 2001).unwrap()).unwrap();
        assert!((conv.best()[0] - 0.5).abs() < 1e-4);
    }

    #[test]
    fn parities_alternate_and_nodes_count() {
        let p = WellParameters::new(1.0, 3.0 * core::f64::consts::SQRT_2).unwrap();
        let g = default_grid(&p, 2001).unwrap();
        let res = diagonalize(&p, &g).unwrap();
        assert_eq!(res.len(), 5);
        for (n, v) in res.eigenvectors.iter().enumerate() {
            let expected = if n % 2 == 0 { Parity::Even } else { Parity::Odd };
            assert_eq!(res.parities[n], expected);
            assert_eq!(count_nodes(v), n);
        }
        assert!(res.a_abs_list.windows(2).all(|w| w[0] < w[1]));
        assert!(res.a_abs_list.iter().all(|&a| a > 0.0 && a < p.threshold()));
    }

    #[test]
    fn ground_level_r2_after_richardson() {
        let p = WellParameters::from_sqrt_omega_l(2.0, 1.5).unwrap();
        let res = converge(&p, &GridSpec::new(6.0, 1001).unwrap()).unwrap();
        assert!((res.best()[0] - 0.520).abs() < 1e-3);
        let err = res.grid_error.as_ref().unwrap()[0];
        let coarse = converge(&p, &GridSpec::new(6.0, 501).unwrap()).unwrap();
        let ratio = coarse.grid_error.as_ref().unwrap()[0] / err;
        assert!((3.0..5.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn doubling_extent_leaves_levels() {
        let p = WellParameters::from_sqrt_omega_l(2.0, 1.5).unwrap();
        let near = diagonalize(&p, &GridSpec::new(6.0, 2001).unwrap()).unwrap();
        let far = diagonalize(&p, &GridSpec::new(12.0, 4001).unwrap()).unwrap();
        assert_eq!(near.len(), far.len());
        for (a, b) in near.a_abs_list.iter().zip(&far.a_abs_list) {
            assert!((a - b).abs() < 1e-6, "{a} vs {b}");
        }
    }

    #[test]
    fn narrow_extent_is_flagged() {
        let p = WellParameters::from_sqrt_omega_l(0.5, 1.5).unwrap();
        let g = GridSpec::new(3.0, 601).unwrap();
        assert!(matches!(diagonalize(&p, &g), Err(OracleError::ExtentTooSmall { .. })));
    }
}
