//! Closed-form and reduced estimates of the levels in three limits: a deep
//! flat-bottomed well (square well), a very narrow well, and a wide well
//! (the full oscillator).

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use crate::model::{Parity, WellParameters};
use crate::numeric::brent;
use crate::specfun::ln_gamma_signed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    SquareWell,
    ShallowWell,
    Harmonic,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::SquareWell => "square-well",
            Regime::ShallowWell => "shallow-well",
            Regime::Harmonic => "harmonic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxLevel {
    pub a_abs: f64,
    pub parity: Parity,
    pub regime: Regime,
    pub validity_note: &'static str,
}

const SQUARE_NOTE: &str = "r >> 1, levels far above the well bottom";
const SQUARE_SIMPLIFIED_NOTE: &str = "r >> 1 and kL >> z_L^2/2";
const SHALLOW_NOTE: &str = "z_L << 1";
const HARMONIC_NOTE: &str = "z_L >> 1, levels well below the threshold";

/// Levels of the square-well reduction
///
/// ```text
/// even: kL − z_L²/2 = q·tan q      odd: kL − z_L²/2 = −q·cot q
/// ```
///
/// with q = √|a|·z_L and kL = z_L·√(r·z_L²/4 − |a|). With `simplified` the
/// z_L²/2 term is dropped. Each tan/cot branch holds at most one root, since
/// the left side falls and the right side rises along it; the root is
/// refined on the product with cos q (even) or sin q / q (odd), which is
/// free of poles.
pub fn square_well_levels(p: &WellParameters, simplified: bool) -> Vec<ApproxLevel> {
    let mut levels = Vec::new();
    if !p.admits_bound_states() {
        return levels;
    }
    let z_l = p.z_l;
    let threshold = p.threshold();
    let shift = if simplified { 0.0 } else { 0.5 * p.z_l_squared() };
    let q_max = z_l * libm::sqrt(threshold);
    let lhs = |q: f64| {
        let a_abs = q * q / (z_l * z_l);
        z_l * libm::sqrt((threshold - a_abs).max(0.0)) - shift
    };
    let note = if simplified {
        SQUARE_SIMPLIFIED_NOTE
    } else {
        SQUARE_NOTE
    };

    for parity in [Parity::Even, Parity::Odd] {
        let cleared = |q: f64| match parity {
            Parity::Even => lhs(q) * libm::cos(q) - q * libm::sin(q),
            // divided by q to remove the trivial zero at the origin
            Parity::Odd => lhs(q) * sinc(q) + libm::cos(q),
        };
        // branch edges: poles of tan at (n + 1/2)π, of cot at nπ
        let offset = match parity {
            Parity::Even => -FRAC_PI_2,
            Parity::Odd => 0.0,
        };
        let mut n = 0;
        loop {
            let lo = (offset + n as f64 * PI).max(0.0);
            if lo >= q_max {
                break;
            }
            let hi = (offset + (n + 1) as f64 * PI).min(q_max);
            n += 1;
            let (f_lo, f_hi) = (cleared(lo), cleared(hi));
            if f_lo == 0.0 && lo > 0.0 {
                push_level(&mut levels, lo, z_l, parity, note);
                continue;
            }
            if (f_lo > 0.0) == (f_hi > 0.0) {
                continue;
            }
            if let Ok(q) = brent(cleared, lo, hi, f_lo, f_hi, 1e-14) {
                if q > 0.0 && q < q_max {
                    push_level(&mut levels, q, z_l, parity, note);
                }
            }
        }
    }
    levels.sort_by(|a, b| a.a_abs.total_cmp(&b.a_abs));
    levels
}

fn sinc(q: f64) -> f64 {
    if q == 0.0 {
        1.0
    } else {
        libm::sin(q) / q
    }
}

fn push_level(levels: &mut Vec<ApproxLevel>, q: f64, z_l: f64, parity: Parity, note: &'static str) {
    levels.push(ApproxLevel {
        a_abs: q * q / (z_l * z_l),
        parity,
        regime: Regime::SquareWell,
        validity_note: note,
    });
}

/// The single even root of |a| + (|a|² − r/4)·z_L² = 0. The odd reduction
/// 1 + |a|·z_L²/3 = 0 has no positive root, so nothing else is returned.
pub fn shallow_well_level(p: &WellParameters) -> ApproxLevel {
    let z2 = p.z_l_squared();
    // (−1 + √(1 + r·z_L⁴)) / (2z_L²) without the cancellation
    let a_abs = 0.5 * p.r * z2 / (1.0 + libm::sqrt(1.0 + p.r * z2 * z2));
    ApproxLevel {
        a_abs,
        parity: Parity::Even,
        regime: Regime::ShallowWell,
        validity_note: SHALLOW_NOTE,
    }
}

/// Oscillator levels |a| = n + 1/2 for n = 0..=n_max, alternating parity,
/// kept while below the threshold r·z_L²/4.
pub fn harmonic_levels(p: &WellParameters, n_max: usize) -> Vec<ApproxLevel> {
    let threshold = p.threshold();
    (0..=n_max)
        .map(|n| ApproxLevel {
            a_abs: n as f64 + 0.5,
            parity: if n % 2 == 0 { Parity::Even } else { Parity::Odd },
            regime: Regime::Harmonic,
            validity_note: HARMONIC_NOTE,
        })
        .take_while(|l| l.a_abs < threshold)
        .collect()
}

/// N_n = (α/(√(2π)·2ⁿ·n!))^{1/2}, α in units of 1/L.
pub fn harmonic_norm(n: u32, p: &WellParameters) -> f64 {
    let (ln_fact, _) = ln_gamma_signed(f64::from(n) + 1.0).unwrap_or((0.0, 1.0));
    let ln_n = 0.5
        * (libm::log(p.z_l)
            - 0.5 * libm::log(2.0 * PI)
            - f64::from(n) * core::f64::consts::LN_2
            - ln_fact);
    libm::exp(ln_n)
}

/// Normalized full-oscillator eigenfunction N_n·e^{−α²x²/4}·H_n(αx/√2) at x
/// (units of L).
///
/// Evaluated through the orthonormal Hermite-function recurrence in
/// u = αx/√2, which stays finite where H_n and the Gaussian separately
/// would overflow or underflow.
pub fn harmonic_wavefunction(n: u32, p: &WellParameters, x: f64) -> f64 {
    let u = p.z_l * x / core::f64::consts::SQRT_2;
    let scale = libm::sqrt(p.z_l / core::f64::consts::SQRT_2);
    let mut prev = 0.0;
    let mut cur = libm::pow(PI, -0.25) * libm::exp(-0.5 * u * u);
    for k in 0..n {
        let k = f64::from(k);
        let next = libm::sqrt(2.0 / (k + 1.0)) * u * cur - libm::sqrt(k / (k + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    scale * cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::hermite;
    use crate::spectrum::solve_spectrum;

    #[test]
    fn harmonic_enumeration() {
        let p = WellParameters::new(1.0, libm::sqrt(72.0)).unwrap();
        let l = harmonic_levels(&p, 2);
        assert_eq!(l.len(), 3);
        assert_eq!(
            l.iter().map(|x| (x.a_abs, x.parity)).collect::<Vec<_>>(),
            [(0.5, Parity::Even), (1.5, Parity::Odd), (2.5, Parity::Even)]
        );
        // threshold 2
        let p = WellParameters::new(1.0, libm::sqrt(8.0)).unwrap();
        let l = harmonic_levels(&p, 10);
        assert_eq!(l.iter().map(|x| x.a_abs).collect::<Vec<_>>(), [0.5, 1.5]);
    }

    #[test]
    fn shallow_closed_form() {
        let p = WellParameters::new(1.0, 0.1).unwrap();
        let l = shallow_well_level(&p);
        assert!((l.a_abs - 2.49994e-3).abs() < 1e-8);
        assert!(l.a_abs < p.threshold());
        let tiny = WellParameters::new(1.0, 1e-3).unwrap();
        let ratio = shallow_well_level(&tiny).a_abs / tiny.threshold();
        assert!((ratio - 1.0).abs() < 1e-11);
    }

    #[test]
    fn harmonic_wavefunction_values() {
        let p = WellParameters::from_sqrt_omega_l(2.0, 1.5).unwrap();
        let alpha = p.z_l;
        let expected = libm::pow(alpha * alpha / (2.0 * PI), 0.25);
        assert!((harmonic_wavefunction(0, &p, 0.0) - expected).abs() < 1e-14);
        assert_eq!(harmonic_wavefunction(1, &p, 0.0), 0.0);
        for n in 0..8 {
            for &x in &[-0.7, 0.2, 1.3] {
                let u = alpha * x / core::f64::consts::SQRT_2;
                let direct = harmonic_norm(n, &p) * libm::exp(-0.5 * u * u) * hermite(n, u);
                let rec = harmonic_wavefunction(n, &p, x);
                assert!((direct - rec).abs() < 1e-12 * (1.0 + direct.abs()), "n={n} x={x}");
            }
        }
    }

    #[test]
    fn harmonic_wavefunction_solves_full_oscillator() {
        // ψ'' = z_L²(z²/4 − (n + 1/2))ψ with z = z_L·x
        let p = WellParameters::new(1.0, 2.5).unwrap();
        let h = 1e-4;
        for n in 0..5 {
            let f = |t: f64| harmonic_wavefunction(n, &p, t);
            // nodes make a pointwise relative measure meaningless
            let scale = p.z_l_squared() * (0..=40).map(|i| f(-2.0 + 0.1 * i as f64).abs()).fold(0.0, f64::max);
            for &x in &[-1.1, -0.4, 0.3, 0.9, 1.7] {
                let d2 = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
                let z = p.z_l * x;
                let rhs = p.z_l_squared() * (0.25 * z * z - (f64::from(n) + 0.5)) * f(x);
                assert!((d2 - rhs).abs() < 1e-6 * scale, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn square_well_infinite_depth_limit() {
        // deep well, simplified form: even roots approach (n + 1/2)π in q
        let p = WellParameters::new(1e8, 1.0).unwrap();
        let l = square_well_levels(&p, true);
        let q0 = libm::sqrt(l[0].a_abs) * p.z_l;
        assert!((q0 - FRAC_PI_2).abs() < 1e-3);
        assert_eq!(l[0].parity, Parity::Even);
        assert_eq!(l[1].parity, Parity::Odd);
    }

    #[test]
    fn square_well_count_scales_as_sqrt_r() {
        let z_l = core::f64::consts::SQRT_2;
        let n100 = square_well_levels(&WellParameters::new(100.0, z_l).unwrap(), false).len();
        let n400 = square_well_levels(&WellParameters::new(400.0, z_l).unwrap(), false).len();
        let ratio = n400 as f64 / n100 as f64;
        assert!((1.7..=2.3).contains(&ratio), "{n100} {n400}");
    }

    #[test]
    fn square_well_matches_exact_mid_spectrum() {
        let p = WellParameters::new(100.0, core::f64::consts::SQRT_2).unwrap();
        let exact = solve_spectrum(&p).unwrap();
        let approx = square_well_levels(&p, false);
        assert_eq!(exact.len(), approx.len());
        let n = exact.len();
        let middle = n / 3..(2 * n).div_ceil(3);
        for (i, (l, s)) in approx.iter().zip(&exact.states).enumerate().filter(|(i, _)| middle.contains(i)) {
            let rel = (l.a_abs - s.a_abs).abs() / s.a_abs;
            assert!(rel < 0.05, "level {i}: {rel}");
            assert_eq!(l.parity, s.parity);
        }
    }
}
