use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("adaptive quadrature did not reach tolerance {tol:e} within {max_depth} subdivision levels")]
pub struct QuadratureError {
    pub tol: f64,
    pub max_depth: u32,
}

const MAX_DEPTH: u32 = 48;

/// Adaptive Simpson quadrature with Richardson correction, absolute tolerance.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    refine(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
        .ok_or(QuadratureError { tol, max_depth: MAX_DEPTH })
}

#[allow(clippy::too_many_arguments)]
fn refine<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Option<f64>
where
    F: Fn(f64) -> f64,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Some(left + right + delta / 15.0);
    }
    if depth == 0 {
        return None;
    }
    let l = refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
    let r = refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
    Some(l + r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_integral() {
        let v = adaptive_simpson(|x| libm::exp(-x * x), -8.0, 8.0, 1e-12).unwrap();
        assert!((v - libm::sqrt(core::f64::consts::PI)).abs() < 1e-11);
    }

    #[test]
    fn cubic_is_exact() {
        let v = adaptive_simpson(|x| x * x * x - x, 0.0, 2.0, 1e-14).unwrap();
        assert!((v - 2.0).abs() < 1e-14);
    }

    #[test]
    fn reports_failure_on_singular_integrand() {
        let r = adaptive_simpson(|x| 1.0 / x.abs().max(1e-300), -1.0, 1.0, 1e-12);
        assert!(r.is_err());
    }
}
