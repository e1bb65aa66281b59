//! Bracketed scalar root finding.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum RootError {
    #[error("interval [{lo}, {hi}] does not bracket a sign change")]
    NotBracketed { lo: f64, hi: f64 },
    #[error("no convergence after {iterations} iterations")]
    NoConvergence { iterations: usize },
}

const MAX_ITER: usize = 200;

/// Brent's method (inverse quadratic interpolation / secant steps guarded by
/// bisection). `f_lo` and `f_hi` are the already-known endpoint values.
///
/// Converges when the bracket half-width drops below
/// `2·ε·|x| + tol/2`, so `tol` is an absolute resolution in `x`.
pub fn brent<F>(mut f: F, lo: f64, hi: f64, f_lo: f64, f_hi: f64, tol: f64) -> Result<f64, RootError>
where
    F: FnMut(f64) -> f64,
{
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(RootError::NotBracketed { lo, hi });
    }
    let (mut a, mut b, mut fa, mut fb) = (lo, hi, f_lo, f_hi);
    let (mut c, mut fc) = (b, fb);
    let (mut d, mut e) = (b - a, b - a);

    for _ in 0..MAX_ITER {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 {
            d
        } else if xm > 0.0 {
            tol1
        } else {
            -tol1
        };
        fb = f(b);
    }
    Err(RootError::NoConvergence {
        iterations: MAX_ITER,
    })
}

/// Plain bisection on the sign of `f` until the bracket is narrower than
/// `tol`. Returns the midpoint of the final bracket.
pub fn bisect_sign<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64, RootError>
where
    F: FnMut(f64) -> f64,
{
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(RootError::NotBracketed { lo, hi });
    }
    let lo_positive = f_lo > 0.0;
    for _ in 0..MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(RootError::NoConvergence {
        iterations: MAX_ITER,
    })
}
