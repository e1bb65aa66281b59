//! Special functions: Kummer's M, its asymptotic forms, log-Γ, Hermite
//! polynomials and the even/odd parabolic-cylinder basis y1, y2.

mod asymptotic;
mod basis;
mod gamma;
mod hermite;
mod kummer;

pub use asymptotic::{
    kummer_asymptotic_large_z, kummer_asymptotic_neg_a, neg_a_envelope, AsymptoticLimits,
};
pub use basis::{even_solution, odd_solution, parity_basis, ParityBasisEval};
pub use gamma::{gamma, ln_gamma_signed};
pub use hermite::hermite;
pub use kummer::{
    kummer_m, kummer_ratio, kummer_scaled, KummerEval, ScaledKummer, CANCELLATION_LIMIT,
    SERIES_Z_LIMIT,
};

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SpecFunError {
    #[error("b = {b} is a nonpositive integer")]
    InvalidB { b: f64 },
    #[error("series for M({a}, {b}, {z}) did not converge within {terms} terms")]
    NoConvergence { a: f64, b: f64, z: f64, terms: u32 },
    #[error("|z| = {z} is beyond the direct-series guard; use the ratio or asymptotic forms")]
    OverflowRegime { z: f64 },
    #[error("denominator M({a}, {b}, {z}) vanishes")]
    DenominatorZero { a: f64, b: f64, z: f64 },
    #[error("Γ(a) has a pole at a = {a}")]
    GammaPole { a: f64 },
    #[error("argument outside the domain: {0}")]
    Domain(&'static str),
    #[error("non-finite argument")]
    NonFinite,
}
