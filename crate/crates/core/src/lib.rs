//! Bound states of a particle in a truncated harmonic well
//!
//! V(x) = ½mω²(x² − rL²) for |x| < L and 0 outside. Inside the well the
//! Schrödinger equation reduces to ψ'' − (z²/4 + a)ψ = 0, solved by Kummer
//! functions; matching to the evanescent exterior at x = L turns the
//! eigenproblem into a transcendental equation in a = (V(0) − E)/ħω that
//! depends only on r and z_L = √(2mω/ħ)·L.
//!
//! - [`specfun`]: Kummer's M, log-Γ, Hermite polynomials, the y1/y2 basis
//! - [`model`]: well parameters, potential, unit conversions
//! - [`spectrum`]: quantization functions, pole and root search, sweeps
//! - [`wavefunction`]: matched, normalized eigenfunctions
//! - [`approx`]: square-well, shallow-well and harmonic limits
//! - [`oracle`]: independent finite-difference diagonalization
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod approx;
pub mod model;
pub mod numeric;
pub mod oracle;
pub mod specfun;
pub mod spectrum;
pub mod wavefunction;

pub use model::{EnergyValue, Parity, PhysicalScales, WellParameters};
pub use spectrum::{solve_spectrum, BoundState, Spectrum, SpectrumError};
