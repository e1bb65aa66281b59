use std::f64::consts::SQRT_2;

use rayon::prelude::*;
use trapwell_core::approx::{harmonic_levels, harmonic_wavefunction, shallow_well_level, square_well_levels, ApproxLevel};
use trapwell_core::spectrum::{quantization_samples, solve_spectrum_with, sweep_row_with, SolverConfig, SweepRow};
use trapwell_core::wavefunction::{sample, EigenfunctionSpec};
use trapwell_core::Spectrum;

use crate::args::RegimeArg;
use crate::error::CliError;
use crate::table::{Cell, Table};
use crate::RunConfig;

pub const MIN_FDATA_SAMPLES: usize = 100;

fn with_params(table: Table, cfg: &RunConfig) -> Table {
    let p = &cfg.params;
    table
        .with_meta("r", Cell::Num(p.r))
        .with_meta("z_L", Cell::Num(p.z_l))
        .with_meta("sqrt_omega_L", Cell::Num(p.sqrt_omega_l()))
        .with_meta("threshold", Cell::Num(p.threshold()))
}

pub fn solve(cfg: &RunConfig) -> Result<Spectrum, CliError> {
    let sp = solve_spectrum_with(&cfg.params, &cfg.solver)?;
    if sp.is_empty() {
        eprintln!(
            "note: no bound state below the threshold for r = {}, z_L = {}",
            cfg.params.r, cfg.params.z_l
        );
    }
    Ok(sp)
}

pub fn spectrum(cfg: &RunConfig) -> Result<Table, CliError> {
    let sp = solve(cfg)?;
    let mut t = with_params(Table::new(["index", "parity", "a_abs", "E_over_hw", "kL"]), cfg);
    for s in &sp.states {
        t.push(vec![
            Cell::Int(s.index),
            Cell::Text(s.parity.as_str().into()),
            Cell::Num(s.a_abs),
            Cell::Num(s.e_over_hw),
            Cell::Num(s.kl),
        ]);
    }
    Ok(t)
}

pub fn fdata(cfg: &RunConfig, samples: usize) -> Result<Table, CliError> {
    if samples < MIN_FDATA_SAMPLES {
        return Err(CliError::Invalid(format!(
            "--samples must be at least {MIN_FDATA_SAMPLES}, got {samples}"
        )));
    }
    let mut t = with_params(Table::new(["a_abs", "f_even", "f_odd", "g"]), cfg);
    for s in quantization_samples(&cfg.params, samples)? {
        t.push(vec![Cell::Num(s.a_abs), Cell::opt(s.f_even), Cell::opt(s.f_odd), Cell::Num(s.g)]);
    }
    Ok(t)
}

pub struct WavefunctionOpts {
    pub state: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub samples: usize,
    pub harmonic: bool,
}

/// Oscillator eigenfunction with the sign convention of the exact states:
/// ψ(0) > 0 when even, ψ'(0) > 0 when odd.
fn harmonic_overlay(n: usize, cfg: &RunConfig, x: f64) -> f64 {
    let sign = if (n / 2) % 2 == 1 { -1.0 } else { 1.0 };
    sign * harmonic_wavefunction(n as u32, &cfg.params, x)
}

pub fn wavefunction(cfg: &RunConfig, opts: &WavefunctionOpts) -> Result<Table, CliError> {
    if !(opts.x_min.is_finite() && opts.x_max.is_finite() && opts.x_min < opts.x_max) {
        return Err(CliError::Invalid(format!(
            "need finite --x-min < --x-max, got [{}, {}]",
            opts.x_min, opts.x_max
        )));
    }
    if opts.samples < 2 {
        return Err(CliError::Invalid("--samples must be at least 2".into()));
    }
    let sp = solve(cfg)?;
    let state = *sp.get(opts.state).ok_or(CliError::StateNotFound {
        index: opts.state,
        count: sp.len(),
    })?;
    let spec = EigenfunctionSpec::normalized(state, cfg.params)?;
    let mut columns = vec!["x", "psi", "dpsi"];
    if opts.harmonic {
        columns.push("psi_harmonic");
    }
    let mut t = with_params(Table::new(columns), cfg)
        .with_meta("state", Cell::Int(state.index))
        .with_meta("parity", Cell::Text(state.parity.as_str().into()))
        .with_meta("a_abs", Cell::Num(state.a_abs));
    for s in sample(&spec, opts.x_min, opts.x_max, opts.samples) {
        let mut row = vec![Cell::Num(s.x), Cell::Num(s.psi), Cell::Num(s.dpsi)];
        if opts.harmonic {
            row.push(Cell::Num(harmonic_overlay(state.index, cfg, s.x)));
        }
        t.push(row);
    }
    Ok(t)
}

pub struct SweepOpts {
    pub r: f64,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub levels: usize,
}

/// √ω·L grid with both ends hit exactly.
pub fn sweep_points(from: f64, to: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                to
            } else {
                from + (to - from) * i as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

pub fn sweep(solver: &SolverConfig, opts: &SweepOpts) -> Result<Table, CliError> {
    if !(opts.from.is_finite() && opts.to.is_finite() && opts.from > 0.0 && opts.from < opts.to) {
        return Err(CliError::Invalid(format!(
            "need 0 < --from < --to, got [{}, {}]",
            opts.from, opts.to
        )));
    }
    if opts.steps < 2 {
        return Err(CliError::Invalid("--steps must be at least 2".into()));
    }
    if !opts.r.is_finite() {
        return Err(CliError::Invalid(format!("r must be finite, got {}", opts.r)));
    }
    if opts.r <= 0.0 {
        return Err(CliError::Invalid(format!("no bound states for r ≤ 0 (r = {})", opts.r)));
    }
    let points = sweep_points(opts.from, opts.to, opts.steps);
    let rows: Vec<SweepRow> = points
        .par_iter()
        .map(|&s| sweep_row_with(opts.r, SQRT_2 * s, solver))
        .collect::<Result<_, _>>()?;
    let mut columns = vec!["sqrt_omega_L".to_string(), "threshold".to_string()];
    columns.extend((0..opts.levels).map(|n| format!("a_{n}")));
    let mut t = Table::new(columns)
        .with_meta("r", Cell::Num(opts.r))
        .with_meta("levels", Cell::Int(opts.levels));
    for (s, row) in points.iter().zip(&rows) {
        let mut cells = vec![Cell::Num(*s), Cell::Num(row.threshold)];
        cells.extend((0..opts.levels).map(|n| Cell::opt(row.levels.get(n).copied())));
        t.push(cells);
    }
    Ok(t)
}

fn approx_rows(t: &mut Table, name: &str, levels: &[ApproxLevel], exact: &Spectrum) {
    for (i, l) in levels.iter().enumerate() {
        let matched = exact.get(i).filter(|s| s.parity == l.parity).map(|s| s.a_abs);
        let rel = matched.map(|e| (l.a_abs - e) / e);
        t.push(vec![
            Cell::Text(name.into()),
            Cell::Int(i),
            Cell::Text(l.parity.as_str().into()),
            Cell::Num(l.a_abs),
            Cell::opt(matched),
            Cell::opt(rel),
            Cell::Text(l.validity_note.into()),
        ]);
    }
}

pub fn approx(cfg: &RunConfig, regime: RegimeArg, n_max: usize) -> Result<Table, CliError> {
    let exact = solve(cfg)?;
    let p = &cfg.params;
    let mut t = with_params(
        Table::new(["regime", "index", "parity", "a_abs_approx", "a_abs_exact", "rel_diff", "validity"]),
        cfg,
    );
    let all = regime == RegimeArg::All;
    if all || regime == RegimeArg::Square {
        approx_rows(&mut t, "square-well", &square_well_levels(p, false), &exact);
    }
    if all || regime == RegimeArg::SquareSimplified {
        approx_rows(&mut t, "square-well-simplified", &square_well_levels(p, true), &exact);
    }
    if all || regime == RegimeArg::Shallow {
        approx_rows(&mut t, "shallow-well", &[shallow_well_level(p)], &exact);
    }
    if all || regime == RegimeArg::Harmonic {
        approx_rows(&mut t, "harmonic", &harmonic_levels(p, n_max), &exact);
    }
    Ok(t)
}
