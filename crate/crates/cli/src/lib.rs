//! Command-line front end for `trapwell-core`.
//!
//! Each subcommand builds a [`table::Table`] (or a verification report)
//! and writes it as CSV or JSON to standard output or a file.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use trapwell_core::spectrum::SolverConfig;
use trapwell_core::WellParameters;

pub mod args;
pub mod commands;
pub mod error;
pub mod table;
pub mod verify;

use args::{Cli, Command, Format, OutputArgs, WellArgs};
use commands::{SweepOpts, WavefunctionOpts};
use error::CliError;
use verify::VerifyOpts;

/// Overrides the root tolerance of the solver.
pub const TOL_ENV: &str = "TRAPWELL_TOL";

/// Resolved parameters shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: WellParameters,
    pub solver: SolverConfig,
    pub format: Format,
}

pub fn solver_config() -> Result<SolverConfig, CliError> {
    let mut cfg = SolverConfig::default();
    if let Ok(raw) = std::env::var(TOL_ENV) {
        let tol: f64 = raw
            .trim()
            .parse()
            .map_err(|_| CliError::Invalid(format!("{TOL_ENV} must be a number, got {raw:?}")))?;
        if !(tol.is_finite() && tol > 0.0) {
            return Err(CliError::Invalid(format!("{TOL_ENV} must be positive, got {raw:?}")));
        }
        cfg.root_tol = tol;
    }
    Ok(cfg)
}

pub fn well_parameters(w: &WellArgs) -> Result<WellParameters, CliError> {
    let p = match (w.z_l, w.sqrt_omega_l) {
        (Some(z), None) => WellParameters::new(w.r, z)?,
        (None, Some(s)) => WellParameters::from_sqrt_omega_l(w.r, s)?,
        _ => return Err(CliError::Invalid("give exactly one of --z-l and --sqrt-omega-L".into())),
    };
    if !p.admits_bound_states() {
        return Err(CliError::Invalid(format!("no bound states for r ≤ 0 (r = {})", p.r)));
    }
    Ok(p)
}

fn run_config(well: &WellArgs, out: &OutputArgs) -> Result<RunConfig, CliError> {
    Ok(RunConfig {
        params: well_parameters(well)?,
        solver: solver_config()?,
        format: out.format,
    })
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(table: &table::Table, out: &OutputArgs) -> Result<(), CliError> {
    let mut w = sink(out.output.as_deref())?;
    table.write(out.format, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Spectrum { well, out } => {
            let cfg = run_config(&well, &out)?;
            emit(&commands::spectrum(&cfg)?, &out)
        }
        Command::Fdata { well, out, samples } => {
            let cfg = run_config(&well, &out)?;
            emit(&commands::fdata(&cfg, samples)?, &out)
        }
        Command::Wavefunction {
            well,
            out,
            state,
            x_min,
            x_max,
            samples,
            no_harmonic,
        } => {
            let cfg = run_config(&well, &out)?;
            let opts = WavefunctionOpts {
                state,
                x_min,
                x_max,
                samples,
                harmonic: !no_harmonic,
            };
            emit(&commands::wavefunction(&cfg, &opts)?, &out)
        }
        Command::Sweep {
            r,
            from,
            to,
            steps,
            levels,
            out,
        } => {
            let solver = solver_config()?;
            let opts = SweepOpts {
                r,
                from,
                to,
                steps,
                levels,
            };
            emit(&commands::sweep(&solver, &opts)?, &out)
        }
        Command::Approx {
            well,
            out,
            regime,
            n_max,
        } => {
            let cfg = run_config(&well, &out)?;
            emit(&commands::approx(&cfg, regime, n_max)?, &out)
        }
        Command::Verify {
            well,
            out,
            tol,
            points,
            extent,
        } => {
            let cfg = run_config(&well, &out)?;
            let report = verify::verify(&cfg, &VerifyOpts { tol, points, extent })?;
            let mut w = sink(out.output.as_deref())?;
            match out.format {
                Format::Csv => w.write_all(report.to_text().as_bytes())?,
                Format::Json => {
                    serde_json::to_writer_pretty(&mut w, &report.to_json())?;
                    writeln!(w)?;
                }
            }
            w.flush()?;
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::VerifyFailed(report.failure_summary()))
            }
        }
    }
}
