//! Command-line front end. `run` parses arguments, dispatches to one of
//! `verify`, `spectrum`, `bands`, `density` and maps the outcome to an exit
//! code: 0 success, 1 failed check or runtime failure, 2 bad configuration.
//!
//! Every output embeds the resolved configuration and the unit conventions,
//! and is byte-identical for identical arguments.

mod args;
mod bands;
mod density;
mod output;
mod spectrum;
mod verify;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{BandsArgs, Check, Cli, Command, DensityArgs, Format, OutputArgs, PhysicsArgs, Source, SpectrumArgs, VerifyArgs};
pub use output::{RunConfig, UNITS};
pub use verify::CheckResult;

use crate::classical_field::BasisAngle;
use crate::error::{invalid, Error, Result};
use crate::operators::SystemParams;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_CONFIG,
            };
        }
    };
    let outcome = match &cli.command {
        Command::Verify(a) => verify::run(a),
        Command::Spectrum(a) => spectrum::run(a).map(|()| true),
        Command::Bands(a) => bands::run(a).map(|()| true),
        Command::Density(a) => density::run(a).map(|()| true),
    };
    match outcome {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter { .. }
        | Error::MathieuDomain { .. }
        | Error::NoStatesAtMomentum { .. }
        | Error::Undersampled { .. } => EXIT_CONFIG,
        _ => EXIT_FAILED,
    }
}

/// Physical parameters after applying the `--xi` override.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Resolved {
    pub params: SystemParams,
    pub xi: Option<f64>,
    pub n_max: usize,
}

pub(crate) fn resolve(a: &PhysicsArgs) -> Result<Resolved> {
    if a.n_max == 0 {
        return Err(invalid("n-max", "cutoff must be at least 1"));
    }
    if a.n == 0 {
        return Err(invalid("N", "excitation number must be at least 1"));
    }
    if !a.alpha.is_finite() {
        return Err(invalid("alpha", "must be finite"));
    }
    let (zeta, xi) = match a.xi {
        Some(xi) => {
            if !(xi >= 0.0 && xi.is_finite()) {
                return Err(invalid("xi", "must be finite and nonnegative"));
            }
            if !(a.delta > 0.0) {
                return Err(invalid("Delta", "--xi needs Delta > 0 to fix zeta = sqrt(xi Delta)"));
            }
            ((xi * a.delta).sqrt(), Some(xi))
        }
        None => (a.zeta, (a.delta > 0.0).then(|| a.zeta * a.zeta / a.delta)),
    };
    let params = SystemParams::new(a.omega, a.delta, zeta, BasisAngle::new(a.alpha), a.n)?;
    Ok(Resolved { params, xi, n_max: a.n_max })
}

pub(crate) fn config(command: &'static str, r: &Resolved, options: serde_json::Value) -> RunConfig {
    RunConfig {
        command,
        alpha: r.params.alpha.radians(),
        n_excitations: r.params.n_excitations,
        zeta: r.params.zeta,
        delta: r.params.delta,
        omega: r.params.omega,
        xi: r.xi,
        n_max: r.n_max,
        options,
    }
}

pub(crate) fn require_xi(r: &Resolved) -> Result<f64> {
    r.xi.ok_or_else(|| invalid("xi", "needs --xi or Delta > 0"))
}
