use std::f64::consts::{FRAC_PI_4, PI, TAU};
use std::io::Write;

use num_complex::Complex64 as C64;
use serde_json::json;

use super::args::{DensityArgs, Format, Source};
use super::output::{emit, json_document, num, open, sidecar, write_json, Table};
use super::{config, require_xi, resolve, Resolved};
use crate::adiabatic::{ground_band_state, traveling_amplitudes, Branch};
use crate::density::{periodicity, reduced_density, uniformity, DensityProfile, SampledAmplitudes};
use crate::error::{invalid, Result};
use crate::stationary::{amplitudes_on_grid, solve_joint};

pub(crate) fn default_source(alpha: f64) -> Source {
    if alpha == 0.0 {
        Source::Traveling
    } else {
        Source::Floquet
    }
}

pub(crate) fn amplitudes(r: &Resolved, source: Source, p: f64, samples: usize, ode_tol: f64) -> Result<(SampledAmplitudes, f64)> {
    let alpha = r.params.alpha.radians();
    match source {
        Source::Floquet => {
            if (alpha - FRAC_PI_4).abs() > 1e-3 {
                return Err(invalid("alpha", "the Floquet source is the standing-wave basis alpha = pi/4"));
            }
            if r.params.n_excitations != 1 {
                return Err(invalid("N", "the Floquet source is for N = 1"));
            }
            let st = ground_band_state(require_xi(r)?, p, samples, ode_tol)?;
            Ok((st.amplitudes, st.eps_rel))
        }
        Source::Traveling => {
            if alpha != 0.0 {
                return Err(invalid("alpha", "the traveling source is the basis alpha = 0"));
            }
            if r.params.n_excitations != 1 {
                return Err(invalid("N", "the traveling source is for N = 1"));
            }
            let t = traveling_amplitudes(require_xi(r)?, p, Branch::Minus);
            let eta = SampledAmplitudes::uniform_grid(samples);
            let wave = |amp: f64, k: f64| eta.iter().map(|&x| C64::from_polar(amp, k * x)).collect();
            Ok((SampledAmplitudes { a: vec![wave(t.a0, t.k0), wave(t.a1, t.k1)], b: vec![], eta: eta.clone() }, t.eps_rel))
        }
        Source::Stationary => {
            let space = r.params.space(p, r.n_max)?;
            let ground = solve_joint(&space, &r.params, p, 1)?.remove(0);
            Ok((amplitudes_on_grid(&ground, samples)?, ground.energy_rel))
        }
    }
}

pub(crate) fn metrics(d: &DensityProfile) -> Result<serde_json::Value> {
    Ok(json!({
        "mean": d.mean(),
        "uniformity": uniformity(d),
        "periodicity_pi": periodicity(d, PI)?,
        "periodicity_2pi": periodicity(d, TAU)?,
    }))
}

pub(crate) fn run(a: &DensityArgs) -> Result<()> {
    let r = resolve(&a.physics)?;
    if a.samples < 16 || a.samples % 2 != 0 {
        return Err(invalid("samples", "need an even count of at least 16"));
    }
    let source = a.source.unwrap_or_else(|| default_source(r.params.alpha.radians()));
    let (amps, eps_rel) = amplitudes(&r, source, a.p, a.samples, a.ode_tol)?;
    let d = reduced_density(&amps);
    let m = metrics(&d)?;

    let mut table = Table::new(vec!["eta", "rho"]);
    for (e, rho) in d.eta.iter().zip(&d.rho) {
        table.push(vec![num(*e), num(*rho)]);
    }
    let source_name = format!("{source:?}").to_lowercase();
    let cfg = config(
        "density",
        &r,
        json!({ "p": a.p, "source": source_name, "samples": a.samples, "ode_tol": a.ode_tol }),
    );
    let notes = [
        ("eps_rel", num(eps_rel)),
        ("mean", num(m["mean"].as_f64().unwrap_or(f64::NAN))),
        ("uniformity", num(m["uniformity"].as_f64().unwrap_or(f64::NAN))),
        ("periodicity_pi", num(m["periodicity_pi"].as_f64().unwrap_or(f64::NAN))),
    ];
    let path = a.out.output.as_deref();
    emit(path, a.out.format, &cfg, &notes, &table, json!({ "metrics": m }))?;
    if let (Format::Csv, Some(p)) = (a.out.format, path) {
        let mut w = open(Some(&sidecar(p, "metrics", "json")))?;
        write_json(&mut *w, &json_document(&cfg, json!({ "eps_rel": eps_rel, "metrics": m })))?;
        w.flush()?;
    }
    Ok(())
}
