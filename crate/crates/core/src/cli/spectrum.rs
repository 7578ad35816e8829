use serde_json::json;

use super::args::SpectrumArgs;
use super::output::{emit, num, Table};
use super::{config, require_xi, resolve};
use crate::adiabatic::spectrum_traveling;
use crate::error::{invalid, Result};
use crate::stationary::{brillouin_scan, reduce_traveling, scan_gaps};

pub(crate) fn momenta(a: &SpectrumArgs) -> Result<Vec<f64>> {
    if let Some(p) = a.p {
        return Ok(vec![p]);
    }
    if a.p_steps == 0 || !(a.p_min <= a.p_max) {
        return Err(invalid("p-range", format!("empty range [{}, {}] with {} steps", a.p_min, a.p_max, a.p_steps)));
    }
    if a.p_steps == 1 {
        return Ok(vec![a.p_min]);
    }
    let h = (a.p_max - a.p_min) / (a.p_steps - 1) as f64;
    Ok((0..a.p_steps).map(|k| a.p_min + k as f64 * h).collect())
}

pub(crate) fn run(a: &SpectrumArgs) -> Result<()> {
    let r = resolve(&a.physics)?;
    let ps = momenta(a)?;
    let traveling = r.params.alpha.radians() == 0.0;
    if a.adiabatic && !traveling {
        return Err(invalid("adiabatic", "the closed-form overlay exists only for alpha = 0"));
    }
    if a.adiabatic && r.params.n_excitations != 1 {
        return Err(invalid("adiabatic", "the closed-form overlay is for N = 1"));
    }
    let mut table = Table::new(vec!["p", "branch", "eps_rel", "source"]);
    let mut extra = json!({});
    if traveling {
        for &p in &ps {
            let sys = reduce_traveling(&r.params, p)?;
            for (k, e) in sys.energies.iter().enumerate() {
                table.push(vec![num(p), k.to_string(), num(*e), "full".into()]);
            }
        }
        if a.adiabatic {
            let xi = require_xi(&r)?;
            for &p in &ps {
                let (em, ep) = spectrum_traveling(xi, p);
                table.push(vec![num(p), "0".into(), num(em), "adiabatic".into()]);
                table.push(vec![num(p), "1".into(), num(ep), "adiabatic".into()]);
            }
        }
    } else {
        let points = brillouin_scan(&r.params, r.n_max, &ps, a.k)?;
        for pt in &points {
            for (k, e) in pt.energies_rel.iter().enumerate() {
                table.push(vec![num(pt.p), k.to_string(), num(*e), "scan".into()]);
            }
        }
        let gaps: Vec<_> = scan_gaps(&points).into_iter().map(|(lo, hi)| json!({ "lower": lo, "upper": hi })).collect();
        extra = json!({ "gaps": gaps });
    }
    let cfg = config(
        "spectrum",
        &r,
        json!({ "momenta": ps, "branches": a.k, "adiabatic": a.adiabatic, "mode": if traveling { "closed-system" } else { "q-scan" } }),
    );
    emit(a.out.output.as_deref(), a.out.format, &cfg, &[], &table, extra)
}
