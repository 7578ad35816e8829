use std::io::Write;

use serde_json::json;

use super::args::{BandsArgs, Format};
use super::output::{json_document, num, open, opt_num, sidecar, table_json, write_csv, write_csv_table, write_json, Table};
use super::{config, require_xi, resolve};
use crate::adiabatic::{band_structure, mathieu_bands, BandStructure};
use crate::error::Result;

/// Floquet edges inside the scan range paired with Mathieu edges. A pair is
/// formed when the two lie within `xi^2/4` (the size of the dropped term);
/// unmatched edges keep an empty partner.
pub fn pair_edges(bs: &BandStructure, mathieu: &[f64]) -> Vec<(Option<f64>, Option<f64>)> {
    let (lo, hi) = bs.eps_range;
    let floquet: Vec<f64> = bs.edges().into_iter().filter(|&e| e > lo && e < hi).collect();
    let reach = 0.25 * bs.xi * bs.xi + 1e-6;
    let mut used = vec![false; mathieu.len()];
    let mut pairs: Vec<(Option<f64>, Option<f64>)> = floquet
        .iter()
        .map(|&f| {
            let best = mathieu
                .iter()
                .enumerate()
                .filter(|(k, m)| !used[*k] && (*m - f).abs() <= reach)
                .min_by(|a, b| (a.1 - f).abs().total_cmp(&(b.1 - f).abs()));
            match best {
                Some((k, &m)) => {
                    used[k] = true;
                    (Some(f), Some(m))
                }
                None => (Some(f), None),
            }
        })
        .collect();
    for (k, &m) in mathieu.iter().enumerate() {
        if !used[k] && m > lo && m < hi {
            pairs.push((None, Some(m)));
        }
    }
    pairs.sort_by(|a, b| a.0.or(a.1).unwrap().total_cmp(&b.0.or(b.1).unwrap()));
    pairs
}

pub(crate) fn run(a: &BandsArgs) -> Result<()> {
    let r = resolve(&a.physics)?;
    let xi = require_xi(&r)?;
    let bs = band_structure(xi, a.p, (a.eps_min, a.eps_max), a.eps_step, a.ode_tol)?;
    let mathieu = if a.p.abs() < 2.0 {
        let levels = ((a.eps_max + xi).max(0.0).sqrt().ceil() as usize) + 2;
        mathieu_bands(xi, a.p, levels)?.edges
    } else {
        log::warn!("|p| >= 2: no Mathieu mapping, edges column left empty");
        Vec::new()
    };

    let mut samples = Table::new(vec!["band_index", "eps_rel", "p_quasi"]);
    for b in &bs.bands {
        for (e, q) in b.eps.iter().zip(&b.p_quasi) {
            samples.push(vec![b.index.to_string(), num(*e), num(*q)]);
        }
    }
    let mut edges = Table::new(vec!["edge_index", "floquet", "mathieu", "disagreement"]);
    for (k, (f, m)) in pair_edges(&bs, &mathieu).into_iter().enumerate() {
        let d = f.zip(m).map(|(f, m)| (f - m).abs());
        edges.push(vec![k.to_string(), opt_num(f), opt_num(m), opt_num(d)]);
    }
    let gaps: Vec<_> = bs.gaps.iter().map(|g| json!({ "index": g.index, "lower": g.lower, "upper": g.upper, "width": g.width })).collect();

    let cfg = config(
        "bands",
        &r,
        json!({ "p": a.p, "eps_range": [a.eps_min, a.eps_max], "eps_step": a.eps_step, "ode_tol": a.ode_tol, "form": "full" }),
    );
    let notes = [("max_imag_trace", num(bs.max_imag_trace)), ("gaps", bs.gaps.len().to_string())];
    let path = a.out.output.as_deref();
    match a.out.format {
        Format::Csv => {
            let mut w = open(path)?;
            write_csv(&mut *w, &cfg, &notes, &samples)?;
            match path {
                Some(p) => {
                    let mut e = open(Some(&sidecar(p, "edges", "csv")))?;
                    write_csv(&mut *e, &cfg, &notes, &edges)?;
                    e.flush()?;
                }
                None => {
                    writeln!(w)?;
                    write_csv_table(&mut *w, &edges)?;
                }
            }
            w.flush()?;
        }
        Format::Json => {
            let data = json!({
                "rows": table_json(&samples),
                "gaps": gaps,
                "edges": table_json(&edges),
                "max_imag_trace": bs.max_imag_trace,
            });
            let mut w = open(path)?;
            write_json(&mut *w, &json_document(&cfg, data))?;
            w.flush()?;
        }
    }
    Ok(())
}
