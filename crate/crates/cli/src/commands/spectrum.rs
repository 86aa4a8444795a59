use qgraph::spectral::{eigenvalues_in, SpectralWarning};
use serde_json::{json, Value};

use super::{emit, graph_json, CliError, Outcome};
use crate::args::SpectrumArgs;
use crate::graph_file::parse_graph;
use crate::render::{fixed, json_num, sci, Table};

pub(crate) fn warning_text(w: &SpectralWarning<f64>) -> String {
    match w {
        SpectralWarning::Cluster { k_first, k_second } => format!(
            "eigenvalue cluster: minima at k = {k_first} and {k_second} merged into one eigenvalue"
        ),
        SpectralWarning::AmbiguousThreshold { k, sigma, threshold } => format!(
            "ambiguous multiplicity at k = {k}: singular value {sigma:e} is near the threshold {threshold:e}"
        ),
    }
}

pub fn spectrum(a: &SpectrumArgs) -> Result<Outcome, CliError> {
    let g = parse_graph(&a.file)?;
    let opts = a.knobs.options(a.emit_scan.is_some());
    let s = eigenvalues_in::<f64>(&g, a.lambda_max, &opts)?;
    let warnings: Vec<String> = s.warnings.iter().map(warning_text).collect();

    if let Some(path) = &a.emit_scan {
        let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Write {
            path: path.clone(),
            source: e.into(),
        })?;
        let io = |e: csv::Error| CliError::Write {
            path: path.clone(),
            source: e.into(),
        };
        w.write_record(["k", "sigma_min"]).map_err(io)?;
        for (k, sigma) in &s.scan {
            w.write_record([format!("{k:e}"), format!("{sigma:e}")]).map_err(io)?;
        }
        w.flush().map_err(|e| CliError::Write {
            path: path.clone(),
            source: e,
        })?;
    }

    let mut table = Table::new(&["lambda", "k", "multiplicity", "sigma_min", "threshold"]);
    for e in &s.eigenvalues {
        table.push(vec![
            fixed(e.lambda),
            fixed(e.k),
            e.multiplicity.to_string(),
            sci(e.sigma_min),
            sci(e.threshold),
        ]);
    }
    let rows: Vec<Value> = s
        .eigenvalues
        .iter()
        .map(|e| {
            json!({
                "lambda": json_num(e.lambda),
                "k": json_num(e.k),
                "multiplicity": e.multiplicity,
                "sigma_min": json_num(e.sigma_min),
                "sigma_max": json_num(e.sigma_max),
                "threshold": json_num(e.threshold),
                "bracket_width": json_num(e.bracket_width),
                "iterations": e.iterations,
            })
        })
        .collect();
    let doc = json!({
        "command": "spectrum",
        "graph": graph_json(&a.file, &g),
        "options": {
            "lambda_max": json_num(a.lambda_max),
            "scan_factor": json_num(opts.scan_factor),
            "refine_tol": json_num(opts.refine_rel_tol),
            "nullity_tol": json_num(opts.nullity_tol),
            "cluster_factor": json_num(opts.cluster_factor),
            "grid_step": json_num(s.grid_step),
            "emit_scan": a.emit_scan.as_ref().map(|p| p.display().to_string()),
        },
        "eigenvalues": rows,
        "count_with_multiplicity": s.count(),
        "warnings": warnings,
    });
    let preamble = [format!(
        "# {} eigenvalues in [0, {}], {} with multiplicity",
        s.eigenvalues.len(),
        a.lambda_max,
        s.count()
    )];
    Ok(Outcome {
        stdout: emit(a.format, &table, &preamble, doc),
        warnings,
    })
}
