use qgraph::weyl::{visibility_report, ResidueEstimate, ResonanceMatch, VisibilityRow};
use qgraph::MetricGraph;
use serde_json::{json, Value};

use super::spectrum::warning_text;
use super::{emit, graph_json, parse_selection, selection_json, unverified_warning, CliError, Outcome};
use crate::args::VisibilityArgs;
use crate::graph_file::parse_graph;
use crate::render::{check, fixed, json_num, lambda_exact, step_text, Table};

fn match_text(g: &MetricGraph, m: &ResonanceMatch) -> String {
    match m {
        ResonanceMatch::Zero => "zero".into(),
        ResonanceMatch::Exact { step, .. } => format!("{} (step {})", lambda_exact(step, g.units()), step_text(step, g.units())),
        ResonanceMatch::Numeric { .. } => "numeric".into(),
    }
}

fn estimate_json(e: &ResidueEstimate<f64>) -> Value {
    json!({
        "rank": e.rank,
        "norm": json_num(e.norm()),
        "singular_values": e.singular_values.iter().map(|&s| json_num(s)).collect::<Vec<_>>(),
        "threshold": json_num(e.threshold),
        "radius": json_num(e.radius),
        "nodes": e.nodes,
    })
}

fn row_json(g: &MetricGraph, r: &VisibilityRow<f64>) -> Value {
    let (kind, step, beta1, beta0_odd) = match &r.resonance {
        ResonanceMatch::Zero => ("zero", None, None, None),
        ResonanceMatch::Exact { step, beta1, beta0_odd } => {
            ("exact", Some(step_text(step, g.units())), Some(*beta1), Some(*beta0_odd))
        }
        ResonanceMatch::Numeric { beta1, beta0_odd } => ("numeric", None, Some(*beta1), Some(*beta0_odd)),
    };
    let residue = match &r.residue {
        Ok(a) => json!({
            "contour": estimate_json(&a.contour),
            "limit": estimate_json(&a.limit),
            "scale": json_num(a.scale),
            "ranks_agree": a.ranks_agree(),
        }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    json!({
        "lambda": json_num(r.lambda),
        "dim_ker": r.dim_ker,
        "rank": r.rank(),
        "dim_r": r.dim_r,
        "match": { "kind": kind, "step": step, "beta1": beta1, "beta0_odd": beta0_odd },
        "gap": json_num(r.gap),
        "residue": residue,
        "identity_holds": r.identity_holds(),
        "visibility": r.visibility().map(|v| v.as_str()),
        "notes": r.notes,
    })
}

pub fn visibility(a: &VisibilityArgs) -> Result<Outcome, CliError> {
    let g = parse_graph(&a.file)?;
    let sel = parse_selection(&g, &a.vertices)?;
    let opts = a.options();
    let rep = visibility_report::<f64>(&g, &sel, a.lambda_max, &opts)?;

    let mut warnings: Vec<String> = unverified_warning(&g, &sel).into_iter().collect();
    warnings.extend(rep.spectral_warnings.iter().map(warning_text));
    for r in &rep.rows {
        match &r.residue {
            Err(e) => warnings.push(format!("lambda = {}: residue not computed: {e}", fixed(r.lambda))),
            Ok(x) if sel.hypotheses_verified() && !r.identity_holds() => warnings.push(format!(
                "lambda = {}: dim ker = rank + dim R fails ({} vs contour {} / limit {} + {})",
                fixed(r.lambda),
                r.dim_ker,
                x.contour.rank,
                x.limit.rank,
                r.dim_r
            )),
            Ok(_) => {}
        }
        // An eigenvalue that matches no candidate step has an empty exact G_lambda;
        // only a tolerance hit on cycles makes the count doubtful.
        if let ResonanceMatch::Numeric { beta1, .. } = r.resonance {
            if beta1 > 0 {
                warnings.push(format!(
                    "lambda = {}: matches no candidate step, yet edges within tolerance form cycles; dim R = {} is not certified",
                    fixed(r.lambda),
                    r.dim_r
                ));
            }
        }
    }

    let mut table = Table::new(&[
        "lambda", "dim_ker", "rank_contour", "rank_limit", "dim_R", "match", "identity", "class", "notes",
    ]);
    for r in &rep.rows {
        let (rc, rl) = match &r.residue {
            Ok(x) => (x.contour.rank.to_string(), x.limit.rank.to_string()),
            Err(_) => ("-".into(), "-".into()),
        };
        table.push(vec![
            fixed(r.lambda),
            r.dim_ker.to_string(),
            rc,
            rl,
            r.dim_r.to_string(),
            match_text(&g, &r.resonance),
            check(r.identity_holds()),
            r.visibility().map_or("-", |v| v.as_str()).to_string(),
            r.notes.join("; "),
        ]);
    }
    let ro = &opts.residue;
    let so = &opts.spectral;
    let doc = json!({
        "command": "visibility",
        "graph": graph_json(&a.file, &g),
        "options": {
            "lambda_max": json_num(a.lambda_max),
            "vertices": a.vertices,
            "scan_factor": json_num(so.scan_factor),
            "refine_tol": json_num(so.refine_rel_tol),
            "nullity_tol": json_num(so.nullity_tol),
            "cluster_factor": json_num(so.cluster_factor),
            "r_max": json_num(ro.r_max),
            "nodes_initial": ro.nodes_initial,
            "nodes_max": ro.nodes_max,
            "contour_tol": json_num(ro.contour_tol),
            "rank_tol": json_num(ro.rank_tol),
            "abs_floor": json_num(ro.abs_floor),
            "limit_radius_factor": json_num(ro.limit_radius_factor),
            "min_gap": json_num(ro.min_gap),
            "cond_max": json_num(ro.cond_max),
            "match_tol": json_num(opts.match_tol),
            "numeric_tol": json_num(opts.numeric_rel_tol),
        },
        "selection": selection_json(&g, &sel),
        "rows": rep.rows.iter().map(|r| row_json(&g, r)).collect::<Vec<_>>(),
        "all_identities_hold": rep.all_identities_hold(),
        "warnings": warnings,
    });
    let ids: Vec<&str> = sel.vertices.iter().map(|&v| g.vertex_id(v)).collect();
    let preamble = [format!(
        "# B = {{{}}} ({}), identity holds on all rows: {}",
        ids.join(","),
        if sel.auto { "auto" } else { "explicit" },
        check(rep.all_identities_hold())
    )];
    Ok(Outcome {
        stdout: emit(a.format, &table, &preamble, doc),
        warnings,
    })
}
