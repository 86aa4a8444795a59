use qgraph::graph::CycleError;
use qgraph::length::{build_lambda_subgraph_numeric, candidate_steps, lambda_g, LambdaG};
use qgraph::resonance::{dim_r, report_for, ResonanceReport};
use qgraph::MetricGraph;
use serde_json::{json, Value};

use super::{emit, graph_json, CliError, Outcome};
use crate::args::ResonancesArgs;
use crate::graph_file::parse_graph;
use crate::render::{check, fixed, json_num, lambda_exact, step_text, Table};

fn lambda_g_json(g: &MetricGraph, lg: &Result<LambdaG<f64>, CycleError>) -> Value {
    match lg {
        Ok(lg) => {
            let witness = lg.witness.as_ref().map(|(c, u)| {
                json!({
                    "cycle": c.steps.iter().map(|s| g.edge(s.edge).id.clone()).collect::<Vec<_>>(),
                    "unit": step_text(u, g.units()),
                })
            });
            json!({
                "value": json_num(lg.value),
                "exact": lg.witness.as_ref().map(|(_, u)| lambda_exact(u, g.units())),
                "witness": witness,
            })
        }
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn lambda_g_line(g: &MetricGraph, lg: &Result<LambdaG<f64>, CycleError>) -> String {
    match lg {
        Ok(LambdaG { witness: Some((c, u)), value }) => {
            let ids: Vec<&str> = c.steps.iter().map(|s| g.edge(s.edge).id.as_str()).collect();
            format!(
                "# lambda_G = {} = {} (cycle {}, common unit {})",
                fixed(*value),
                lambda_exact(u, g.units()),
                ids.join(","),
                step_text(u, g.units())
            )
        }
        Ok(_) => "# lambda_G = inf (no commensurate cycle)".to_string(),
        Err(e) => format!("# lambda_G unknown: {e}"),
    }
}

fn row_cells(g: &MetricGraph, r: &ResonanceReport) -> Vec<String> {
    let (exact, step, step_value) = match r.step() {
        Some(s) => (
            lambda_exact(s, g.units()),
            step_text(s, g.units()),
            fixed(s.approx::<f64>(g.units())),
        ),
        None => ("-".into(), "-".into(), fixed(std::f64::consts::PI / r.lambda.sqrt())),
    };
    vec![
        fixed(r.lambda),
        exact,
        step,
        step_value,
        r.beta1.to_string(),
        r.beta0_odd.to_string(),
        r.dim_r.to_string(),
        check(r.is_resonance()),
    ]
}

fn row_json(g: &MetricGraph, r: &ResonanceReport) -> Value {
    json!({
        "lambda": json_num(r.lambda),
        "lambda_exact": r.step().map(|s| lambda_exact(s, g.units())),
        "step": r.step().map(|s| step_text(s, g.units())),
        "certified": r.subgraph.is_certified(),
        "g_lambda": r.subgraph.members().iter().map(|m| json!({
            "edge": g.edge(m.edge).id,
            "multiplicity": m.multiplicity.to_string(),
        })).collect::<Vec<_>>(),
        "beta1": r.beta1,
        "beta0_odd": r.beta0_odd,
        "dim_r": r.dim_r,
        "resonance": r.is_resonance(),
    })
}

pub fn resonances(a: &ResonancesArgs) -> Result<Outcome, CliError> {
    let g = parse_graph(&a.file)?;
    let mut warnings = Vec::new();
    let reports: Vec<ResonanceReport> = match (a.at, a.lambda_max) {
        (Some(at), _) => {
            if !(at > 0.0 && at.is_finite()) {
                return Err(CliError::Usage(format!("--at must be a positive number, got {at}")));
            }
            let tol = a.match_tol * at.max(1.0);
            let matched = candidate_steps::<f64>(&g, at + tol)
                .into_iter()
                .filter(|c| (c.lambda - at).abs() <= tol)
                .min_by(|x, y| (x.lambda - at).abs().total_cmp(&(y.lambda - at).abs()));
            vec![match matched {
                Some(c) => dim_r(&g, &c.step)?,
                None => {
                    warnings.push(format!(
                        "lambda = {at} matches no candidate step: G_lambda found by relative tolerance {} and not certified",
                        a.numeric_tol
                    ));
                    report_for(&g, build_lambda_subgraph_numeric(&g, at, a.numeric_tol))
                }
            }]
        }
        (None, Some(lmax)) => candidate_steps::<f64>(&g, lmax)
            .iter()
            .map(|c| dim_r(&g, &c.step))
            .collect::<Result<_, _>>()?,
        (None, None) => return Err(CliError::Usage("one of --lambda-max or --at is required".into())),
    };
    let reports: Vec<ResonanceReport> = reports
        .into_iter()
        .filter(|r| !a.only_resonant || r.is_resonance())
        .collect();
    let lg = lambda_g::<f64>(&g);
    if let Err(e) = &lg {
        warnings.push(format!("lambda_G not computed: {e}"));
    }

    let mut table = Table::new(&[
        "lambda", "exact", "step", "pi/sqrt(lambda)", "beta1", "beta0_odd", "dim_R", "resonance",
    ]);
    for r in &reports {
        table.push(row_cells(&g, r));
    }
    let doc = json!({
        "command": "resonances",
        "graph": graph_json(&a.file, &g),
        "options": {
            "lambda_max": a.lambda_max.map(json_num),
            "at": a.at.map(json_num),
            "only_resonant": a.only_resonant,
            "match_tol": json_num(a.match_tol),
            "numeric_tol": json_num(a.numeric_tol),
        },
        "lambda_g": lambda_g_json(&g, &lg),
        "rows": reports.iter().map(|r| row_json(&g, r)).collect::<Vec<_>>(),
        "warnings": warnings,
    });
    let preamble = [lambda_g_line(&g, &lg)];
    Ok(Outcome {
        stdout: emit(a.format, &table, &preamble, doc),
        warnings,
    })
}
