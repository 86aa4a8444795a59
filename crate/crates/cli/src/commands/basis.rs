use num_bigint::BigInt;
use num_rational::BigRational;
use qgraph::resonance::{check_scar, resonance_basis};
use qgraph::{Measure, MetricGraph, Step};
use serde_json::json;

use super::{emit, graph_json, CliError, Outcome};
use crate::args::BasisArgs;
use crate::graph_file::parse_graph;
use crate::render::{fixed, json_num, lambda_exact, step_text, Table};

/// `p/q unit` (or `p unit`) against the graph's declared units.
pub fn parse_step(g: &MetricGraph, words: &[String]) -> Result<Step, CliError> {
    let joined = words.join(" ");
    let parts: Vec<&str> = joined.split_whitespace().collect();
    let usage = || CliError::Usage(format!("--step expects `<p>/<q> <unit>`, got `{joined}`"));
    let [coeff, unit] = parts[..] else {
        return Err(usage());
    };
    let (p, q) = coeff.split_once('/').unwrap_or((coeff, "1"));
    let p: BigInt = p.parse().map_err(|_| usage())?;
    let q: BigInt = q.parse().map_err(|_| usage())?;
    if q == BigInt::from(0) {
        return Err(usage());
    }
    let id = g
        .units()
        .id(unit)
        .ok_or_else(|| CliError::Usage(format!("unit `{unit}` is not declared in the graph")))?;
    Ok(Measure::new(BigRational::new(p, q), id)?)
}

pub fn basis(a: &BasisArgs) -> Result<Outcome, CliError> {
    let g = parse_graph(&a.file)?;
    let step = parse_step(&g, &a.step)?;
    let rep = resonance_basis(&g, &step)?;
    let functions = rep.basis.clone().unwrap_or_default();
    let edge_ids: Vec<&str> = g.edges().iter().map(|e| e.id.as_str()).collect();

    let mut headers = vec!["function"];
    headers.extend(edge_ids.iter().copied());
    let mut table = Table::new(&headers);
    for (i, f) in functions.iter().enumerate() {
        let mut row = vec![i.to_string()];
        row.extend(f.b.iter().map(|b| b.to_string()));
        table.push(row);
    }
    let fj: Vec<_> = functions
        .iter()
        .map(|f| {
            json!({
                "coefficients": f.b,
                "support": f.support().iter().map(|&e| edge_ids[e]).collect::<Vec<_>>(),
                "verified": check_scar(&g, &rep.subgraph, f).is_ok(),
            })
        })
        .collect();
    let doc = json!({
        "command": "basis",
        "graph": graph_json(&a.file, &g),
        "options": { "step": step_text(&step, g.units()) },
        "lambda": json_num(rep.lambda),
        "lambda_exact": lambda_exact(&step, g.units()),
        "profile": "f_e(x) = b_e sin(pi x / s) on edge e, x measured from its origin",
        "edges": edge_ids,
        "g_lambda": rep.subgraph.members().iter().map(|m| json!({
            "edge": edge_ids[m.edge],
            "multiplicity": m.multiplicity.to_string(),
        })).collect::<Vec<_>>(),
        "beta1": rep.beta1,
        "beta0_odd": rep.beta0_odd,
        "dim_r": rep.dim_r,
        "functions": fj,
        "warnings": Vec::<String>::new(),
    });
    let preamble = [format!(
        "# step {}, lambda = {} = {}, dim R = {}",
        step_text(&step, g.units()),
        fixed(rep.lambda),
        lambda_exact(&step, g.units()),
        rep.dim_r
    )];
    Ok(Outcome {
        stdout: emit(a.format, &table, &preamble, doc),
        warnings: Vec::new(),
    })
}
