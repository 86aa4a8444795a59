use num_complex::Complex;
use qgraph::linalg::{svd, Matrix};
use qgraph::weyl::tw_matrix;
use serde_json::{json, Value};

use super::{emit, graph_json, parse_selection, selection_json, CliError, Outcome};
use crate::args::TwArgs;
use crate::graph_file::parse_graph;
use crate::render::{json_num, sci, Table};

fn cell(z: Complex<f64>) -> String {
    format!("{:.12e}{:+.12e}i", z.re, z.im)
}

/// Sign pattern of the real symmetric matrix `Im M`, read off as
/// `v^T (Im M) v` over its singular vectors (which are eigenvectors).
fn imaginary_part_sign(m: &Matrix<Complex<f64>>) -> &'static str {
    let n = m.rows();
    let mut im = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            im[(i, j)] = 0.5 * (m[(i, j)].im + m[(j, i)].im);
        }
    }
    let d = svd(&im, true);
    let scale = d.max();
    let v = d.v.expect("vectors requested");
    let eig = (0..n).map(|c| {
        (0..n)
            .map(|i| (0..n).map(|j| v[(i, c)] * im[(i, j)] * v[(j, c)]).sum::<f64>())
            .sum::<f64>()
    });
    let tol = 1e-12 * scale;
    let (mut pos, mut neg) = (false, false);
    for e in eig {
        pos |= e > tol;
        neg |= e < -tol;
    }
    match (pos, neg) {
        (true, false) => "positive",
        (false, true) => "negative",
        (true, true) => "indefinite",
        (false, false) => "zero",
    }
}

pub fn tw(a: &TwArgs) -> Result<Outcome, CliError> {
    let g = parse_graph(&a.file)?;
    let sel = parse_selection(&g, &a.vertices)?;
    let mu = Complex::new(a.mu_re, a.mu_im);
    let m = tw_matrix::<f64>(&g, &sel, mu, &a.options())?;
    let ids: Vec<&str> = m.vertices.iter().map(|&v| g.vertex_id(v)).collect();

    let mut headers = vec!["vertex"];
    headers.extend(ids.iter().copied());
    let mut table = Table::new(&headers);
    for (i, id) in ids.iter().enumerate() {
        let mut row = vec![id.to_string()];
        row.extend((0..ids.len()).map(|j| cell(m.matrix[(i, j)])));
        table.push(row);
    }
    let matrix: Vec<Value> = (0..ids.len())
        .map(|i| {
            (0..ids.len())
                .map(|j| json!([json_num(m.matrix[(i, j)].re), json_num(m.matrix[(i, j)].im)]))
                .collect()
        })
        .collect();
    let norm = m.frobenius();
    let asym = if norm > 0.0 { m.asymmetry() / norm } else { 0.0 };
    let doc = json!({
        "command": "tw",
        "graph": graph_json(&a.file, &g),
        "options": {
            "mu": [json_num(a.mu_re), json_num(a.mu_im)],
            "cond_max": json_num(a.cond_max),
        },
        "selection": selection_json(&g, &sel),
        "matrix": matrix,
        "condition": json_num(m.condition),
        "frobenius_norm": json_num(norm),
        "relative_asymmetry": json_num(asym),
        // diagnostic only; not checked against anything
        "imaginary_part_sign": imaginary_part_sign(&m.matrix),
        "warnings": Vec::<String>::new(),
    });
    let preamble = [format!(
        "# M_B({}{:+}i), condition {}, relative asymmetry {}",
        a.mu_re,
        a.mu_im,
        sci(m.condition),
        sci(asym)
    )];
    Ok(Outcome {
        stdout: emit(a.format, &table, &preamble, doc),
        warnings: Vec::new(),
    })
}
