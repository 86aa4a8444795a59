//! One function per subcommand. Each returns the text for stdout plus any
//! numerical-confidence warnings; printing and exit codes live in [`crate::run`].

mod basis;
mod resonances;
mod spectrum;
mod tw;
mod visibility;

pub use basis::basis;
pub use resonances::resonances;
pub use spectrum::spectrum;
pub use tw::tw;
pub use visibility::visibility;

use std::path::{Path, PathBuf};

use qgraph::length::LengthError;
use qgraph::resonance::ResonanceError;
use qgraph::spectral::SpectralError;
use qgraph::weyl::{select_b, SelectionMode, VertexSelection, WeylError};
use qgraph::MetricGraph;
use serde_json::{json, Value};
use thiserror::Error;

use crate::args::Format;
use crate::graph_file::GraphFileError;
use crate::render::{json_num, Table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    GraphFile(#[from] GraphFileError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Resonance(#[from] ResonanceError),
    #[error(transparent)]
    Length(#[from] LengthError),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// What a subcommand produced.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub warnings: Vec<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.warnings.is_empty() { 0 } else { 2 }
    }
}

/// `auto` or a comma-separated list of vertex ids.
pub fn parse_selection(g: &MetricGraph, text: &str) -> Result<VertexSelection, CliError> {
    let text = text.trim();
    let mode = if text == "auto" {
        SelectionMode::Auto
    } else {
        let ids = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|id| {
                g.vertex_by_id(id)
                    .ok_or_else(|| CliError::Usage(format!("unknown vertex `{id}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        SelectionMode::Explicit(ids)
    };
    Ok(select_b(g, mode)?)
}

pub(crate) fn selection_json(g: &MetricGraph, sel: &VertexSelection) -> Value {
    let ids = |vs: &[usize]| vs.iter().map(|&v| g.vertex_id(v).to_string()).collect::<Vec<_>>();
    json!({
        "vertices": ids(&sel.vertices),
        "auto": sel.auto,
        "missing_from_auto": ids(&sel.missing),
        "hypotheses_verified": sel.hypotheses_verified(),
    })
}

pub(crate) fn unverified_warning(g: &MetricGraph, sel: &VertexSelection) -> Option<String> {
    (!sel.hypotheses_verified()).then(|| {
        let missing: Vec<&str> = sel.missing.iter().map(|&v| g.vertex_id(v)).collect();
        format!(
            "hypotheses unverified: B does not contain {}; dim ker = rank + dim R is not guaranteed",
            missing.join(",")
        )
    })
}

pub(crate) fn graph_json(path: &Path, g: &MetricGraph) -> Value {
    let units: Vec<Value> = g
        .units()
        .iter()
        .map(|(_, t, v)| json!({ "token": t, "value": json_num(v) }))
        .collect();
    json!({
        "file": path.display().to_string(),
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "units": units,
    })
}

pub(crate) fn emit(format: Format, table: &Table, preamble: &[String], json: Value) -> String {
    match format {
        Format::Table => {
            let mut s: String = preamble.iter().map(|l| format!("{l}\n")).collect();
            s.push_str(&table.to_text());
            s
        }
        Format::Csv => table.to_csv(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json).expect("json values serialise");
            s.push('\n');
            s
        }
    }
}
