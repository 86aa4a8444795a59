use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qgraph::spectral::SpectralOptions;
use qgraph::weyl::{ResidueOptions, TwOptions, VisibilityOptions};

#[derive(Debug, Parser)]
#[command(
    name = "qgraph",
    version,
    about = "Eigenvalues, real resonances and Neumann-to-Dirichlet maps of metric graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues of the Kirchhoff Laplacian up to a cutoff.
    Spectrum(SpectrumArgs),
    /// Exact resonance dimensions at every candidate step up to a cutoff.
    Resonances(ResonancesArgs),
    /// The Neumann-to-Dirichlet matrix at one spectral parameter.
    Tw(TwArgs),
    /// Which eigenvalues show up as poles of the Neumann-to-Dirichlet matrix.
    Visibility(VisibilityArgs),
    /// Integer basis of the resonance space at one step.
    Basis(BasisArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, Args)]
pub struct SpectralKnobs {
    /// Scan grid step as a fraction of pi / (2 L_total).
    #[arg(long, default_value_t = 0.1)]
    pub scan_factor: f64,
    /// Relative bracket width at which minimum refinement stops.
    #[arg(long, default_value_t = 1e-12)]
    pub refine_tol: f64,
    /// Singular values below nullity_tol * sigma_max count as zero.
    #[arg(long, default_value_t = 1e-8)]
    pub nullity_tol: f64,
    /// Minima closer than this many bracket widths are merged.
    #[arg(long, default_value_t = 10.0)]
    pub cluster_factor: f64,
}

impl SpectralKnobs {
    pub fn options(&self, record_scan: bool) -> SpectralOptions {
        SpectralOptions {
            scan_factor: self.scan_factor,
            refine_rel_tol: self.refine_tol,
            nullity_tol: self.nullity_tol,
            cluster_factor: self.cluster_factor,
            record_scan,
        }
    }
}

#[derive(Clone, Copy, Debug, Args)]
pub struct ResidueKnobs {
    /// Largest contour radius around an eigenvalue.
    #[arg(long, default_value_t = 0.5)]
    pub r_max: f64,
    #[arg(long, default_value_t = 64)]
    pub nodes_initial: usize,
    #[arg(long, default_value_t = 8192)]
    pub nodes_max: usize,
    /// Relative change at which node doubling stops.
    #[arg(long, default_value_t = 1e-10)]
    pub contour_tol: f64,
    /// Residue singular values below rank_tol * sigma_1 are dropped.
    #[arg(long, default_value_t = 1e-8)]
    pub rank_tol: f64,
    /// Absolute rank floor relative to the matrix norm on the contour.
    #[arg(long, default_value_t = 1e-12)]
    pub abs_floor: f64,
    /// Offset of the limit estimate as a fraction of the contour radius.
    #[arg(long, default_value_t = 1e-3)]
    pub limit_radius_factor: f64,
    /// Smallest relative spectral gap that admits a contour.
    #[arg(long, default_value_t = 1e-8)]
    pub min_gap: f64,
    /// Largest accepted condition number of the boundary system.
    #[arg(long, default_value_t = 1e12)]
    pub cond_max: f64,
}

impl ResidueKnobs {
    pub fn options(&self) -> ResidueOptions {
        ResidueOptions {
            r_max: self.r_max,
            nodes_initial: self.nodes_initial,
            nodes_max: self.nodes_max,
            contour_tol: self.contour_tol,
            rank_tol: self.rank_tol,
            abs_floor: self.abs_floor,
            limit_radius_factor: self.limit_radius_factor,
            min_gap: self.min_gap,
            cond_max: self.cond_max,
        }
    }
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub lambda_max: f64,
    #[command(flatten)]
    pub knobs: SpectralKnobs,
    /// Write the (k, sigma_min) scan trace to this CSV file.
    #[arg(long, value_name = "PATH")]
    pub emit_scan: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ResonancesArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub lambda_max: Option<f64>,
    /// Report a single, possibly inexact, lambda instead of all candidates.
    #[arg(long, value_name = "LAMBDA", conflicts_with = "lambda_max")]
    pub at: Option<f64>,
    /// Only list rows with a nontrivial resonance space.
    #[arg(long)]
    pub only_resonant: bool,
    /// `--at` matches a candidate step when |lambda - pi^2/s^2| <= match_tol * max(1, lambda).
    #[arg(long, default_value_t = 1e-6)]
    pub match_tol: f64,
    /// Relative tolerance of the non-certified membership test used by `--at`.
    #[arg(long, default_value_t = qgraph::length::DEFAULT_NUMERIC_REL_TOL)]
    pub numeric_tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TwArgs {
    pub file: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    pub mu_re: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub mu_im: f64,
    /// `auto` or a comma-separated list of vertex ids.
    #[arg(long, default_value = "auto")]
    pub vertices: String,
    #[arg(long, default_value_t = 1e12)]
    pub cond_max: f64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

impl TwArgs {
    pub fn options(&self) -> TwOptions {
        TwOptions {
            cond_max: self.cond_max,
        }
    }
}

#[derive(Debug, Args)]
pub struct VisibilityArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub lambda_max: f64,
    /// `auto` or a comma-separated list of vertex ids.
    #[arg(long, default_value = "auto")]
    pub vertices: String,
    #[command(flatten)]
    pub spectral: SpectralKnobs,
    #[command(flatten)]
    pub residue: ResidueKnobs,
    /// An eigenvalue matches a step when |lambda - pi^2/s^2| <= match_tol * max(1, lambda).
    #[arg(long, default_value_t = 1e-6)]
    pub match_tol: f64,
    /// Relative tolerance of the non-certified membership test for unmatched eigenvalues.
    #[arg(long, default_value_t = qgraph::length::DEFAULT_NUMERIC_REL_TOL)]
    pub numeric_tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

impl VisibilityArgs {
    pub fn options(&self) -> VisibilityOptions {
        VisibilityOptions {
            spectral: self.spectral.options(false),
            residue: self.residue.options(),
            match_tol: self.match_tol,
            numeric_rel_tol: self.numeric_tol,
        }
    }
}

#[derive(Debug, Args)]
pub struct BasisArgs {
    pub file: PathBuf,
    /// Step as `<p>/<q> <unit>`, either as two words or one quoted string.
    #[arg(long, num_args = 1..=2, value_names = ["P/Q", "UNIT"], required = true)]
    pub step: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}
