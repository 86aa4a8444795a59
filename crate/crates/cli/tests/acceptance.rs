//! End-to-end acceptance checks. Runs without the libtest harness so every
//! criterion prints exactly one `PASS`/`FAIL` line; exits non-zero on any failure.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex;
use qgraph::length::{candidate_steps, lambda_g, step_lambda};
use qgraph::linalg::rank_fraction_free;
use qgraph::resonance::{check_scar, dim_r, dim_r_oracle, resonance_basis};
use qgraph::spectral::{eigenvalues_in, SpectralOptions};
use qgraph::weyl::{
    residue_estimates, select_b, spectral_gap, tw_matrix, visibility_report, SelectionMode, TwOptions,
    Visibility, VisibilityOptions,
};
use qgraph::{GraphSpec, MetricGraph, Step};
use qgraph_cli::graph_file::parse_graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SUITE_SEED: u64 = 0x9a7e_2026;
const SUITE_SIZE: usize = 200;
const MAX_MULTIPLICITY: u64 = 8;

type Check = Result<String, String>;

fn bundled(name: &str) -> MetricGraph {
    parse_graph(&Path::new(env!("CARGO_MANIFEST_DIR")).join("graphs").join(name)).expect("bundled graph")
}

fn suite() -> Vec<MetricGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    (0..SUITE_SIZE).map(|_| common::random_graph(&mut rng)).collect()
}

fn within(elapsed: Duration, limit_s: f64) -> Result<(), String> {
    if elapsed.as_secs_f64() < limit_s {
        Ok(())
    } else {
        Err(format!("took {:.2} s, limit {limit_s} s", elapsed.as_secs_f64()))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

/// Golden resonance table of the dumbbell, through the binary.
fn criterion_1() -> Check {
    let t = Instant::now();
    let file = Path::new(env!("CARGO_MANIFEST_DIR")).join("graphs/dumbbell.qg");
    let out = Command::new(env!("CARGO_BIN_EXE_qgraph"))
        .args(["resonances", file.to_str().unwrap(), "--lambda-max", "14", "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    ensure(out.status.code() == Some(0), || format!("exit status {:?}", out.status))?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let got: Vec<(f64, u64, u64, u64, bool)> = v["rows"]
        .as_array()
        .ok_or("no rows")?
        .iter()
        .map(|r| {
            (
                r["lambda"].as_f64().unwrap_or(f64::NAN),
                r["beta1"].as_u64().unwrap_or(99),
                r["beta0_odd"].as_u64().unwrap_or(99),
                r["dim_r"].as_u64().unwrap_or(99),
                r["resonance"].as_bool().unwrap_or(false),
            )
        })
        .collect();
    let want = [
        (PI * PI / 3.0, 2, 2, 0, false),
        (4.0, 0, 0, 0, false),
        (PI * PI, 2, 1, 1, true),
        (4.0 * PI * PI / 3.0, 2, 0, 2, true),
    ];
    ensure(got.len() == want.len(), || format!("{} rows, expected 4", got.len()))?;
    for (g, w) in got.iter().zip(&want) {
        ensure((g.0 - w.0).abs() < 1e-12 && (g.1, g.2, g.3, g.4) == (w.1, w.2, w.3, w.4), || {
            format!("row {g:?} != {w:?}")
        })?;
    }
    within(elapsed, 1.0)?;
    Ok(format!("4 rows exact in {:.3} s", elapsed.as_secs_f64()))
}

/// The loop with a pendant: an invisible resonance at 4 pi^2.
fn criterion_2() -> Check {
    let t = Instant::now();
    let g = bundled("loop-pendant.qg");
    let target = 4.0 * PI * PI;
    let s = eigenvalues_in::<f64>(&g, 45.0, &SpectralOptions::default()).map_err(|e| e.to_string())?;
    let i = s
        .eigenvalues
        .iter()
        .position(|e| (e.lambda - target).abs() < 1e-6)
        .ok_or("4 pi^2 not found")?;
    let ev = &s.eigenvalues[i];
    ensure(ev.multiplicity == 1, || format!("multiplicity {}", ev.multiplicity))?;
    ensure((ev.k - 2.0 * PI).abs() <= 1e-9, || format!("|k - 2 pi| = {:e}", (ev.k - 2.0 * PI).abs()))?;
    let step = Step::from_ratio(1, 2, g.units().id("one").unwrap()).unwrap();
    let r = dim_r(&g, &step).map_err(|e| e.to_string())?;
    ensure(r.dim_r == 1, || format!("dim R = {}", r.dim_r))?;

    let gap = spectral_gap(&s, i);
    let opts = VisibilityOptions::default();
    let v = g.vertex_by_id("v").unwrap();
    let w = g.vertex_by_id("w").unwrap();
    let selections = [
        ("{v}", SelectionMode::Explicit(vec![v])),
        ("{v,w}", SelectionMode::Explicit(vec![v, w])),
        ("auto", SelectionMode::Auto),
    ];
    for (name, mode) in selections {
        let b = select_b(&g, mode).map_err(|e| e.to_string())?;
        let a = residue_estimates(&g, &b, ev.lambda, gap, &opts.residue).map_err(|e| e.to_string())?;
        for est in [&a.contour, &a.limit] {
            ensure(est.rank == 0, || format!("B = {name}: {:?} rank {}", est.method, est.rank))?;
            ensure(est.norm() <= 1e-8 * a.scale, || {
                format!("B = {name}: {:?} |Res| = {:e}, scale {:e}", est.method, est.norm(), a.scale)
            })?;
        }
    }
    let b = select_b(&g, SelectionMode::Auto).map_err(|e| e.to_string())?;
    let rep = visibility_report::<f64>(&g, &b, 45.0, &opts).map_err(|e| e.to_string())?;
    let row = rep
        .rows
        .iter()
        .find(|r| (r.lambda - target).abs() < 1e-6)
        .ok_or("visibility row missing")?;
    ensure(row.visibility() == Some(Visibility::Invisible), || format!("classified {:?}", row.visibility()))?;
    within(t.elapsed(), 5.0)?;
    Ok(format!(
        "k - 2 pi = {:.1e}, ranks 0 for 3 selections, invisible, {:.2} s",
        ev.k - 2.0 * PI,
        t.elapsed().as_secs_f64()
    ))
}

/// Dimension formula against the exact nullspace oracle on the random suite.
fn criterion_3(graphs: &[MetricGraph]) -> Check {
    let t = Instant::now();
    let mut checked = 0usize;
    for (i, g) in graphs.iter().enumerate() {
        for step in common::small_steps(g, MAX_MULTIPLICITY) {
            let fast = dim_r(g, &step).map_err(|e| e.to_string())?.dim_r;
            let oracle = dim_r_oracle(g, &step).map_err(|e| e.to_string())?;
            ensure(fast == oracle, || {
                format!("graph {i}, step {}: formula {fast}, oracle {oracle}", step.display(g.units()))
            })?;
            checked += 1;
        }
    }
    within(t.elapsed(), 60.0)?;
    Ok(format!(
        "{} graphs, {checked} steps, 0 mismatches, {:.2} s",
        graphs.len(),
        t.elapsed().as_secs_f64()
    ))
}

/// dim ker = rank Res + dim R on the dumbbell with the automatic selection.
fn criterion_4() -> Check {
    let t = Instant::now();
    let g = bundled("dumbbell.qg");
    let b = select_b(&g, SelectionMode::Auto).map_err(|e| e.to_string())?;
    let rep = visibility_report::<f64>(&g, &b, 14.0, &VisibilityOptions::default()).map_err(|e| e.to_string())?;
    for r in &rep.rows {
        ensure(r.identity_holds(), || {
            format!(
                "lambda = {}: dim ker {}, rank {:?}, dim R {}",
                r.lambda,
                r.dim_ker,
                r.residue.as_ref().map(|a| (a.contour.rank, a.limit.rank)),
                r.dim_r
            )
        })?;
    }
    within(t.elapsed(), 30.0)?;
    Ok(format!("{} eigenvalues, identity holds on all, {:.2} s", rep.rows.len(), t.elapsed().as_secs_f64()))
}

/// Interval of length pi and loop of length 1.
fn criterion_5() -> Check {
    let opts = SpectralOptions::default();
    let g = bundled("interval-pi.qg");
    let s = eigenvalues_in::<f64>(&g, 101.0, &opts).map_err(|e| e.to_string())?;
    ensure(s.eigenvalues.len() == 11, || format!("{} eigenvalues on the interval", s.eigenvalues.len()))?;
    let mut worst = 0f64;
    for (n, e) in s.eigenvalues.iter().enumerate() {
        let err = (e.lambda.sqrt() - n as f64).abs();
        worst = worst.max(err);
        ensure(err <= 1e-9 && e.multiplicity == 1, || {
            format!("n = {n}: sqrt(lambda) error {err:e}, multiplicity {}", e.multiplicity)
        })?;
    }
    let g = bundled("loop-one.qg");
    let cutoff = (6.0 * PI).powi(2) + 1.0;
    let s = eigenvalues_in::<f64>(&g, cutoff, &opts).map_err(|e| e.to_string())?;
    ensure(s.eigenvalues.len() == 4, || format!("{} eigenvalues on the loop", s.eigenvalues.len()))?;
    for (n, e) in s.eigenvalues.iter().enumerate().skip(1) {
        let want = (2.0 * PI * n as f64).powi(2);
        ensure((e.lambda - want).abs() <= 1e-9 * want && e.multiplicity == 2, || {
            format!("loop n = {n}: lambda {} multiplicity {}", e.lambda, e.multiplicity)
        })?;
    }
    Ok(format!("interval n <= 10 worst error {worst:.1e}; loop n <= 3 double"))
}

/// Exact resonance bases for every case with dim R > 0.
fn criterion_6(graphs: &[MetricGraph]) -> Check {
    let mut cases: Vec<(&MetricGraph, Step)> = Vec::new();
    let dumbbell = bundled("dumbbell.qg");
    let loop_pendant = bundled("loop-pendant.qg");
    for c in candidate_steps::<f64>(&dumbbell, 14.0) {
        cases.push((&dumbbell, c.step));
    }
    for c in candidate_steps::<f64>(&loop_pendant, 45.0) {
        cases.push((&loop_pendant, c.step));
    }
    for g in graphs {
        for s in common::small_steps(g, MAX_MULTIPLICITY) {
            cases.push((g, s));
        }
    }
    let mut bases = 0usize;
    for (g, step) in &cases {
        let r = resonance_basis(g, step).map_err(|e| e.to_string())?;
        if r.dim_r == 0 {
            continue;
        }
        let fs = r.basis.as_ref().ok_or("no basis returned")?;
        ensure(fs.len() == r.dim_r, || format!("{} functions for dim R = {}", fs.len(), r.dim_r))?;
        for f in fs {
            check_scar(g, &r.subgraph, f).map_err(|v| format!("constraint violated: {v:?}"))?;
        }
        let rows: Vec<Vec<BigInt>> = fs.iter().map(|f| f.b.iter().map(|&x| BigInt::from(x)).collect()).collect();
        ensure(rank_fraction_free(&rows) == fs.len(), || "basis is rank deficient".into())?;
        bases += 1;
    }
    Ok(format!("{bases} nontrivial bases out of {} cases, all exact", cases.len()))
}

/// No resonance below lambda_G; the dumbbell infimum.
fn criterion_7(graphs: &[MetricGraph]) -> Check {
    let mut below = 0usize;
    for (i, g) in graphs.iter().enumerate() {
        let lg = lambda_g::<f64>(g).map_err(|e| e.to_string())?;
        for step in common::small_steps(g, MAX_MULTIPLICITY) {
            let lambda: f64 = step_lambda(&step, g.units());
            if lambda < lg.value * (1.0 - 1e-12) {
                below += 1;
                let r = dim_r(g, &step).map_err(|e| e.to_string())?;
                ensure(r.dim_r == 0, || format!("graph {i}: dim R = {} at lambda {lambda} < {}", r.dim_r, lg.value))?;
            }
        }
    }
    let d = bundled("dumbbell.qg");
    let lg = lambda_g::<f64>(&d).map_err(|e| e.to_string())?;
    ensure((lg.value - PI * PI / 3.0).abs() < 1e-12, || format!("dumbbell lambda_G = {}", lg.value))?;
    let (_, u) = lg.witness.ok_or("no witness")?;
    let r = dim_r(&d, &u).map_err(|e| e.to_string())?;
    ensure(r.dim_r == 0, || format!("dim R = {} at lambda_G", r.dim_r))?;
    Ok(format!("{below} steps below lambda_G, none resonant; dumbbell lambda_G = pi^2/3 with dim R = 0"))
}

/// Symmetry and conjugation of M_B; closed form on a unit interval.
fn criterion_8(graphs: &[MetricGraph]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED ^ 0x7);
    let opts = TwOptions::default();
    let mut worst = 0f64;
    for (i, g) in graphs.iter().enumerate() {
        let all: Vec<usize> = (0..g.vertex_count()).collect();
        let b = select_b(g, SelectionMode::Explicit(all)).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let mu = Complex::new(rng.gen_range(-5.0..50.0), rng.gen_range(0.2..10.0));
            let m = tw_matrix::<f64>(g, &b, mu, &opts).map_err(|e| format!("graph {i}: {e}"))?;
            let c = tw_matrix::<f64>(g, &b, mu.conj(), &opts).map_err(|e| format!("graph {i}: {e}"))?;
            let norm = m.frobenius();
            let mut conj_err = 0f64;
            for r in 0..b.len() {
                for s in 0..b.len() {
                    conj_err += (c.matrix[(r, s)] - m.matrix[(r, s)].conj()).norm_sqr();
                }
            }
            let rel = (m.asymmetry() / norm).max(conj_err.sqrt() / norm);
            worst = worst.max(rel);
            ensure(rel <= 1e-10, || format!("graph {i}, mu = {mu}: relative defect {rel:e}"))?;
        }
    }
    let g = GraphSpec::new()
        .unit("one", 1.0)
        .vertices(["a", "b"])
        .edge("e", "a", "b", (1, 1), "one")
        .build()
        .map_err(|e| e.to_string())?;
    let b = select_b(&g, SelectionMode::Explicit(vec![0, 1])).map_err(|e| e.to_string())?;
    let m = tw_matrix::<f64>(&g, &b, Complex::new(-1.0, 0.0), &opts).map_err(|e| e.to_string())?;
    let (m11, m12) = (m.matrix[(0, 0)], m.matrix[(0, 1)]);
    let (coth, csch) = (1f64.cosh() / 1f64.sinh(), 1.0 / 1f64.sinh());
    ensure((m11 - coth).norm() <= 1e-10 && (m12 - csch).norm() <= 1e-10, || {
        format!("M11 = {m11}, M12 = {m12}")
    })?;
    Ok(format!(
        "{} samples, worst relative defect {worst:.1e}; closed form to {:.1e}",
        graphs.len() * 20,
        (m11 - coth).norm().max((m12 - csch).norm())
    ))
}

fn main() {
    let graphs = suite();
    let results: Vec<(usize, &str, Check)> = vec![
        (1, "golden resonance table", criterion_1()),
        (2, "loop with pendant end-to-end", criterion_2()),
        (3, "formula vs oracle", criterion_3(&graphs)),
        (4, "kernel = residue rank + resonances", criterion_4()),
        (5, "spectral accuracy baseline", criterion_5()),
        (6, "basis soundness", criterion_6(&graphs)),
        (7, "lambda_G gate", criterion_7(&graphs)),
        (8, "Neumann-to-Dirichlet structure", criterion_8(&graphs)),
    ];
    let mut failed = 0;
    for (n, name, r) in &results {
        match r {
            Ok(detail) => println!("criterion {n} ({name}): PASS - {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n} ({name}): FAIL - {why}");
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
