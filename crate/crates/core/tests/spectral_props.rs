mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qgraph::catalog;
use qgraph::graph::{EdgeSpec, MetricGraph};
use qgraph::spectral::{
    assemble_secular, eigenspace, eigenvalues_in, nullity_at, EigenspaceOptions, SpectralOptions,
};
use std::f64::consts::PI;

use common::{arb_graph, config};

fn reversed(g: &MetricGraph, e: usize) -> MetricGraph {
    let mut spec = g.to_spec();
    let ed = &mut spec.edges[e];
    std::mem::swap(&mut ed.from, &mut ed.to);
    spec.build().unwrap()
}

fn subdivided(g: &MetricGraph, e: usize) -> MetricGraph {
    let mut spec = g.to_spec();
    let old = spec.edges[e].clone();
    let half = &old.coeff / BigRational::from_integer(BigInt::from(2));
    spec.vertices.push("mid".into());
    spec.edges[e] = EdgeSpec {
        to: "mid".into(),
        coeff: half.clone(),
        ..old.clone()
    };
    spec.edges.push(EdgeSpec {
        id: format!("{}'", old.id),
        from: "mid".into(),
        coeff: half,
        ..old
    });
    spec.build().unwrap()
}

#[test]
fn interval_and_loop_spectra() {
    let s = eigenvalues_in(&catalog::interval_pi(), 101.0, &SpectralOptions::default()).unwrap();
    assert_eq!(s.eigenvalues.len(), 11);
    for (n, e) in s.eigenvalues.iter().enumerate() {
        assert!((e.k - n as f64).abs() <= 1e-9);
        assert_eq!(e.multiplicity, 1);
    }
    let s = eigenvalues_in(&catalog::loop_one(), 16.0 * PI * PI * 1.01, &SpectralOptions::default()).unwrap();
    let got: Vec<usize> = s.eigenvalues.iter().map(|e| e.multiplicity).collect();
    assert_eq!(got, [1, 2, 2]);
}

#[test]
fn loop_pendant_eigenvalue_and_scar() {
    let g = catalog::loop_pendant();
    let s = eigenvalues_in(&g, 45.0, &SpectralOptions::default()).unwrap();
    let ev = s.nearest(4.0 * PI * PI).unwrap();
    assert!((ev.k - 2.0 * PI).abs() <= 1e-9);
    assert_eq!(ev.multiplicity, 1);
    let es = eigenspace(&g, ev.lambda, &EigenspaceOptions::default()).unwrap();
    assert_eq!(es.functions.len(), 1);
    let f = &es.functions[0];
    // f_{e1} = 0, f_{e2} proportional to sin(2 pi x)
    let scale = f.coeffs[1].1;
    for i in 0..=10 {
        let x = i as f64 / 10.0;
        assert!(f.value(0, x * PI).abs() < 1e-8);
        assert!((f.value(1, x) - scale * (2.0 * PI * x).sin()).abs() < 1e-8);
    }
}

#[test]
fn triangle_eigenspace_at_four_pi_squared() {
    let g = catalog::triangle();
    let es = eigenspace(&g, 4.0 * PI * PI, &EigenspaceOptions::default()).unwrap();
    // two eigenfunctions: the cos(2 pi x) mode and the scar
    assert_eq!(es.functions.len(), 2);
    assert!(es.verified);
}

#[test]
fn secular_dimension() {
    let g = catalog::dumbbell();
    let sys = assemble_secular(&g, 1.0);
    assert_eq!(sys.dim(), 2 * 13 + 8);
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn spectrum_is_invariant_and_consistent(g in arb_graph(), pick in 0usize..9) {
        let opts = SpectralOptions::default();
        let s = eigenvalues_in(&g, 25.0, &opts).unwrap();
        prop_assert!(s.eigenvalues[0].lambda == 0.0);
        let e = pick % g.edge_count();
        let rev = reversed(&g, e);
        let sub = subdivided(&g, e);
        for ev in &s.eigenvalues[1..] {
            prop_assert!(ev.multiplicity >= 1);
            prop_assert_eq!(nullity_at(&g, ev.k, 1e-8), ev.multiplicity);
            prop_assert_eq!(nullity_at(&rev, ev.k, 1e-8), ev.multiplicity);
            prop_assert_eq!(nullity_at(&sub, ev.k, 1e-8), ev.multiplicity);
            let es = eigenspace(&g, ev.lambda, &EigenspaceOptions::default()).unwrap();
            prop_assert_eq!(es.functions.len(), ev.multiplicity);
            prop_assert!(es.max_residual <= 1e-9, "residual {}", es.max_residual);
        }
        let again = eigenvalues_in(&g, 25.0, &opts).unwrap();
        prop_assert_eq!(s, again);
    }
}
