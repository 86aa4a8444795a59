use super::scan::SpectralOptions;
use super::secular::assemble_secular;
use super::SpectralError;
use crate::graph::{components, EdgeIdx, MetricGraph, Subgraph};
use crate::linalg::svd;
use crate::scalar::Real;

/// `f_e(x) = a_e cos(kx) + b_e sin(kx)` on every edge, or `a_e + b_e x` when `k = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeFunction<T> {
    pub k: T,
    /// `(a_e, b_e)` indexed by edge.
    pub coeffs: Vec<(T, T)>,
}

impl<T: Real> EdgeFunction<T> {
    pub fn zero(k: T, edges: usize) -> Self {
        Self {
            k,
            coeffs: vec![(T::zero(), T::zero()); edges],
        }
    }

    pub fn value(&self, e: EdgeIdx, x: T) -> T {
        let (a, b) = self.coeffs[e];
        if self.k == T::zero() {
            a + b * x
        } else {
            let (s, c) = (self.k * x).sin_cos();
            a * c + b * s
        }
    }

    pub fn derivative(&self, e: EdgeIdx, x: T) -> T {
        let (a, b) = self.coeffs[e];
        if self.k == T::zero() {
            b
        } else {
            let (s, c) = (self.k * x).sin_cos();
            self.k * (b * c - a * s)
        }
    }

    /// Largest disagreement between edge end values meeting at one vertex.
    pub fn continuity_residual(&self, g: &MetricGraph) -> T {
        let mut lo = vec![T::infinity(); g.vertex_count()];
        let mut hi = vec![T::neg_infinity(); g.vertex_count()];
        for (e, edge) in g.edges().iter().enumerate() {
            for (v, x) in [(edge.origin, T::zero()), (edge.terminus, g.length(e))] {
                let f = self.value(e, x);
                lo[v] = lo[v].min(f);
                hi[v] = hi[v].max(f);
            }
        }
        lo.iter()
            .zip(&hi)
            .filter(|(l, _)| l.is_finite())
            .fold(T::zero(), |acc, (&l, &h)| acc.max(h - l))
    }

    /// `max_v |d_nu f(v)|`, the sum of inward derivatives at each vertex.
    pub fn kirchhoff_residual(&self, g: &MetricGraph) -> T {
        let mut flux = vec![T::zero(); g.vertex_count()];
        for (e, edge) in g.edges().iter().enumerate() {
            flux[edge.terminus] = flux[edge.terminus] + self.derivative(e, g.length(e));
            flux[edge.origin] = flux[edge.origin] - self.derivative(e, T::zero());
        }
        flux.iter().fold(T::zero(), |acc, f| acc.max(f.abs()))
    }

    /// Value at each vertex taken from the first incident edge end; `None` for isolated vertices.
    pub fn vertex_values(&self, g: &MetricGraph) -> Vec<Option<T>> {
        let mut out = vec![None; g.vertex_count()];
        for (e, edge) in g.edges().iter().enumerate() {
            out[edge.origin].get_or_insert_with(|| self.value(e, T::zero()));
            out[edge.terminus].get_or_insert_with(|| self.value(e, g.length(e)));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenspaceOptions {
    /// Relative rank threshold, as in [`SpectralOptions::nullity_tol`].
    pub nullity_tol: f64,
    /// Bound on continuity and (scaled) Kirchhoff residuals of each function.
    pub residual_tol: f64,
}

impl Default for EigenspaceOptions {
    fn default() -> Self {
        Self {
            nullity_tol: SpectralOptions::default().nullity_tol,
            residual_tol: 1e-10,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenspace<T> {
    pub lambda: T,
    pub k: T,
    /// Orthonormal in coefficient space `(a, b, c)`.
    pub functions: Vec<EdgeFunction<T>>,
    pub singular_values: Vec<T>,
    pub threshold: T,
    /// Some singular value lies within a factor 10 of `threshold`.
    pub ambiguous: bool,
    /// Largest continuity or Kirchhoff residual; Kirchhoff is divided by `max(1, k)`.
    pub max_residual: T,
    pub verified: bool,
}

/// Nullspace of the secular system at `sqrt(lambda)` as edge functions.
pub fn eigenspace<T: Real>(
    g: &MetricGraph,
    lambda: T,
    opts: &EigenspaceOptions,
) -> Result<Eigenspace<T>, SpectralError> {
    if lambda < T::zero() || !lambda.is_finite() {
        return Err(SpectralError::NegativeLambda(lambda.to_f64_lossy()));
    }
    let k = lambda.sqrt();
    let floor = T::epsilon() * T::of(64.0);
    let tol = T::of(opts.nullity_tol).max(floor);
    let sys = assemble_secular(g, k);
    let dec = svd(&sys.matrix, true);
    let threshold = tol * dec.max();
    let ten = T::of(10.0);
    let ambiguous = dec
        .singular_values
        .iter()
        .any(|&s| s > threshold / ten && s < threshold * ten);

    let functions: Vec<EdgeFunction<T>> = if k == T::zero() {
        components(&Subgraph::full(g))
            .into_iter()
            .map(|c| {
                let norm = T::of((c.edges.len() + c.vertices.len()) as f64).sqrt();
                let mut f = EdgeFunction::zero(k, g.edge_count());
                for &e in &c.edges {
                    f.coeffs[e].0 = T::one() / norm;
                }
                f
            })
            .collect()
    } else {
        let v = dec.v.as_ref().expect("requested right singular vectors");
        dec.singular_values
            .iter()
            .enumerate()
            .filter(|(_, &s)| s < threshold)
            .map(|(j, _)| EdgeFunction {
                k,
                coeffs: (0..g.edge_count())
                    .map(|e| (v[(sys.col_a(e), j)], v[(sys.col_b(e), j)]))
                    .collect(),
            })
            .collect()
    };

    let scale = T::one().max(k);
    let max_residual = functions.iter().fold(T::zero(), |acc, f| {
        acc.max(f.continuity_residual(g))
            .max(f.kirchhoff_residual(g) / scale)
    });
    Ok(Eigenspace {
        lambda,
        k,
        functions,
        singular_values: dec.singular_values,
        threshold,
        ambiguous,
        max_residual,
        verified: max_residual <= T::of(opts.residual_tol),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphSpec;
    use std::f64::consts::PI;

    #[test]
    fn loop_pendant_scar() {
        let g = GraphSpec::new()
            .unit("one", 1.0)
            .unit("pi", PI)
            .vertices(["v", "w"])
            .edge("e1", "v", "w", (1, 1), "pi")
            .edge("e2", "w", "w", (1, 1), "one")
            .build()
            .unwrap();
        let es = eigenspace(&g, 4.0 * PI * PI, &EigenspaceOptions::default()).unwrap();
        assert_eq!(es.functions.len(), 1);
        assert!(es.verified, "{}", es.max_residual);
        let f = &es.functions[0];
        assert!(f.coeffs[0].0.abs() < 1e-12 && f.coeffs[0].1.abs() < 1e-12);
        assert!(f.coeffs[1].0.abs() < 1e-12);
        assert!(f.coeffs[1].1.abs() > 0.1);
    }

    #[test]
    fn zero_gives_component_indicators() {
        let g = GraphSpec::new()
            .unit("one", 1.0)
            .vertices(["a", "b", "c"])
            .edge("e1", "a", "b", (1, 1), "one")
            .edge("e2", "c", "c", (1, 2), "one")
            .build()
            .unwrap();
        let es = eigenspace(&g, 0.0, &EigenspaceOptions::default()).unwrap();
        assert_eq!(es.functions.len(), 2);
        assert!(es.verified);
        assert!(es.functions[0].coeffs[1].0 == 0.0 && es.functions[0].coeffs[0].0 > 0.0);
    }

    #[test]
    fn non_eigenvalue_is_empty() {
        let g = GraphSpec::new()
            .unit("pi", PI)
            .vertices(["a", "b"])
            .edge("e", "a", "b", (1, 1), "pi")
            .build()
            .unwrap();
        let es = eigenspace(&g, 2.0, &EigenspaceOptions::default()).unwrap();
        assert!(es.functions.is_empty());
        assert!(eigenspace(&g, -1.0, &EigenspaceOptions::default()).is_err());
    }
}
