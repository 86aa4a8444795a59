use num_complex::Complex;
use num_traits::Zero;

use crate::graph::{EdgeIdx, MetricGraph, VertexIdx};
use crate::linalg::{singular_values, Matrix};
use crate::scalar::Real;

/// Meaning of a row of the secular system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowLabel {
    /// `f_e(0) - c_{o(e)} = 0`
    TraceOrigin(EdgeIdx),
    /// `f_e(L(e)) - c_{t(e)} = 0`
    TraceTerminus(EdgeIdx),
    /// `sum_{t(e)=v} f'_e(L(e)) - sum_{o(e)=v} f'_e(0) = 0`
    Kirchhoff(VertexIdx),
}

/// Square system over `(a_e, b_e)_e` and `(c_v)_v` at wavenumber `k`.
///
/// Columns: `a_e` at `2e`, `b_e` at `2e + 1`, `c_v` at `2|E| + v`.
/// Rows: the two trace rows of edge `e` at `2e`, `2e + 1`; the Kirchhoff row of
/// `v` at `2|E| + v`. For `k = 0` the edge ansatz is `a_e + b_e x`.
#[derive(Clone, Debug)]
pub struct SecularSystem<T> {
    pub k: T,
    pub matrix: Matrix<T>,
    pub rows: Vec<RowLabel>,
    edges: usize,
}

impl<T> SecularSystem<T> {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn col_a(&self, e: EdgeIdx) -> usize {
        2 * e
    }

    pub fn col_b(&self, e: EdgeIdx) -> usize {
        2 * e + 1
    }

    pub fn col_c(&self, v: VertexIdx) -> usize {
        2 * self.edges + v
    }
}

fn row_labels(g: &MetricGraph) -> Vec<RowLabel> {
    let mut rows = Vec::with_capacity(2 * g.edge_count() + g.vertex_count());
    for e in 0..g.edge_count() {
        rows.push(RowLabel::TraceOrigin(e));
        rows.push(RowLabel::TraceTerminus(e));
    }
    rows.extend((0..g.vertex_count()).map(RowLabel::Kirchhoff));
    rows
}

pub fn assemble_secular<T: Real>(g: &MetricGraph, k: T) -> SecularSystem<T> {
    let ne = g.edge_count();
    let n = 2 * ne + g.vertex_count();
    let mut m = Matrix::zeros(n, n);
    for (e, edge) in g.edges().iter().enumerate() {
        let l: T = g.length(e);
        let (ca, cb) = (2 * e, 2 * e + 1);
        let (co, ct) = (2 * ne + edge.origin, 2 * ne + edge.terminus);
        let kir_o = 2 * ne + edge.origin;
        let kir_t = 2 * ne + edge.terminus;
        // value and derivative of the two basis functions at x = 0 and x = L
        let (val0, der0, val_l, der_l) = if k == T::zero() {
            ([T::one(), T::zero()], [T::zero(), T::one()], [T::one(), l], [T::zero(), T::one()])
        } else {
            let (s, c) = (k * l).sin_cos();
            ([T::one(), T::zero()], [T::zero(), k], [c, s], [-k * s, k * c])
        };
        m[(2 * e, ca)] = val0[0];
        m[(2 * e, cb)] = val0[1];
        m[(2 * e, co)] = m[(2 * e, co)] - T::one();
        m[(2 * e + 1, ca)] = val_l[0];
        m[(2 * e + 1, cb)] = val_l[1];
        m[(2 * e + 1, ct)] = m[(2 * e + 1, ct)] - T::one();
        // loops add both derivative terms to the same Kirchhoff row
        m[(kir_t, ca)] = m[(kir_t, ca)] + der_l[0];
        m[(kir_t, cb)] = m[(kir_t, cb)] + der_l[1];
        m[(kir_o, ca)] = m[(kir_o, ca)] - der0[0];
        m[(kir_o, cb)] = m[(kir_o, cb)] - der0[1];
    }
    SecularSystem {
        k,
        matrix: m,
        rows: row_labels(g),
        edges: ne,
    }
}

/// Number of singular values of the secular system below `rel_tol * sigma_max`.
pub fn nullity_at<T: Real>(g: &MetricGraph, k: T, rel_tol: T) -> usize {
    let s = singular_values(&assemble_secular(g, k).matrix);
    let max = s.first().copied().unwrap_or_else(T::zero);
    s.iter().filter(|&&x| x < rel_tol * max).count()
}

/// Per-edge basis used by the complex system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeAnsatz {
    /// `a cos(kx) + b sin(kx)/k` (reduces to `a + b x` at `k = 0`).
    Trigonometric,
    /// `a exp(ikx) + b exp(ik(L - x))` with `Im k >= 0`; bounded on long
    /// edges when `k` has a large imaginary part.
    Decaying,
}

/// Secular system at a complex spectral parameter `mu = k^2`.
///
/// Same row and column layout as [`SecularSystem`], with the edge basis
/// chosen per edge: [`EdgeAnsatz::Decaying`] when `Im(k) L(e) > 1`.
#[derive(Clone, Debug)]
pub struct ComplexSecularSystem<T> {
    pub mu: Complex<T>,
    /// Square root of `mu` with non-negative imaginary part.
    pub k: Complex<T>,
    pub matrix: Matrix<Complex<T>>,
    pub ansatz: Vec<EdgeAnsatz>,
}

/// `sin(kx)/k`, continuous at `k = 0`.
fn sin_over_k<T: Real>(k: Complex<T>, x: T) -> Complex<T> {
    let kx = k * x;
    if kx.norm() < T::of(1e-4) {
        let z2 = kx * kx;
        (Complex::from(T::one()) - z2 / T::of(6.0) + z2 * z2 / T::of(120.0)) * x
    } else {
        kx.sin() / k
    }
}

pub fn assemble_secular_complex<T: Real>(g: &MetricGraph, mu: Complex<T>) -> ComplexSecularSystem<T> {
    let mut k = mu.sqrt();
    if k.im < T::zero() {
        k = -k;
    }
    let ne = g.edge_count();
    let n = 2 * ne + g.vertex_count();
    let one = Complex::from(T::one());
    let i: Complex<T> = Complex::i();
    let mut m: Matrix<Complex<T>> = Matrix::zeros(n, n);
    let mut ansatz = Vec::with_capacity(ne);
    for (e, edge) in g.edges().iter().enumerate() {
        let l: T = g.length(e);
        let (ca, cb) = (2 * e, 2 * e + 1);
        let (co, ct) = (2 * ne + edge.origin, 2 * ne + edge.terminus);
        let kind = if k.im * l > T::one() {
            EdgeAnsatz::Decaying
        } else {
            EdgeAnsatz::Trigonometric
        };
        ansatz.push(kind);
        let (val0, der0, val_l, der_l) = match kind {
            EdgeAnsatz::Trigonometric => {
                let kl = k * l;
                let (c, s) = (kl.cos(), kl.sin());
                (
                    [one, Complex::zero()],
                    [Complex::zero(), one],
                    [c, sin_over_k(k, l)],
                    [-k * s, c],
                )
            }
            EdgeAnsatz::Decaying => {
                let ph = (i * k * l).exp();
                let ik = i * k;
                ([one, ph], [ik, -ik * ph], [ph, one], [ik * ph, -ik])
            }
        };
        m[(2 * e, ca)] = val0[0];
        m[(2 * e, cb)] = val0[1];
        m[(2 * e, co)] = m[(2 * e, co)] - one;
        m[(2 * e + 1, ca)] = val_l[0];
        m[(2 * e + 1, cb)] = val_l[1];
        m[(2 * e + 1, ct)] = m[(2 * e + 1, ct)] - one;
        m[(ct, ca)] = m[(ct, ca)] + der_l[0];
        m[(ct, cb)] = m[(ct, cb)] + der_l[1];
        m[(co, ca)] = m[(co, ca)] - der0[0];
        m[(co, cb)] = m[(co, cb)] - der0[1];
    }
    ComplexSecularSystem {
        mu,
        k,
        matrix: m,
        ansatz,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphSpec;
    use std::f64::consts::PI;

    #[test]
    fn neumann_interval_at_k_one() {
        let g = GraphSpec::new()
            .unit("pi", PI)
            .vertices(["a", "b"])
            .edge("e", "a", "b", (1, 1), "pi")
            .build()
            .unwrap();
        let sys = assemble_secular(&g, 1.0);
        assert_eq!(sys.dim(), 4);
        assert_eq!(nullity_at(&g, 1.0, 1e-8), 1);
        assert_eq!(nullity_at(&g, 1.3, 1e-8), 0);
    }

    #[test]
    fn loop_is_doubly_degenerate() {
        let g = GraphSpec::new()
            .unit("one", 1.0)
            .vertex("w")
            .edge("e", "w", "w", (1, 1), "one")
            .build()
            .unwrap();
        assert_eq!(assemble_secular(&g, 2.0 * PI).dim(), 3);
        assert_eq!(nullity_at(&g, 2.0 * PI, 1e-8), 2);
    }

    #[test]
    fn zero_wavenumber_counts_components() {
        let g = GraphSpec::new()
            .unit("one", 1.0)
            .vertices(["a", "b", "c", "d"])
            .edge("e1", "a", "b", (1, 1), "one")
            .edge("e2", "c", "d", (3, 2), "one")
            .edge("e3", "d", "d", (1, 1), "one")
            .build()
            .unwrap();
        assert_eq!(nullity_at(&g, 0.0, 1e-10), 2);
    }

    #[test]
    fn complex_system_matches_real_on_real_axis() {
        let g = GraphSpec::new()
            .unit("one", 1.0)
            .vertices(["a", "b"])
            .edge("e1", "a", "b", (1, 1), "one")
            .edge("e2", "b", "a", (1, 2), "one")
            .build()
            .unwrap();
        let k = 2.3f64;
        let real = singular_values(&assemble_secular(&g, k).matrix);
        let cplx = crate::linalg::complex_singular_values(
            &assemble_secular_complex(&g, Complex::new(k * k, 0.0)).matrix,
        );
        // The bases differ by a column scaling, so compare rank deficiency only.
        assert!(real.last().unwrap() / real[0] > 1e-6);
        assert!(cplx.last().unwrap() / cplx[0] > 1e-6);
    }
}
