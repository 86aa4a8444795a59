use num_complex::Complex;
use num_traits::Zero;

use super::{VertexSelection, WeylError};
use crate::graph::{MetricGraph, VertexIdx};
use crate::linalg::{Lu, Matrix};
use crate::scalar::Real;
use crate::spectral::assemble_secular_complex;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwOptions {
    /// Largest accepted 1-norm condition number of the secular system.
    pub cond_max: f64,
}

impl Default for TwOptions {
    fn default() -> Self {
        Self { cond_max: 1e12 }
    }
}

/// `M_B(mu)`: entry `(k, l)` is the value at `v_k` of the solution with unit
/// inward flux at `v_l` and zero flux elsewhere.
#[derive(Clone, Debug, PartialEq)]
pub struct TwSample<T> {
    pub mu: Complex<T>,
    pub vertices: Vec<VertexIdx>,
    pub matrix: Matrix<Complex<T>>,
    pub condition: T,
}

impl<T: Real> TwSample<T> {
    pub fn frobenius(&self) -> T {
        frobenius(&self.matrix)
    }

    /// `||M - M^T||_F`.
    pub fn asymmetry(&self) -> T {
        let m = &self.matrix;
        let mut acc = T::zero();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                acc = acc + (m[(i, j)] - m[(j, i)]).norm_sqr();
            }
        }
        acc.sqrt()
    }
}

pub(crate) fn frobenius<T: Real>(m: &Matrix<Complex<T>>) -> T {
    m.as_slice()
        .iter()
        .fold(T::zero(), |acc, z| acc + z.norm_sqr())
        .sqrt()
}

pub fn tw_matrix<T: Real>(
    g: &MetricGraph,
    b: &VertexSelection,
    mu: Complex<T>,
    opts: &TwOptions,
) -> Result<TwSample<T>, WeylError> {
    let near = |condition: f64| WeylError::NearSpectrum {
        re: mu.re.to_f64_lossy(),
        im: mu.im.to_f64_lossy(),
        condition,
    };
    for &v in &b.vertices {
        if v >= g.vertex_count() {
            return Err(WeylError::UnknownVertex(v));
        }
    }
    let sys = assemble_secular_complex(g, mu);
    let lu = Lu::factor(&sys.matrix).map_err(|_| near(f64::INFINITY))?;
    let condition = lu.condition_1();
    if !(condition.to_f64_lossy() <= opts.cond_max) {
        return Err(near(condition.to_f64_lossy()));
    }
    let base = 2 * g.edge_count();
    let m = b.vertices.len();
    let mut matrix = Matrix::zeros(m, m);
    let mut rhs = vec![Complex::zero(); sys.matrix.rows()];
    for (l, &vl) in b.vertices.iter().enumerate() {
        rhs.iter_mut().for_each(|x| *x = Complex::zero());
        rhs[base + vl] = Complex::from(T::one());
        let x = lu.solve(&rhs);
        for (k, &vk) in b.vertices.iter().enumerate() {
            matrix[(k, l)] = x[base + vk];
        }
    }
    Ok(TwSample {
        mu,
        vertices: b.vertices.clone(),
        matrix,
        condition,
    })
}
