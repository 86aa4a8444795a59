use num_complex::Complex;
use num_traits::Zero;
use thiserror::Error;

use super::Matrix;
use crate::scalar::Real;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum LuError {
    #[error("matrix is exactly singular")]
    Singular,
    #[error("matrix must be square")]
    NotSquare,
}

/// LU factorisation with partial pivoting of a complex square matrix.
#[derive(Clone, Debug)]
pub struct Lu<T> {
    lu: Matrix<Complex<T>>,
    perm: Vec<usize>,
    norm1: T,
}

impl<T: Real> Lu<T> {
    pub fn factor(a: &Matrix<Complex<T>>) -> Result<Self, LuError> {
        let n = a.rows();
        if a.cols() != n {
            return Err(LuError::NotSquare);
        }
        let norm1 = one_norm(a);
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| {
                    lu[(i, k)]
                        .norm()
                        .partial_cmp(&lu[(j, k)].norm())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .expect("nonempty range");
            if lu[(p, k)].is_zero() {
                return Err(LuError::Singular);
            }
            lu.swap_rows(k, p);
            perm.swap(k, p);
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                if f.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] = lu[(i, j)] - f * u;
                }
            }
        }
        Ok(Self { lu, perm, norm1 })
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn solve(&self, b: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = self.dim();
        let mut x: Vec<Complex<T>> = self.perm.iter().map(|&i| b[i]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s = s - self.lu[(i, j)] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s = s - self.lu[(i, j)] * x[j];
            }
            x[i] = s / self.lu[(i, i)];
        }
        x
    }

    pub fn inverse(&self) -> Matrix<Complex<T>> {
        let n = self.dim();
        let mut inv = Matrix::zeros(n, n);
        let mut e = vec![Complex::zero(); n];
        for j in 0..n {
            e[j] = Complex::new(T::one(), T::zero());
            let col = self.solve(&e);
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
            e[j] = Complex::zero();
        }
        inv
    }

    /// `||A||_1 ||A^-1||_1`, computed from the explicit inverse.
    pub fn condition_1(&self) -> T {
        self.norm1 * one_norm(&self.inverse())
    }
}

pub(crate) fn one_norm<T: Real>(a: &Matrix<Complex<T>>) -> T {
    (0..a.cols())
        .map(|j| (0..a.rows()).fold(T::zero(), |acc, i| acc + a[(i, j)].norm()))
        .fold(T::zero(), T::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn solves_complex_system() {
        let a = Matrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 1.0)], vec![c(2.0, 0.0), c(1.0, 0.0)]]);
        let lu = Lu::factor(&a).unwrap();
        let x = lu.solve(&[c(1.0, 1.0), c(3.0, 0.0)]);
        assert!((x[0] - c(1.0, 0.0)).norm() < 1e-14);
        assert!((x[1] - c(1.0, 0.0)).norm() < 1e-14);
        assert!(lu.condition_1() >= 1.0);
    }

    #[test]
    fn detects_singularity() {
        let a = Matrix::from_rows(&[vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(2.0, 0.0), c(4.0, 0.0)]]);
        match Lu::factor(&a) {
            Err(LuError::Singular) => {}
            Ok(lu) => assert!(lu.condition_1() > 1e15),
            Err(e) => panic!("{e}"),
        }
    }
}
