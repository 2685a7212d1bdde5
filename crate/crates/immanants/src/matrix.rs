//! Dense complex matrices, just large enough for the Monte Carlo side:
//! products, adjoints, residual norms, Gram–Schmidt orthonormalization and
//! an elimination determinant. Dimensions here are tiny (N ≲ 16), so
//! nothing is blocked or vectorized.

use num_complex::Complex64;

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = ComplexMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj_transpose(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Top-left `n x n` sub-block.
    pub fn top_left_block(&self, n: usize) -> ComplexMatrix {
        assert!(n <= self.rows && n <= self.cols, "block larger than matrix");
        ComplexMatrix::from_fn(n, n, |i, j| self[(i, j)])
    }

    /// Entrywise max modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert!(self.rows == other.rows && self.cols == other.cols);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |(A A† - I)_{ij}|`; zero for exactly unitary matrices.
    pub fn unitarity_residual(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        self.mul(&self.conj_transpose())
            .max_abs_diff(&ComplexMatrix::identity(self.rows))
    }

    /// Orthonormalizes the columns in place by modified Gram–Schmidt with a
    /// second orthogonalization pass. Normalization divides by the (positive
    /// real) column norm, so the implicit triangular factor has a positive
    /// real diagonal — exactly the phase convention that makes the QR of a
    /// Gaussian matrix Haar-distributed.
    pub fn orthonormalize_columns(&mut self) {
        let (n, m) = (self.rows, self.cols);
        for j in 0..m {
            for _pass in 0..2 {
                for k in 0..j {
                    let mut proj = Complex64::ZERO;
                    for i in 0..n {
                        proj += self[(i, k)].conj() * self[(i, j)];
                    }
                    for i in 0..n {
                        let sub = proj * self[(i, k)];
                        self[(i, j)] -= sub;
                    }
                }
            }
            let norm = (0..n).map(|i| self[(i, j)].norm_sqr()).sum::<f64>().sqrt();
            assert!(norm > 0.0, "rank-deficient sample");
            for i in 0..n {
                self[(i, j)] /= norm;
            }
        }
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> Complex64 {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Complex64::ONE;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| {
                    a[(x, col)]
                        .norm()
                        .partial_cmp(&a[(y, col)].norm())
                        .unwrap()
                })
                .unwrap();
            if a[(pivot, col)] == Complex64::ZERO {
                return Complex64::ZERO;
            }
            if pivot != col {
                for j in 0..n {
                    let tmp = a[(pivot, j)];
                    a[(pivot, j)] = a[(col, j)];
                    a[(col, j)] = tmp;
                }
                det = -det;
            }
            det *= a[(col, col)];
            for row in col + 1..n {
                let factor = a[(row, col)] / a[(col, col)];
                for j in col..n {
                    let sub = factor * a[(col, j)];
                    a[(row, j)] -= sub;
                }
            }
        }
        det
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn product_and_adjoint() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| c((i * 2 + j) as f64, 1.0));
        let id = ComplexMatrix::identity(2);
        assert_eq!(a.mul(&id), a);
        let adj = a.conj_transpose();
        assert_eq!(adj[(0, 1)], c(2.0, -1.0));
        assert_eq!(a.transpose()[(0, 1)], c(2.0, 1.0));
    }

    #[test]
    fn orthonormalization_gives_tiny_residual() {
        // deterministic, moderately ill-scaled input
        let mut m = ComplexMatrix::from_fn(5, 5, |i, j| {
            c(
                ((i * 7 + j * 3) % 11) as f64 - 5.0 + 1e-6 * i as f64,
                ((i * 5 + j * 2) % 7) as f64 - 3.0,
            )
        });
        m.orthonormalize_columns();
        assert!(m.unitarity_residual() < 1e-13);
    }

    #[test]
    fn determinant_of_triangularizable_cases() {
        let id = ComplexMatrix::identity(4);
        assert!((id.determinant() - c(1.0, 0.0)).norm() < 1e-15);

        let mut swap = ComplexMatrix::identity(3);
        for j in 0..3 {
            let tmp = swap[(0, j)];
            swap[(0, j)] = swap[(1, j)];
            swap[(1, j)] = tmp;
        }
        assert!((swap.determinant() + c(1.0, 0.0)).norm() < 1e-15);

        // det of a unitary has modulus 1
        let mut q = ComplexMatrix::from_fn(4, 4, |i, j| {
            c(((i + 2 * j) % 5) as f64 - 2.0, ((3 * i + j) % 7) as f64 - 3.0)
        });
        q.orthonormalize_columns();
        assert!((q.determinant().norm() - 1.0).abs() < 1e-12);
    }
}
