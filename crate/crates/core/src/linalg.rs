//! Minimal dense complex linear algebra for the Fock oracle and the
//! positivity checks.

use core::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::scalar::{czero, Real, C};

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<C<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![czero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<C<T>>]) -> Self {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        Self::from_fn(rows, cols, |i, j| columns[j][i])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn matvec(&self, v: &[C<T>]) -> Vec<C<T>> {
        assert_eq!(v.len(), self.cols, "matvec dimension");
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter()
                    .zip(v)
                    .fold(czero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul dimension");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        out
    }

    /// Frobenius norm; an upper bound for the operator norm.
    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// Operator 2-norm estimated by power iteration on `A* A`.
    pub fn operator_norm(&self, iterations: usize) -> T {
        if self.cols == 0 {
            return T::zero();
        }
        let ah = self.adjoint();
        // Deterministic start with no special alignment.
        let mut v: Vec<C<T>> = (0..self.cols)
            .map(|j| C::new(T::one() + T::from_count(j % 7) / T::lit(7.0), T::from_count(j % 3) / T::lit(5.0)))
            .collect();
        let mut sigma2 = T::zero();
        for _ in 0..iterations {
            let n = vec_norm(&v);
            if n == T::zero() {
                return T::zero();
            }
            for z in v.iter_mut() {
                *z /= n;
            }
            let w = ah.matvec(&self.matvec(&v));
            sigma2 = inner(&w, &v).re;
            v = w;
        }
        sigma2.max(T::zero()).sqrt()
    }

    /// Checks `A + shift·I ⪰ 0` for Hermitian `A` by attempting a Cholesky
    /// factorization. Succeeds iff the smallest eigenvalue exceeds `-shift`
    /// (up to rounding).
    pub fn is_positive_semidefinite(&self, shift: T) -> bool {
        assert!(self.is_square());
        let n = self.rows;
        let mut l = Self::zeros(n, n);
        for j in 0..n {
            let mut d = self[(j, j)].re + shift;
            for k in 0..j {
                d -= l[(j, k)].norm_sqr();
            }
            if !(d > T::zero()) {
                return false;
            }
            let d = d.sqrt();
            l[(j, j)] = C::new(d, T::zero());
            for i in j + 1..n {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)].conj();
                }
                l[(i, j)] = s / d;
            }
        }
        true
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = C<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Add for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn add(self, rhs: Self) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn sub(self, rhs: Self) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl<T: Real> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, rhs: Self) -> CMatrix<T> {
        self.matmul(rhs)
    }
}

/// `⟨u, v⟩ = Σ u_i conj(v_i)`, linear in the first argument.
pub fn inner<T: Real>(u: &[C<T>], v: &[C<T>]) -> C<T> {
    u.iter().zip(v).fold(czero(), |acc, (&a, &b)| acc + a * b.conj())
}

pub fn vec_norm<T: Real>(v: &[C<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

pub fn vec_sub<T: Real>(u: &[C<T>], v: &[C<T>]) -> Vec<C<T>> {
    u.iter().zip(v).map(|(&a, &b)| a - b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    #[test]
    fn matmul_and_adjoint() {
        let a = CMatrix::from_fn(2, 2, |i, j| c(i as f64, j as f64));
        let b = CMatrix::identity(2);
        assert_eq!(a.matmul(&b), a);
        let ah = a.adjoint();
        assert_eq!(ah[(0, 1)], a[(1, 0)].conj());
        let prod = &a * &ah;
        // A A* is Hermitian.
        assert!((&prod - &prod.adjoint()).max_abs() < 1e-15);
    }

    #[test]
    fn operator_norm_of_diagonal() {
        let mut a = CMatrix::<f64>::zeros(3, 3);
        a[(0, 0)] = c(0.5, 0.0);
        a[(1, 1)] = c(0.0, -2.0);
        a[(2, 2)] = c(1.0, 0.0);
        assert!((a.operator_norm(200) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn psd_check() {
        let mut g = CMatrix::<f64>::identity(2);
        g[(0, 1)] = c(0.0, 1.0);
        g[(1, 0)] = c(0.0, -1.0);
        // eigenvalues 0 and 2
        assert!(g.is_positive_semidefinite(1e-10));
        assert!(!g.is_positive_semidefinite(-1e-3));
        g[(0, 1)] = c(0.0, 1.1);
        g[(1, 0)] = c(0.0, -1.1);
        assert!(!g.is_positive_semidefinite(1e-10));
    }

    #[test]
    fn inner_is_linear_in_first_argument() {
        let u = vec![c(0.0, 1.0)];
        let v = vec![c(1.0, 0.0)];
        assert_eq!(inner(&u, &v), c(0.0, 1.0));
        assert_eq!(inner(&v, &u), c(0.0, -1.0));
    }
}
