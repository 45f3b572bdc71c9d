//! Minimal dense linear algebra on top of the system LAPACK/BLAS.
//!
//! Everything here works on real symmetric matrices stored column-major,
//! which covers every Hamiltonian this crate builds (the drive and all
//! density-density terms are real in the occupation basis). Complex state
//! vectors are handled by splitting into real and imaginary parts around
//! the real BLAS kernels.

use std::os::raw::c_int;

use num_complex::Complex64;

use crate::error::{Error, Result};

extern "C" {
    fn dsyevd_(
        jobz: *const u8,
        uplo: *const u8,
        n: *const c_int,
        a: *mut f64,
        lda: *const c_int,
        w: *mut f64,
        work: *mut f64,
        lwork: *const c_int,
        iwork: *mut c_int,
        liwork: *const c_int,
        info: *mut c_int,
    );

    fn dgemv_(
        trans: *const u8,
        m: *const c_int,
        n: *const c_int,
        alpha: *const f64,
        a: *const f64,
        lda: *const c_int,
        x: *const f64,
        incx: *const c_int,
        beta: *const f64,
        y: *mut f64,
        incy: *const c_int,
    );
}

/// Dense real matrix, column-major.
#[derive(Clone, Debug)]
pub struct DenseMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self { n_rows, n_cols, data: vec![0.0; n_rows * n_cols] }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[col * self.n_rows + row]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.data[col * self.n_rows + row] = value;
    }

    #[inline]
    pub fn add_to(&mut self, row: usize, col: usize, value: f64) {
        self.data[col * self.n_rows + row] += value;
    }

    pub fn column(&self, col: usize) -> &[f64] {
        &self.data[col * self.n_rows..(col + 1) * self.n_rows]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// max |A_ij - A_ji|, used by Hermiticity checks.
    pub fn max_asymmetry(&self) -> f64 {
        assert_eq!(self.n_rows, self.n_cols);
        let mut worst = 0.0f64;
        for i in 0..self.n_rows {
            for j in (i + 1)..self.n_cols {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// y = A x for a complex vector x (A real).
    pub fn matvec_complex(&self, x: &[Complex64], y: &mut [Complex64]) {
        assert_eq!(x.len(), self.n_cols);
        assert_eq!(y.len(), self.n_rows);
        let (xr, xi) = split_complex(x);
        let mut yr = vec![0.0; self.n_rows];
        let mut yi = vec![0.0; self.n_rows];
        gemv(b'N', self.n_rows, self.n_cols, &self.data, &xr, &mut yr);
        gemv(b'N', self.n_rows, self.n_cols, &self.data, &xi, &mut yi);
        merge_complex(&yr, &yi, y);
    }
}

fn gemv(trans: u8, m: usize, n: usize, a: &[f64], x: &[f64], y: &mut [f64]) {
    let mm = m as c_int;
    let nn = n as c_int;
    let one = 1.0f64;
    let zero = 0.0f64;
    let inc = 1 as c_int;
    unsafe {
        dgemv_(
            &trans,
            &mm,
            &nn,
            &one,
            a.as_ptr(),
            &mm,
            x.as_ptr(),
            &inc,
            &zero,
            y.as_mut_ptr(),
            &inc,
        );
    }
}

pub fn split_complex(x: &[Complex64]) -> (Vec<f64>, Vec<f64>) {
    let mut re = Vec::with_capacity(x.len());
    let mut im = Vec::with_capacity(x.len());
    for z in x {
        re.push(z.re);
        im.push(z.im);
    }
    (re, im)
}

pub fn merge_complex(re: &[f64], im: &[f64], out: &mut [Complex64]) {
    for ((o, &r), &i) in out.iter_mut().zip(re).zip(im) {
        *o = Complex64::new(r, i);
    }
}

/// Eigendecomposition of a real symmetric matrix: A = V diag(w) V^T.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    dim: usize,
    /// Ascending eigenvalues.
    pub eigenvalues: Vec<f64>,
    /// Eigenvectors as columns, column-major.
    vectors: Vec<f64>,
}

impl SymmetricEigen {
    pub fn compute(matrix: &DenseMatrix) -> Result<Self> {
        assert_eq!(matrix.n_rows, matrix.n_cols);
        let n = matrix.n_rows;
        let nn = n as c_int;
        let mut a = matrix.data.clone();
        let mut w = vec![0.0f64; n];
        let mut info: c_int = 0;
        let jobz = b'V';
        let uplo = b'L';

        // Workspace query.
        let mut wkopt = 0.0f64;
        let mut iwkopt: c_int = 0;
        let neg1: c_int = -1;
        unsafe {
            dsyevd_(
                &jobz,
                &uplo,
                &nn,
                a.as_mut_ptr(),
                &nn,
                w.as_mut_ptr(),
                &mut wkopt,
                &neg1,
                &mut iwkopt,
                &neg1,
                &mut info,
            );
        }
        if info != 0 {
            return Err(Error::Eigensolver { info });
        }
        let lwork = wkopt as c_int;
        let liwork = iwkopt;
        let mut work = vec![0.0f64; lwork as usize];
        let mut iwork = vec![0 as c_int; liwork as usize];
        unsafe {
            dsyevd_(
                &jobz,
                &uplo,
                &nn,
                a.as_mut_ptr(),
                &nn,
                w.as_mut_ptr(),
                work.as_mut_ptr(),
                &lwork,
                iwork.as_mut_ptr(),
                &liwork,
                &mut info,
            );
        }
        if info != 0 {
            return Err(Error::Eigensolver { info });
        }
        Ok(Self { dim: n, eigenvalues: w, vectors: a })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eigenvector(&self, k: usize) -> &[f64] {
        &self.vectors[k * self.dim..(k + 1) * self.dim]
    }

    /// c = V^T x for complex x.
    pub fn project(&self, x: &[Complex64]) -> Vec<Complex64> {
        let (xr, xi) = split_complex(x);
        let mut cr = vec![0.0; self.dim];
        let mut ci = vec![0.0; self.dim];
        gemv(b'T', self.dim, self.dim, &self.vectors, &xr, &mut cr);
        gemv(b'T', self.dim, self.dim, &self.vectors, &xi, &mut ci);
        let mut out = vec![Complex64::default(); self.dim];
        merge_complex(&cr, &ci, &mut out);
        out
    }

    /// x = V c for complex c.
    pub fn reconstruct(&self, c: &[Complex64]) -> Vec<Complex64> {
        let (cr, ci) = split_complex(c);
        let mut xr = vec![0.0; self.dim];
        let mut xi = vec![0.0; self.dim];
        gemv(b'N', self.dim, self.dim, &self.vectors, &cr, &mut xr);
        gemv(b'N', self.dim, self.dim, &self.vectors, &ci, &mut xi);
        let mut out = vec![Complex64::default(); self.dim];
        merge_complex(&xr, &xi, &mut out);
        out
    }

    /// exp(-i t A) x via the spectral decomposition.
    pub fn evolve(&self, x: &[Complex64], t: f64) -> Vec<Complex64> {
        let mut c = self.project(x);
        for (ck, &e) in c.iter_mut().zip(&self.eigenvalues) {
            *ck *= Complex64::from_polar(1.0, -e * t);
        }
        self.reconstruct(&c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_of_pauli_x() {
        let mut m = DenseMatrix::zeros(2, 2);
        m.set(0, 1, 1.0);
        m.set(1, 0, 1.0);
        let eig = SymmetricEigen::compute(&m).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-12);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn evolve_reproduces_rabi_rotation() {
        // H = x sigma_x, psi0 = |0>; |<1|psi(t)>|^2 = sin^2(x t).
        let x = 0.7;
        let mut m = DenseMatrix::zeros(2, 2);
        m.set(0, 1, x);
        m.set(1, 0, x);
        let eig = SymmetricEigen::compute(&m).unwrap();
        let psi0 = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let t = 1.3;
        let psi = eig.evolve(&psi0, t);
        let p1 = psi[1].norm_sqr();
        assert!((p1 - (x * t).sin().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn project_reconstruct_roundtrip() {
        let mut m = DenseMatrix::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                m.set(i, j, 1.0 / (1.0 + (i as f64 - j as f64).abs()));
            }
        }
        let eig = SymmetricEigen::compute(&m).unwrap();
        let x = vec![
            Complex64::new(0.3, -0.1),
            Complex64::new(-0.2, 0.7),
            Complex64::new(0.5, 0.4),
        ];
        let back = eig.reconstruct(&eig.project(&x));
        for (a, b) in x.iter().zip(&back) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
