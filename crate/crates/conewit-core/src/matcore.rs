//! Dense complex linear algebra shared by every other module.
//!
//! The central type is [`CMat`], a dense complex matrix optionally tagged
//! with bipartite dimensions `(m, n)` so that a square `mn x mn` matrix can
//! be read as an element of `M_m ⊗ M_n`. The vector space `ℂ^m ⊗ ℂ^n` is
//! identified with `m x n` matrices row by row: the tensor index `(i, k)`
//! maps to the flat index `i·n + k`. All modules inherit this convention.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CVec = DVector<C64>;

/// Relative tolerance accepting a matrix as Hermitian.
pub const HERM_TOL: f64 = 1e-9;
/// PSD test accepts `λ_min ≥ -PSD_TOL · max(1, λ_max)`.
pub const PSD_TOL: f64 = 1e-9;
/// Default rank cutoff: singular values above `RANK_TOL · σ_max` count.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;
/// Orthonormality tolerance for subspace bases.
pub const ORTHO_TOL: f64 = 1e-10;

/// Dense complex matrix with an optional bipartite dimension tag.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    inner: DMatrix<C64>,
    dims: Option<(usize, usize)>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            inner: DMatrix::zeros(rows, cols),
            dims: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        CMat {
            inner: DMatrix::identity(n, n),
            dims: None,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        CMat {
            inner: DMatrix::from_fn(rows, cols, |r, c| f(r, c)),
            dims: None,
        }
    }

    /// Builds a matrix from real entries given row by row.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        CMat::from_fn(r, c, |i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn from_matrix(inner: DMatrix<C64>) -> Self {
        CMat { inner, dims: None }
    }

    /// Attaches the bipartite tag `(m, n)`; requires a square `mn x mn` shape.
    pub fn with_dims(mut self, m: usize, n: usize) -> Result<Self> {
        if self.inner.nrows() != self.inner.ncols() {
            return Err(Error::NotSquare {
                rows: self.inner.nrows(),
                cols: self.inner.ncols(),
            });
        }
        if self.inner.nrows() != m * n {
            return Err(Error::DimMismatch(format!(
                "matrix is {}x{} but tag ({m}, {n}) needs {}",
                self.inner.nrows(),
                self.inner.ncols(),
                m * n
            )));
        }
        self.dims = Some((m, n));
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn cols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn dims(&self) -> Option<(usize, usize)> {
        self.dims
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn as_matrix(&self) -> &DMatrix<C64> {
        &self.inner
    }

    pub fn set(&mut self, r: usize, c: usize, v: C64) {
        self.inner[(r, c)] = v;
    }

    pub fn transpose(&self) -> CMat {
        CMat {
            inner: self.inner.transpose(),
            dims: self.dims,
        }
    }

    pub fn conjugate(&self) -> CMat {
        CMat {
            inner: self.inner.map(|z| z.conj()),
            dims: self.dims,
        }
    }

    pub fn adjoint(&self) -> CMat {
        CMat {
            inner: self.inner.adjoint(),
            dims: self.dims,
        }
    }

    pub fn trace(&self) -> C64 {
        self.inner.trace()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Relative Hermitian deviation `‖A - A*‖_F / (1 + ‖A‖_F)`.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev = 0.0f64;
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                let d = self.inner[(i, j)] - self.inner[(j, i)].conj();
                dev += d.norm_sqr();
            }
        }
        dev.sqrt() / (1.0 + self.frobenius_norm())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// Returns `(A + A*)/2` when the Hermitian deviation is below `HERM_TOL`,
    /// absorbing rounding noise; rejects genuinely non-Hermitian input.
    pub fn hermitian_part(&self) -> Result<CMat> {
        let dev = self.hermitian_deviation();
        if dev > HERM_TOL {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let h = (&self.inner + self.inner.adjoint()).map(|z| z * 0.5);
        Ok(CMat {
            inner: h,
            dims: self.dims,
        })
    }

    pub fn scale(&self, s: f64) -> CMat {
        CMat {
            inner: self.inner.map(|z| z * s),
            dims: self.dims,
        }
    }

    pub fn scale_complex(&self, s: C64) -> CMat {
        CMat {
            inner: self.inner.map(|z| z * s),
            dims: self.dims,
        }
    }

    pub fn add(&self, other: &CMat) -> CMat {
        CMat {
            inner: &self.inner + &other.inner,
            dims: if self.dims == other.dims { self.dims } else { None },
        }
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        CMat {
            inner: &self.inner - &other.inner,
            dims: if self.dims == other.dims { self.dims } else { None },
        }
    }

    pub fn matmul(&self, other: &CMat) -> CMat {
        CMat {
            inner: &self.inner * &other.inner,
            dims: None,
        }
    }

    pub fn mul_vec(&self, v: &CVec) -> CVec {
        &self.inner * v
    }

    /// Rank-one matrix `v v*`.
    pub fn rank_one(v: &CVec) -> CMat {
        let n = v.len();
        CMat::from_fn(n, n, |i, j| v[i] * v[j].conj())
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, idx: (usize, usize)) -> &C64 {
        &self.inner[idx]
    }
}

/// Kronecker product. When both factors are square the result carries the
/// bipartite tag `(A.rows, B.rows)`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (p, q) = (b.rows(), b.cols());
    let mut out = CMat::from_fn(a.rows() * p, a.cols() * q, |r, c| {
        a[(r / p, c / q)] * b[(r % p, c % q)]
    });
    if a.is_square() && b.is_square() {
        out.dims = Some((a.rows(), b.rows()));
    }
    out
}

/// Tensor product of vectors: `(ξ ⊗ η)[i·n + k] = ξ[i] η[k]`.
pub fn tensor(xi: &CVec, eta: &CVec) -> CVec {
    let (m, n) = (xi.len(), eta.len());
    CVec::from_fn(m * n, |idx, _| xi[idx / n] * eta[idx % n])
}

/// Block-wise transpose of a bipartite matrix: block `(i, j)` of the result
/// is block `(j, i)` of the input (transpose on the first tensor factor).
pub fn partial_transpose(a: &CMat) -> Result<CMat> {
    let (m, n) = a.dims().ok_or(Error::MissingDims)?;
    let mut out = CMat::zeros(m * n, m * n);
    for i in 0..m {
        for j in 0..m {
            for k in 0..n {
                for l in 0..n {
                    out.set(i * n + k, j * n + l, a[(j * n + k, i * n + l)]);
                }
            }
        }
    }
    out.dims = Some((m, n));
    Ok(out)
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues come out ascending with matching orthonormal eigenvectors;
/// the reconstruction `Σ λ_i v_i v_i*` agrees with the (symmetrized) input
/// to `1e-9 · (1 + ‖A‖_F)`.
#[derive(Clone, Debug)]
pub struct SpectralDecomp {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<CVec>,
}

impl SpectralDecomp {
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    pub fn reconstruct(&self) -> CMat {
        let n = self.eigenvectors[0].len();
        let mut out = CMat::zeros(n, n);
        for (lam, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            out = out.add(&CMat::rank_one(v).scale(*lam));
        }
        out
    }
}

pub fn hermitian_eig(a: &CMat) -> Result<SpectralDecomp> {
    let h = a.hermitian_part()?;
    let eig = h.inner.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let eigenvectors: Vec<CVec> = order
        .iter()
        .map(|&i| CVec::from_column_slice(eig.eigenvectors.column(i).as_slice()))
        .collect();
    Ok(SpectralDecomp {
        eigenvalues,
        eigenvectors,
    })
}

/// Number of singular values above `tol · σ_max`.
pub fn numerical_rank(a: &CMat, tol: f64) -> usize {
    let svals = a.inner.clone().singular_values();
    let smax = svals.iter().cloned().fold(0.0f64, f64::max);
    svals.iter().filter(|&&s| s > tol * smax).count()
}

/// Orthonormal basis of a subspace of `ℂ^d`, optionally tagged with the
/// bipartite split `(m, n)` of the ambient space.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    dims: Option<(usize, usize)>,
    basis: Vec<CVec>,
}

impl Subspace {
    /// Wraps an already-orthonormal basis, validating the Gram matrix.
    pub fn new(ambient_dim: usize, basis: Vec<CVec>) -> Result<Self> {
        let mut dev = 0.0f64;
        for (i, u) in basis.iter().enumerate() {
            if u.len() != ambient_dim {
                return Err(Error::BadVectorLength {
                    len: u.len(),
                    expected: ambient_dim,
                });
            }
            for (j, v) in basis.iter().enumerate() {
                let g = u.dotc(v);
                let target = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
                dev = dev.max((g - target).norm());
            }
        }
        if dev > ORTHO_TOL {
            return Err(Error::NotOrthonormal { deviation: dev });
        }
        Ok(Subspace {
            ambient_dim,
            dims: None,
            basis,
        })
    }

    /// Orthonormalizes a spanning set by modified Gram-Schmidt, dropping
    /// vectors whose residual falls below `tol` relative to their norm.
    pub fn from_spanning(ambient_dim: usize, vectors: &[CVec], tol: f64) -> Self {
        let mut basis: Vec<CVec> = Vec::new();
        for v in vectors {
            let scale = v.norm();
            if scale == 0.0 {
                continue;
            }
            let mut w = v.clone();
            // two rounds of Gram-Schmidt for numerical orthogonality
            for _ in 0..2 {
                for b in &basis {
                    let c = b.dotc(&w);
                    w -= b * c;
                }
            }
            if w.norm() > tol * scale {
                let nrm = w.norm();
                basis.push(w / C64::new(nrm, 0.0));
            }
        }
        Subspace {
            ambient_dim,
            dims: None,
            basis,
        }
    }

    pub fn with_dims(mut self, m: usize, n: usize) -> Result<Self> {
        if m * n != self.ambient_dim {
            return Err(Error::DimMismatch(format!(
                "ambient dim {} does not factor as {m}x{n}",
                self.ambient_dim
            )));
        }
        self.dims = Some((m, n));
        Ok(self)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dims(&self) -> Option<(usize, usize)> {
        self.dims
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CVec] {
        &self.basis
    }

    pub fn projector(&self) -> CMat {
        let mut p = CMat::zeros(self.ambient_dim, self.ambient_dim);
        for v in &self.basis {
            p = p.add(&CMat::rank_one(v));
        }
        if let Some((m, n)) = self.dims {
            p = p.with_dims(m, n).unwrap();
        }
        p
    }

    pub fn project(&self, v: &CVec) -> CVec {
        let mut out = CVec::zeros(self.ambient_dim);
        for b in &self.basis {
            let c = b.dotc(v);
            out += b * c;
        }
        out
    }

    /// Distance of a unit vector from the subspace: `‖v - Π v‖`.
    pub fn residual(&self, v: &CVec) -> f64 {
        (v - self.project(v)).norm()
    }

    pub fn orthogonal_complement(&self) -> Subspace {
        let mut vectors = self.basis.clone();
        for i in 0..self.ambient_dim {
            let mut e = CVec::zeros(self.ambient_dim);
            e[i] = C64::new(1.0, 0.0);
            vectors.push(e);
        }
        let full = Subspace::from_spanning(self.ambient_dim, &vectors, 1e-10);
        let comp = full.basis[self.basis.len()..].to_vec();
        Subspace {
            ambient_dim: self.ambient_dim,
            dims: self.dims,
            basis: comp,
        }
    }
}

/// Range of a Hermitian matrix: eigenvectors with `|λ| > tol · max|λ|`.
pub fn range_basis(a: &CMat, tol: f64) -> Result<Subspace> {
    let eig = hermitian_eig(a)?;
    let lmax = eig
        .eigenvalues
        .iter()
        .map(|l| l.abs())
        .fold(0.0f64, f64::max);
    let basis: Vec<CVec> = eig
        .eigenvalues
        .iter()
        .zip(&eig.eigenvectors)
        .filter(|(l, _)| l.abs() > tol * lmax)
        .map(|(_, v)| v.clone())
        .collect();
    let mut s = Subspace::new(a.rows(), basis)?;
    s.dims = a.dims();
    Ok(s)
}

/// Kernel of a Hermitian matrix: eigenvectors with `|λ| ≤ tol · max|λ|`.
pub fn kernel_basis(a: &CMat, tol: f64) -> Result<Subspace> {
    let eig = hermitian_eig(a)?;
    let lmax = eig
        .eigenvalues
        .iter()
        .map(|l| l.abs())
        .fold(0.0f64, f64::max);
    let basis: Vec<CVec> = eig
        .eigenvalues
        .iter()
        .zip(&eig.eigenvectors)
        .filter(|(l, _)| l.abs() <= tol * lmax)
        .map(|(_, v)| v.clone())
        .collect();
    let mut s = Subspace::new(a.rows(), basis)?;
    s.dims = a.dims();
    Ok(s)
}

/// Reads a vector `z ∈ ℂ^{mn}` as the `m x n` matrix with `Z[i, k] = z[i·n + k]`.
pub fn vec_mat(z: &CVec, m: usize, n: usize) -> Result<CMat> {
    if z.len() != m * n {
        return Err(Error::BadVectorLength {
            len: z.len(),
            expected: m * n,
        });
    }
    Ok(CMat::from_fn(m, n, |i, k| z[i * n + k]))
}

/// Inverse of [`vec_mat`]: flattens an `m x n` matrix row by row.
pub fn mat_vec(a: &CMat) -> CVec {
    let (m, n) = (a.rows(), a.cols());
    CVec::from_fn(m * n, |idx, _| a[(idx / n, idx % n)])
}
