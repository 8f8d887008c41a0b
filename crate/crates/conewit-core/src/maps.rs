//! Linear maps `M_m → M_n` in Choi-matrix normal form, the duality pairing
//! `⟨A, φ⟩ = Tr(A C_φᵗ)`, and the classical example states.
//!
//! A map is stored canonically as its Choi matrix
//! `C_φ = Σ_{ij} e_ij ⊗ φ(e_ij)`; a Kraus decomposition, when known, is
//! attached as a witness and never recomputed implicitly. A CP Kraus matrix
//! `V` contributes the rank-one projector onto `Σ_i e_i ⊗ V_i*` (the flat
//! vector of the entrywise conjugate of `V`); a co-CP Kraus matrix
//! contributes the partial transpose of such a projector.

use crate::error::{Error, Result};
use crate::matcore::{mat_vec, partial_transpose, tensor, CMat, CVec, C64, HERM_TOL};

/// Unit-norm tolerance for [`ProductVector`].
const UNIT_TOL: f64 = 1e-12;

/// A pair of Kraus lists: `cp` matrices act as `X ↦ V* X V`, `ccp` matrices
/// contribute completely copositive summands.
#[derive(Clone, Debug, Default)]
pub struct KrausForm {
    pub cp: Vec<CMat>,
    pub ccp: Vec<CMat>,
}

/// A linear map `M_m → M_n` stored as its Choi matrix.
#[derive(Clone, Debug)]
pub struct LinMap {
    m: usize,
    n: usize,
    choi: CMat,
    kraus: Option<KrausForm>,
}

impl LinMap {
    /// Wraps a Hermitian Choi matrix carrying a bipartite tag.
    pub fn from_choi(choi: CMat) -> Result<Self> {
        let (m, n) = choi.dims().ok_or(Error::MissingDims)?;
        let choi = choi.hermitian_part()?;
        Ok(LinMap {
            m,
            n,
            choi,
            kraus: None,
        })
    }

    pub fn input_dim(&self) -> usize {
        self.m
    }

    pub fn output_dim(&self) -> usize {
        self.n
    }

    pub fn choi(&self) -> &CMat {
        &self.choi
    }

    pub fn kraus(&self) -> Option<&KrausForm> {
        self.kraus.as_ref()
    }

    /// Applies the map: `φ(X)[k,l] = Σ_{ij} X[i,j] · C[(i·n+k),(j·n+l)]`,
    /// i.e. `φ(e_ij)` is block `(i, j)` of the Choi matrix.
    pub fn apply(&self, x: &CMat) -> Result<CMat> {
        if x.rows() != self.m || x.cols() != self.m {
            return Err(Error::DimMismatch(format!(
                "expected {0}x{0} input, got {1}x{2}",
                self.m,
                x.rows(),
                x.cols()
            )));
        }
        let n = self.n;
        Ok(CMat::from_fn(n, n, |k, l| {
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..self.m {
                for j in 0..self.m {
                    acc += x[(i, j)] * self.choi[(i * n + k, j * n + l)];
                }
            }
            acc
        }))
    }

    /// The composition `φ ∘ tp`: its Choi matrix is the partial transpose of
    /// `C_φ`. Any attached Kraus lists swap roles.
    pub fn compose_transpose(&self) -> LinMap {
        let choi = partial_transpose(&self.choi).expect("choi carries dims");
        let kraus = self.kraus.as_ref().map(|k| KrausForm {
            cp: k.ccp.clone(),
            ccp: k.cp.clone(),
        });
        LinMap {
            m: self.m,
            n: self.n,
            choi,
            kraus,
        }
    }

    /// The composition `tp ∘ φ`: transposes every `n x n` block of the Choi
    /// matrix in place. Kraus lists swap roles and conjugate.
    pub fn transpose_compose(&self) -> LinMap {
        let (m, n) = (self.m, self.n);
        let mut choi = CMat::zeros(m * n, m * n);
        for i in 0..m {
            for j in 0..m {
                for k in 0..n {
                    for l in 0..n {
                        choi.set(i * n + k, j * n + l, self.choi[(i * n + l, j * n + k)]);
                    }
                }
            }
        }
        let choi = choi.with_dims(m, n).unwrap();
        let kraus = self.kraus.as_ref().map(|k| KrausForm {
            cp: k.ccp.iter().map(|w| w.conjugate()).collect(),
            ccp: k.cp.iter().map(|v| v.conjugate()).collect(),
        });
        LinMap {
            m: self.m,
            n: self.n,
            choi,
            kraus,
        }
    }
}

/// Flat vector of the entrywise conjugate of an `m x n` Kraus matrix; the
/// Choi contribution of `X ↦ V* X V` is the rank-one projector onto it.
fn kraus_vector(v: &CMat) -> CVec {
    mat_vec(&v.conjugate())
}

/// Builds the map `X ↦ Σ_V V* X V + Σ_W transpose-conjugate part` from CP
/// and co-CP Kraus lists of `m x n` matrices, attaching the lists as a
/// witness.
pub fn choi_of_kraus(m: usize, n: usize, cp: &[CMat], ccp: &[CMat]) -> Result<LinMap> {
    for v in cp.iter().chain(ccp.iter()) {
        if v.rows() != m || v.cols() != n {
            return Err(Error::DimMismatch(format!(
                "Kraus matrix is {}x{}, expected {m}x{n}",
                v.rows(),
                v.cols()
            )));
        }
    }
    let mut choi = CMat::zeros(m * n, m * n).with_dims(m, n)?;
    for v in cp {
        let w = kraus_vector(v);
        choi = choi.add(&CMat::rank_one(&w)).with_dims(m, n)?;
    }
    for w in ccp {
        let wv = kraus_vector(w);
        let proj = CMat::rank_one(&wv).with_dims(m, n)?;
        choi = choi.add(&partial_transpose(&proj)?);
    }
    Ok(LinMap {
        m,
        n,
        choi,
        kraus: Some(KrausForm {
            cp: cp.to_vec(),
            ccp: ccp.to_vec(),
        }),
    })
}

/// The map `X ↦ Tr(X) I_n`; its Choi matrix is the identity of `M_m ⊗ M_n`.
pub fn trace_map(m: usize, n: usize) -> LinMap {
    LinMap {
        m,
        n,
        choi: CMat::identity(m * n).with_dims(m, n).unwrap(),
        kraus: None,
    }
}

/// Duality pairing `⟨A, φ⟩ = Tr(A C_φᵗ) = Σ_{ij} A[i,j] C_φ[i,j]` for
/// Hermitian `A`; real for Hermitian inputs.
pub fn pair(a: &CMat, phi: &LinMap) -> Result<f64> {
    let (m, n) = a.dims().ok_or(Error::MissingDims)?;
    if (m, n) != (phi.m, phi.n) {
        return Err(Error::DimMismatch(format!(
            "state is {m}⊗{n}, map is {}⊗{}",
            phi.m, phi.n
        )));
    }
    let a = a.hermitian_part()?;
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            acc += a[(i, j)] * phi.choi[(i, j)];
        }
    }
    debug_assert!(acc.im.abs() <= 1e-9 * (1.0 + acc.re.abs()));
    Ok(acc.re)
}

/// Pairing against a rank-one projector `z z*` without forming the
/// projector: `⟨z z*, φ⟩ = z* C̄_φ z`.
pub fn pair_vector(z: &CVec, phi: &LinMap) -> Result<f64> {
    if z.len() != phi.m * phi.n {
        return Err(Error::BadVectorLength {
            len: z.len(),
            expected: phi.m * phi.n,
        });
    }
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..z.len() {
        for j in 0..z.len() {
            acc += z[i].conj() * phi.choi[(i, j)].conj() * z[j];
        }
    }
    Ok(acc.re)
}

/// A normalized product vector `ξ ⊗ η` with `‖ξ‖ = ‖η‖ = 1`.
#[derive(Clone, Debug)]
pub struct ProductVector {
    xi: CVec,
    eta: CVec,
}

impl ProductVector {
    /// Normalizes both factors; rejects zero factors and factors further
    /// than `1e-12` from unit norm after an explicit normalize is declined.
    pub fn new(xi: CVec, eta: CVec) -> Result<Self> {
        let (nx, ne) = (xi.norm(), eta.norm());
        if nx == 0.0 || ne == 0.0 {
            return Err(Error::ZeroVector);
        }
        if (nx - 1.0).abs() > UNIT_TOL || (ne - 1.0).abs() > UNIT_TOL {
            return Err(Error::NonUnitVector {
                norm: if (nx - 1.0).abs() > UNIT_TOL { nx } else { ne },
            });
        }
        Ok(ProductVector { xi, eta })
    }

    /// Normalizes arbitrary nonzero factors.
    pub fn normalized(xi: CVec, eta: CVec) -> Result<Self> {
        let (nx, ne) = (xi.norm(), eta.norm());
        if nx == 0.0 || ne == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(ProductVector {
            xi: xi / C64::new(nx, 0.0),
            eta: eta / C64::new(ne, 0.0),
        })
    }

    pub fn xi(&self) -> &CVec {
        &self.xi
    }

    pub fn eta(&self) -> &CVec {
        &self.eta
    }

    /// The assembled tensor `ξ ⊗ η`.
    pub fn tensor(&self) -> CVec {
        tensor(&self.xi, &self.eta)
    }

    /// The partial conjugate `ξ̄ ⊗ η`.
    pub fn partial_conjugate(&self) -> CVec {
        let xi_conj = self.xi.map(|z| z.conj());
        tensor(&xi_conj, &self.eta)
    }

    /// Rank-one projector onto `ξ ⊗ η`, tagged with `(m, n)`.
    pub fn projector(&self) -> CMat {
        let z = self.tensor();
        CMat::rank_one(&z)
            .with_dims(self.xi.len(), self.eta.len())
            .unwrap()
    }
}

/// The 3 ⊗ 3 PPT entangled state of Choi: diagonal
/// `(1, 2, 1/2, 1/2, 1, 2, 2, 1/2, 1)` with unit couplings, rank 4,
/// equal to its own partial transpose.
pub fn choi_ppt_state() -> CMat {
    let mut a = CMat::zeros(9, 9);
    let one = C64::new(1.0, 0.0);
    let diag = [1.0, 2.0, 0.5, 0.5, 1.0, 2.0, 2.0, 0.5, 1.0];
    for (i, d) in diag.iter().enumerate() {
        a.set(i, i, C64::new(*d, 0.0));
    }
    for &(i, j) in &[(0, 4), (0, 8), (4, 8), (1, 3), (2, 6), (5, 7)] {
        a.set(i, j, one);
        a.set(j, i, one);
    }
    a.with_dims(3, 3).unwrap()
}

/// Størmer's 3 ⊗ 3 PPT state with parameter `μ > 0`: diagonal
/// `(2μ, 4μ², 1, 1, 2μ, 4μ², 4μ², 1, 2μ)` and corner couplings `2μ`.
pub fn stormer_state(mu: f64) -> Result<CMat> {
    if mu <= 0.0 {
        return Err(Error::NegativeParameter {
            name: "mu",
            value: mu,
        });
    }
    let mut a = CMat::zeros(9, 9);
    let m2 = 4.0 * mu * mu;
    let diag = [2.0 * mu, m2, 1.0, 1.0, 2.0 * mu, m2, m2, 1.0, 2.0 * mu];
    for (i, d) in diag.iter().enumerate() {
        a.set(i, i, C64::new(*d, 0.0));
    }
    for &(i, j) in &[(0, 4), (0, 8), (4, 8)] {
        a.set(i, j, C64::new(2.0 * mu, 0.0));
        a.set(j, i, C64::new(2.0 * mu, 0.0));
    }
    a.with_dims(3, 3).unwrap().hermitian_part()
}

/// An X-family state together with its construction parameters.
#[derive(Clone, Debug)]
pub struct XState {
    pub state: CMat,
    pub lambda: f64,
    pub mu: f64,
    /// `λ = 1` yields a separable member rather than an edge candidate.
    pub degenerate: bool,
}

/// The 3 ⊗ 3 X-family state for `λ > 0` (with `μ = 1/λ`) and unit vectors
/// `ξ, η, ζ ∈ ℂ³`: ones on the corner 3x3 pattern, `λ²` and `μ²` on the
/// remaining diagonal, and the inner products `(η|ξ), (ζ|ξ), (ζ|η)` coupling
/// the off-diagonal pairs.
pub fn x_state(lambda: f64, xi: &CVec, eta: &CVec, zeta: &CVec) -> Result<XState> {
    if lambda <= 0.0 {
        return Err(Error::NegativeParameter {
            name: "lambda",
            value: lambda,
        });
    }
    for v in [xi, eta, zeta] {
        if v.len() != 3 {
            return Err(Error::BadVectorLength {
                len: v.len(),
                expected: 3,
            });
        }
        if (v.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::NonUnitVector { norm: v.norm() });
        }
    }
    let mu = 1.0 / lambda;
    let l2 = C64::new(lambda * lambda, 0.0);
    let m2 = C64::new(mu * mu, 0.0);
    let one = C64::new(1.0, 0.0);
    // inner product linear in the first argument: (x|y) = Σ x_i conj(y_i)
    let ip = |x: &CVec, y: &CVec| -> C64 { y.dotc(x) };

    let mut x = CMat::zeros(9, 9);
    for &(i, j) in &[(0, 0), (4, 4), (8, 8), (0, 4), (4, 0), (0, 8), (8, 0), (4, 8), (8, 4)] {
        x.set(i, j, one);
    }
    for &i in &[1, 5, 6] {
        x.set(i, i, l2);
    }
    for &i in &[2, 3, 7] {
        x.set(i, i, m2);
    }
    x.set(1, 3, ip(eta, xi));
    x.set(3, 1, ip(xi, eta));
    x.set(2, 6, ip(zeta, xi));
    x.set(6, 2, ip(xi, zeta));
    x.set(5, 7, ip(zeta, eta));
    x.set(7, 5, ip(eta, zeta));
    let state = x.with_dims(3, 3)?.hermitian_part()?;
    Ok(XState {
        state,
        lambda,
        mu,
        degenerate: (lambda - 1.0).abs() < HERM_TOL,
    })
}
