//! Bilinear optimization over product vectors by alternating exact
//! eigensteps.
//!
//! Every objective handled here is a Hermitian quadratic form in each
//! tensor factor separately: freezing `ξ` turns the objective into
//! `η* M(ξ) η` for a Hermitian `M(ξ)`, so the optimal half-step is the
//! extremal eigenvector of `M(ξ)`, and symmetrically in `ξ`. The objective
//! is therefore monotone along the iteration. Objectives are nonconvex in
//! the pair, so every search is a seeded multistart; negative certificates
//! are exact (re-evaluable), absence claims are heuristic.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::maps::{LinMap, ProductVector};
use crate::matcore::{
    hermitian_eig, numerical_rank, vec_mat, CMat, CVec, Subspace, C64, DEFAULT_RANK_TOL,
};

/// Knobs for the multistart searches.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// Relative objective-change threshold declaring a restart converged.
    pub conv_tol: f64,
    pub seed: u64,
    /// Two unit tensors with overlap above this are the same product line.
    pub dedup_overlap: f64,
    /// Certification threshold: pairings below `-tol` are certified
    /// negative, projection residuals below `tol` count as found.
    pub tol: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            restarts: 64,
            max_iters: 200,
            conv_tol: 1e-12,
            seed: 0,
            dedup_overlap: 1.0 - 1e-6,
            tol: 1e-8,
        }
    }
}

impl SearchConfig {
    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.restarts < 1 {
            return Err(Error::InvalidConfig("restarts must be >= 1".into()));
        }
        if !(self.dedup_overlap > 0.0 && self.dedup_overlap < 1.0) {
            return Err(Error::InvalidConfig(
                "dedup_overlap must lie strictly between 0 and 1".into(),
            ));
        }
        Ok(())
    }
}

/// Outcome of a multistart search.
#[derive(Clone, Debug)]
pub struct SearchResult {
    /// Best objective over all restarts (minimum or maximum per mode).
    pub value: f64,
    pub best: ProductVector,
    pub n_converged: usize,
    pub per_restart_values: Vec<f64>,
}

/// Product lines found inside a subspace.
#[derive(Clone, Debug)]
pub struct EnumerationResult {
    pub lines: Vec<ProductVector>,
    /// Best projection value over all restarts, in `[0, 1]`.
    pub best_value: f64,
    pub n_converged: usize,
    /// Restarts that reached `1 - tol`, before dedup.
    pub n_hits: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Min,
    Max,
}

/// The three bilinear objectives, all over unit `(ξ, η)`:
/// `ConjPairing`: `⟨zz*, φ⟩ = z* C̄_φ z` with `z = ξ⊗η`;
/// `Projection`: `‖Π z‖² = z* Π z`;
/// `PairedProjection`: `‖Π_D(ξ⊗η)‖² + ‖Π_E(ξ̄⊗η)‖²`.
enum Form<'a> {
    ConjPairing { cbar: CMat },
    Projection { proj: &'a CMat },
    PairedProjection { proj_d: &'a CMat, proj_e: &'a CMat },
}

/// `M[k,l] = Σ_{ij} conj(x_i) F[(i·n+k),(j·n+l)] x_j` — the Hermitian form
/// in the second factor once the first is frozen at `x`.
fn contract_first(f: &CMat, x: &CVec, n: usize) -> CMat {
    let m = x.len();
    CMat::from_fn(n, n, |k, l| {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..m {
            for j in 0..m {
                acc += x[i].conj() * f[(i * n + k, j * n + l)] * x[j];
            }
        }
        acc
    })
}

/// `M[i,j] = Σ_{kl} conj(y_k) F[(i·n+k),(j·n+l)] y_l` — the form in the
/// first factor once the second is frozen at `y`.
fn contract_second(f: &CMat, y: &CVec, m: usize) -> CMat {
    let n = y.len();
    CMat::from_fn(m, m, |i, j| {
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..n {
            for l in 0..n {
                acc += y[k].conj() * f[(i * n + k, j * n + l)] * y[l];
            }
        }
        acc
    })
}

impl Form<'_> {
    fn eta_matrix(&self, xi: &CVec, n: usize) -> CMat {
        match self {
            Form::ConjPairing { cbar } => contract_first(cbar, xi, n),
            Form::Projection { proj } => contract_first(proj, xi, n),
            Form::PairedProjection { proj_d, proj_e } => {
                let xi_conj = xi.map(|z| z.conj());
                contract_first(proj_d, xi, n).add(&contract_first(proj_e, &xi_conj, n))
            }
        }
    }

    fn xi_matrix(&self, eta: &CVec, m: usize) -> CMat {
        match self {
            Form::ConjPairing { cbar } => contract_second(cbar, eta, m),
            Form::Projection { proj } => contract_second(proj, eta, m),
            Form::PairedProjection { proj_d, proj_e } => {
                // the E-term reads ξ̄* N ξ̄ = ξ* Nᵗ ξ
                let n_e = contract_second(proj_e, eta, m).transpose();
                contract_second(proj_d, eta, m).add(&n_e)
            }
        }
    }

    fn eval(&self, xi: &CVec, eta: &CVec) -> f64 {
        let m = self.eta_matrix(xi, eta.len());
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..eta.len() {
            for l in 0..eta.len() {
                acc += eta[k].conj() * m[(k, l)] * eta[l];
            }
        }
        acc.re
    }
}

/// Deterministic per-restart RNG: restarts are order-independent, so serial
/// and parallel execution agree given the same `(seed, restart)` pair.
pub(crate) fn restart_rng_for(seed: u64, restart: usize) -> ChaCha8Rng {
    restart_rng(seed, restart)
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut s = seed
        .wrapping_add((restart as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    // splitmix64 finalizer
    s = (s ^ (s >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    s = (s ^ (s >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    s ^= s >> 31;
    ChaCha8Rng::seed_from_u64(s)
}

fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> CVec {
    let dist = StandardNormal;
    let v = CVec::from_fn(n, |_, _| {
        C64::new(dist.sample(rng), dist.sample(rng))
    });
    let nrm = v.norm();
    v / C64::new(nrm, 0.0)
}

struct RestartOutcome {
    value: f64,
    xi: CVec,
    eta: CVec,
    converged: bool,
}

fn extremal_vector(m: &CMat, mode: Mode) -> (f64, CVec) {
    let eig = hermitian_eig(m).expect("reduced step matrices are Hermitian");
    match mode {
        Mode::Min => (eig.eigenvalues[0], eig.eigenvectors[0].clone()),
        Mode::Max => (
            *eig.eigenvalues.last().unwrap(),
            eig.eigenvectors.last().unwrap().clone(),
        ),
    }
}

fn improves(new: f64, old: f64, mode: Mode) -> bool {
    let slack = 1e-9 * (1.0 + old.abs());
    match mode {
        Mode::Min => new <= old + slack,
        Mode::Max => new >= old - slack,
    }
}

fn run_restart(
    form: &Form,
    m: usize,
    n: usize,
    mode: Mode,
    cfg: &SearchConfig,
    rng: &mut ChaCha8Rng,
    init: Option<(CVec, CVec)>,
) -> RestartOutcome {
    let (mut xi, mut eta) = init.unwrap_or_else(|| (random_unit(rng, m), random_unit(rng, n)));
    let mut prev = form.eval(&xi, &eta);
    let mut converged = false;
    for _ in 0..cfg.max_iters {
        let (v1, eta_new) = extremal_vector(&form.eta_matrix(&xi, n), mode);
        debug_assert!(improves(v1, prev, mode));
        eta = eta_new;
        let (v2, xi_new) = extremal_vector(&form.xi_matrix(&eta, m), mode);
        debug_assert!(improves(v2, v1, mode));
        xi = xi_new;
        if (v2 - prev).abs() <= cfg.conv_tol * v2.abs().max(1.0) {
            prev = v2;
            converged = true;
            break;
        }
        prev = v2;
    }
    RestartOutcome {
        value: prev,
        xi,
        eta,
        converged,
    }
}

fn multistart(form: &Form, m: usize, n: usize, mode: Mode, cfg: &SearchConfig) -> SearchResult {
    let mut per_restart_values = Vec::with_capacity(cfg.restarts);
    let mut n_converged = 0;
    let mut best: Option<RestartOutcome> = None;
    for r in 0..cfg.restarts {
        let mut rng = restart_rng(cfg.seed, r);
        let out = run_restart(form, m, n, mode, cfg, &mut rng, None);
        per_restart_values.push(out.value);
        if out.converged {
            n_converged += 1;
        }
        let better = match &best {
            None => true,
            Some(b) => match mode {
                Mode::Min => out.value < b.value,
                Mode::Max => out.value > b.value,
            },
        };
        if better {
            best = Some(out);
        }
    }
    let best = best.unwrap();
    SearchResult {
        value: best.value,
        best: ProductVector::normalized(best.xi, best.eta).expect("unit factors"),
        n_converged,
        per_restart_values,
    }
}

fn bipartite_dims(s: &Subspace) -> Result<(usize, usize)> {
    s.dims().ok_or(Error::MissingDims)
}

/// Minimizes `⟨(ξ⊗η)(ξ⊗η)*, φ⟩` over unit product vectors. Nonnegative for
/// block-positive maps; a negative value comes with the achieving pair.
pub fn min_pairing_over_products(phi: &LinMap, cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let form = Form::ConjPairing {
        cbar: phi.choi().conjugate(),
    };
    Ok(multistart(
        &form,
        phi.input_dim(),
        phi.output_dim(),
        Mode::Min,
        cfg,
    ))
}

/// Maximizes `‖Π_P(ξ⊗η)‖² ∈ [0, 1]`; value 1 means a product vector lies in
/// `P`, and `1 - value` is the residual.
pub fn best_product_in_subspace(p: &Subspace, cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    if p.dim() == 0 {
        return Err(Error::EmptySubspace);
    }
    let (m, n) = bipartite_dims(p)?;
    let proj = p.projector();
    let form = Form::Projection { proj: &proj };
    Ok(multistart(&form, m, n, Mode::Max, cfg))
}

/// Maximizes `‖Π_D(ξ⊗η)‖² + ‖Π_E(ξ̄⊗η)‖² ≤ 2`; value 2 means some product
/// vector lies in `D` with its partial conjugate in `E`.
pub fn best_product_in_pair(d: &Subspace, e: &Subspace, cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let (m, n) = bipartite_dims(d)?;
    if bipartite_dims(e)? != (m, n) {
        return Err(Error::DimMismatch(format!(
            "subspace pair lives in different spaces: {:?} vs {:?}",
            d.dims(),
            e.dims()
        )));
    }
    let proj_d = d.projector();
    let proj_e = e.projector();
    let form = Form::PairedProjection {
        proj_d: &proj_d,
        proj_e: &proj_e,
    };
    Ok(multistart(&form, m, n, Mode::Max, cfg))
}

fn overlap(a: &CVec, b: &CVec) -> f64 {
    a.dotc(b).norm()
}

fn dedup_insert(lines: &mut Vec<(ProductVector, f64)>, cand: ProductVector, value: f64, thr: f64) {
    let z = cand.tensor();
    for (existing, _) in lines.iter() {
        if overlap(&z, &existing.tensor()) > thr {
            return;
        }
    }
    lines.push((cand, value));
}

/// Multistart maximization of `‖Π_P(ξ⊗η)‖²` keeping every restart whose
/// residual falls below `cfg.tol`, deduplicated by line overlap.
pub fn enumerate_product_lines(p: &Subspace, cfg: &SearchConfig) -> Result<EnumerationResult> {
    cfg.validate()?;
    let (m, n) = bipartite_dims(p)?;
    if p.dim() == 0 {
        return Ok(EnumerationResult {
            lines: Vec::new(),
            best_value: 0.0,
            n_converged: cfg.restarts,
            n_hits: 0,
        });
    }
    let proj = p.projector();
    let form = Form::Projection { proj: &proj };
    let mut lines: Vec<(ProductVector, f64)> = Vec::new();
    let mut best_value = f64::NEG_INFINITY;
    let mut n_converged = 0;
    let mut n_hits = 0;
    for r in 0..cfg.restarts {
        let mut rng = restart_rng(cfg.seed, r);
        let out = run_restart(&form, m, n, Mode::Max, cfg, &mut rng, None);
        if out.converged {
            n_converged += 1;
        }
        best_value = best_value.max(out.value);
        if 1.0 - out.value < cfg.tol {
            n_hits += 1;
            let pv = ProductVector::normalized(out.xi, out.eta).expect("unit factors");
            dedup_insert(&mut lines, pv, out.value, cfg.dedup_overlap);
        }
    }
    Ok(EnumerationResult {
        lines: lines.into_iter().map(|(pv, _)| pv).collect(),
        best_value,
        n_converged,
        n_hits,
    })
}

/// Schmidt rank of `z ∈ ℂ^{mn}`: the rank of its `m x n` matrix reshaping.
pub fn schmidt_rank(z: &CVec, m: usize, n: usize) -> Result<usize> {
    if z.norm() == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(numerical_rank(&vec_mat(z, m, n)?, DEFAULT_RANK_TOL))
}

/// Draws `k` candidate starting pairs and keeps the one least aligned with
/// the already-found lines, biasing multistarts toward unexplored regions.
fn biased_init(
    rng: &mut ChaCha8Rng,
    m: usize,
    n: usize,
    found: &[(ProductVector, f64)],
) -> (CVec, CVec) {
    const CANDIDATES: usize = 4;
    let mut best: Option<(f64, CVec, CVec)> = None;
    for _ in 0..CANDIDATES {
        let xi = random_unit(rng, m);
        let eta = random_unit(rng, n);
        if found.is_empty() {
            return (xi, eta);
        }
        let z = crate::matcore::tensor(&xi, &eta);
        let score = found
            .iter()
            .map(|(pv, _)| overlap(&z, &pv.tensor()))
            .fold(0.0f64, f64::max);
        if best.as_ref().map_or(true, |(s, _, _)| score < *s) {
            best = Some((score, xi, eta));
        }
    }
    let (_, xi, eta) = best.unwrap();
    (xi, eta)
}

/// Collects distinct product lines with pairing below `threshold`. Isolated
/// zeros can have tiny attraction basins next to a zero manifold, so the
/// seeded restarts are preceded by deterministic coordinate-product probes
/// `(e_i, e_j)` and biased away from lines already found. Returns
/// `(line, pairing)` pairs.
pub fn collect_zero_pairing_lines(
    phi: &LinMap,
    threshold: f64,
    cfg: &SearchConfig,
) -> Result<Vec<(ProductVector, f64)>> {
    cfg.validate()?;
    let form = Form::ConjPairing {
        cbar: phi.choi().conjugate(),
    };
    let (m, n) = (phi.input_dim(), phi.output_dim());
    let mut lines: Vec<(ProductVector, f64)> = Vec::new();
    let mut record = |out: RestartOutcome, lines: &mut Vec<(ProductVector, f64)>| {
        if out.value < threshold {
            let pv = ProductVector::normalized(out.xi, out.eta).expect("unit factors");
            dedup_insert(lines, pv, out.value, cfg.dedup_overlap);
        }
    };
    for i in 0..m {
        for j in 0..n {
            let mut rng = restart_rng(cfg.seed, cfg.restarts + i * n + j);
            let mut xi = CVec::zeros(m);
            xi[i] = C64::new(1.0, 0.0);
            let mut eta = CVec::zeros(n);
            eta[j] = C64::new(1.0, 0.0);
            let out = run_restart(&form, m, n, Mode::Min, cfg, &mut rng, Some((xi, eta)));
            record(out, &mut lines);
        }
    }
    for r in 0..cfg.restarts {
        let mut rng = restart_rng(cfg.seed, r);
        let init = biased_init(&mut rng, m, n, &lines);
        let out = run_restart(&form, m, n, Mode::Min, cfg, &mut rng, Some(init));
        record(out, &mut lines);
    }
    Ok(lines)
}

/// Collects distinct product vectors `ξ⊗η ∈ D` with `ξ̄⊗η ∈ E`, i.e. paired
/// residual below `cfg.tol`, using deflation-biased restarts. Returns
/// `(line, residual)` pairs.
pub fn collect_product_pairs(
    d: &Subspace,
    e: &Subspace,
    cfg: &SearchConfig,
) -> Result<Vec<(ProductVector, f64)>> {
    cfg.validate()?;
    let (m, n) = bipartite_dims(d)?;
    if bipartite_dims(e)? != (m, n) {
        return Err(Error::DimMismatch(
            "subspace pair lives in different spaces".into(),
        ));
    }
    let proj_d = d.projector();
    let proj_e = e.projector();
    let form = Form::PairedProjection {
        proj_d: &proj_d,
        proj_e: &proj_e,
    };
    let mut lines: Vec<(ProductVector, f64)> = Vec::new();
    for r in 0..cfg.restarts {
        let mut rng = restart_rng(cfg.seed, r);
        let init = biased_init(&mut rng, m, n, &lines);
        let out = run_restart(&form, m, n, Mode::Max, cfg, &mut rng, Some(init));
        let residual = 2.0 - out.value;
        if residual < cfg.tol {
            let pv = ProductVector::normalized(out.xi, out.eta).expect("unit factors");
            dedup_insert(&mut lines, pv, residual, cfg.dedup_overlap);
        }
    }
    Ok(lines)
}
