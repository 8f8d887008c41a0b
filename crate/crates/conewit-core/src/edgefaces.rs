//! Edge-state detection and typing, boundary tests for the positive-map
//! cone, and entanglement-witness analysis.
//!
//! A PPT state `A` is an *edge* when no nonzero product vector `ξ⊗η` lies
//! in the range of `A` with `ξ̄⊗η` in the range of `A^τ`; its *type* is the
//! pair of range dimensions `(rank A, rank A^τ)`. Edges violate the range
//! criterion in the strongest way, so a found product pair certifies
//! "not an edge" while absence after a multistart search stays heuristic:
//! proving nonexistence is beyond numerical search.

use crate::cones::{
    is_cp, is_ppt, span_dimension, Certificate, SearchStats, Verdict, VerdictStatus,
    SPAN_RANK_TOL,
};
use crate::error::{Error, Result};
use crate::maps::{pair, LinMap, ProductVector};
use crate::matcore::{
    mat_vec, numerical_rank, partial_transpose, range_basis, CMat, CVec, Subspace, C64,
    DEFAULT_RANK_TOL,
};
use crate::prodsearch::{
    best_product_in_pair, best_product_in_subspace, collect_zero_pairing_lines,
    min_pairing_over_products, SearchConfig, SearchResult,
};

/// Residual above which a heuristic completely-entangled claim is accepted.
pub const ENTANGLED_RESIDUAL: f64 = 1e-3;

/// Outcome of the edge analysis of a state.
#[derive(Clone, Debug)]
pub struct EdgeReport {
    pub ppt: Verdict,
    /// Range dimension of the state.
    pub p: usize,
    /// Range dimension of its partial transpose.
    pub q: usize,
    pub paired_search: SearchResult,
    /// `CertifiedNo` carries the product pair (or, for non-PPT input, the
    /// PPT violation); `HeuristicYes` means no pair was found.
    pub edge: Verdict,
}

/// The pair `(R(A), R(A^τ))` of a PPT state; these pairs parameterize the
/// faces of the PPT cone.
pub fn intersection_pair(a: &CMat, tol: f64) -> Result<(Subspace, Subspace)> {
    if is_ppt(a)?.status != VerdictStatus::CertifiedYes {
        return Err(Error::NotPpt);
    }
    let d = range_basis(a, tol)?;
    let e = range_basis(&partial_transpose(a)?, tol)?;
    Ok((d, e))
}

/// Runs the PPT test, computes the type `(p, q)`, and searches for a
/// product vector `ξ⊗η ∈ R(A)` with `ξ̄⊗η ∈ R(A^τ)`.
pub fn is_edge(a: &CMat, cfg: &SearchConfig) -> Result<EdgeReport> {
    let ppt = is_ppt(a)?;
    let at = partial_transpose(a)?;
    let p = numerical_rank(a, DEFAULT_RANK_TOL);
    let q = numerical_rank(&at, DEFAULT_RANK_TOL);
    let d = range_basis(a, DEFAULT_RANK_TOL)?;
    let e = range_basis(&at, DEFAULT_RANK_TOL)?;
    let paired_search = best_product_in_pair(&d, &e, cfg)?;
    let residual = 2.0 - paired_search.value;

    let edge = if residual < cfg.tol {
        Verdict::certified_no(Certificate::ProductPair {
            product: paired_search.best.clone(),
            residual,
        })
    } else if ppt.status == VerdictStatus::CertifiedYes {
        Verdict::heuristic_yes(SearchStats::from_result(&paired_search))
    } else {
        // not PPT, hence not an edge state at all
        Verdict {
            status: VerdictStatus::CertifiedNo,
            certificate: ppt.certificate.clone(),
            stats: Some(SearchStats::from_result(&paired_search)),
        }
    };
    Ok(EdgeReport {
        ppt,
        p,
        q,
        paired_search,
        edge,
    })
}

fn gram2_rank(u: &CVec, v: &CVec) -> usize {
    let ip = |x: &CVec, y: &CVec| -> C64 { y.dotc(x) };
    let g = CMat::from_fn(2, 2, |r, c| match (r, c) {
        (0, 0) => ip(u, u),
        (0, 1) => ip(u, v),
        (1, 0) => ip(v, u),
        _ => ip(v, v),
    });
    numerical_rank(&g, DEFAULT_RANK_TOL)
}

/// Predicted type of an X-family state from the Gram ranks of its three
/// defining vectors: `p = 1 + Σ_cyclic rk G₂`, `q = 3 + rk G₃`.
pub fn x_type_prediction(xi: &CVec, eta: &CVec, zeta: &CVec) -> Result<(usize, usize)> {
    for v in [xi, eta, zeta] {
        if (v.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::NonUnitVector { norm: v.norm() });
        }
    }
    let p = 1 + gram2_rank(xi, eta) + gram2_rank(eta, zeta) + gram2_rank(zeta, xi);
    let ip = |x: &CVec, y: &CVec| -> C64 { y.dotc(x) };
    let vs = [xi, eta, zeta];
    let g3 = CMat::from_fn(3, 3, |r, c| ip(vs[r], vs[c]));
    let q = 3 + numerical_rank(&g3, DEFAULT_RANK_TOL);
    Ok((p, q))
}

/// Boundary test for the positive-map cone: a map sits on the boundary
/// exactly when some product vector pairs to zero against it.
///
/// Returns `HeuristicYes` with the achieving product vector when the
/// minimum pairing is numerically zero, `HeuristicNo` (interior) when it is
/// bounded away from zero, and `CertifiedNo` with a negative-pairing
/// certificate when the map fails positivity altogether.
pub fn boundary_p1(phi: &LinMap, cfg: &SearchConfig) -> Result<Verdict> {
    let (m, n) = (phi.input_dim(), phi.output_dim());
    let id = CMat::identity(m * n).with_dims(m, n)?;
    let scale = (pair(&id, phi)? / (m * n) as f64).abs().max(1e-12);
    let res = min_pairing_over_products(phi, cfg)?;
    if res.value < -cfg.tol * scale {
        let pairing = pair(&res.best.projector(), phi)?;
        return Ok(Verdict::certified_no(Certificate::NegativePairing {
            product: res.best,
            pairing,
        }));
    }
    if res.value <= cfg.tol * scale {
        let pairing = pair(&res.best.projector(), phi)?;
        let stats = SearchStats::from_result(&res);
        Ok(Verdict {
            status: VerdictStatus::HeuristicYes,
            certificate: Some(Certificate::BoundaryContact {
                product: res.best,
                pairing,
            }),
            stats: Some(stats),
        })
    } else {
        Ok(Verdict::heuristic_no(SearchStats::from_result(&res)))
    }
}

/// Zero set and spanning data of an entanglement witness.
#[derive(Clone, Debug)]
pub struct WitnessReport {
    /// Distinct product lines with (numerically) zero pairing.
    pub zero_set: Vec<ProductVector>,
    pub span_dim: usize,
    pub conj_span_dim: usize,
    /// The zero set spans all of `ℂ^m ⊗ ℂ^n`.
    pub spanning: bool,
    /// The partial conjugates of the zero set span all of `ℂ^m ⊗ ℂ^n`.
    pub co_spanning: bool,
}

/// Collects the zero set `{ξ⊗η : ⟨(ξ⊗η)(ξ⊗η)*, φ⟩ = 0}` of a
/// block-positive, non-CP map by deflation-biased multistarts and computes
/// the spans of the zero set and of its partial conjugates.
pub fn witness_analysis(phi: &LinMap, cfg: &SearchConfig) -> Result<WitnessReport> {
    if is_cp(phi)?.status == VerdictStatus::CertifiedYes {
        return Err(Error::CompletelyPositiveInput);
    }
    let (m, n) = (phi.input_dim(), phi.output_dim());
    let id = CMat::identity(m * n).with_dims(m, n)?;
    let scale = (pair(&id, phi)? / (m * n) as f64).abs().max(1e-12);
    let threshold = cfg.tol * scale;
    let lines = collect_zero_pairing_lines(phi, threshold, cfg)?;
    if let Some((_, worst)) = lines
        .iter()
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .filter(|(_, v)| *v < -10.0 * threshold)
    {
        return Err(Error::NotBlockPositive { pairing: *worst });
    }
    let tensors: Vec<CVec> = lines.iter().map(|(pv, _)| pv.tensor()).collect();
    let conjugates: Vec<CVec> = lines.iter().map(|(pv, _)| pv.partial_conjugate()).collect();
    let span_dim = span_dimension(&tensors, m * n, SPAN_RANK_TOL);
    let conj_span_dim = span_dimension(&conjugates, m * n, SPAN_RANK_TOL);
    Ok(WitnessReport {
        zero_set: lines.into_iter().map(|(pv, _)| pv).collect(),
        span_dim,
        conj_span_dim,
        spanning: span_dim == m * n,
        co_spanning: conj_span_dim == m * n,
    })
}

/// Necessary conditions for a purely co-CP map to be an optimal witness.
#[derive(Clone, Debug)]
pub struct OptimalityReport {
    /// The support `E = span{W}` of the co-CP Kraus list.
    pub support: Subspace,
    pub support_dim: usize,
    /// Condition: the support is completely entangled. Yes is heuristic,
    /// no is certified by the product vector found.
    pub support_entangled: Verdict,
    /// Condition: the orthogonal complement of the support contains a
    /// product vector. Yes is certified, no is heuristic.
    pub complement_has_product: Verdict,
    /// Whether the face generated by the support stays a face of the
    /// decomposable cone; not decidable by search, always inconclusive.
    pub face_condition: Verdict,
}

/// Checks the computable necessary conditions for optimality of a map
/// given as a purely co-CP Kraus list.
pub fn optimality_necessary(phi: &LinMap, cfg: &SearchConfig) -> Result<OptimalityReport> {
    let kraus = phi
        .kraus()
        .ok_or_else(|| Error::NotPurelyCoCp("no Kraus decomposition attached".into()))?;
    if !kraus.cp.is_empty() {
        return Err(Error::NotPurelyCoCp("CP Kraus list is nonempty".into()));
    }
    if kraus.ccp.is_empty() {
        return Err(Error::NotPurelyCoCp("co-CP Kraus list is empty".into()));
    }
    let (m, n) = (phi.input_dim(), phi.output_dim());
    let vectors: Vec<CVec> = kraus.ccp.iter().map(mat_vec).collect();
    let support = Subspace::from_spanning(m * n, &vectors, 1e-10).with_dims(m, n)?;

    let sup_search = best_product_in_subspace(&support, cfg)?;
    let support_entangled = if 1.0 - sup_search.value < cfg.tol {
        Verdict::certified_no(Certificate::ProductPair {
            product: sup_search.best.clone(),
            residual: 1.0 - sup_search.value,
        })
    } else {
        Verdict::heuristic_yes(SearchStats::from_result(&sup_search))
    };

    let comp = support.orthogonal_complement();
    let complement_has_product = if comp.dim() == 0 {
        Verdict::heuristic_no(SearchStats {
            restarts: 0,
            n_converged: 0,
            best_value: 0.0,
        })
    } else {
        let comp_search = best_product_in_subspace(&comp, cfg)?;
        if 1.0 - comp_search.value < cfg.tol {
            Verdict::certified_yes_with(Certificate::ProductPair {
                product: comp_search.best.clone(),
                residual: 1.0 - comp_search.value,
            })
        } else {
            Verdict::heuristic_no(SearchStats::from_result(&comp_search))
        }
    };

    Ok(OptimalityReport {
        support_dim: support.dim(),
        support,
        support_entangled,
        complement_has_product,
        face_condition: Verdict::inconclusive(None),
    })
}

/// The 2 ⊗ n rank-one curve fixture and its diagnostics.
#[derive(Clone, Debug)]
pub struct TwoByNFixture {
    /// Span of the rank-one curve; dimension `n + 1`.
    pub d: Subspace,
    /// Its orthogonal complement; dimension `n - 1`.
    pub d_perp: Subspace,
    /// Whether `D^⊥` equals the span of the pattern `e_{1,j+1} - e_{2,j}`.
    pub d_perp_matches_pattern: bool,
    /// Heuristic verdict that `D^⊥` is completely entangled.
    pub d_perp_entangled: Verdict,
    /// Span dimension of the partial conjugates of the generators;
    /// equals `2n` (the whole of `M_{2×n}`).
    pub conj_span_dim: usize,
}

/// Builds the span `D` of the rank-one matrices with rows
/// `(1, α, …, α^{n-1})` and `(α, α², …, α^n)` over a deterministic set of
/// non-real sample values of `α`, together with its diagnostics. The
/// conjugate family needs `2n` independent generators, so `2n + 2` samples
/// are used.
pub fn two_by_n_fixture(n: usize, cfg: &SearchConfig) -> Result<TwoByNFixture> {
    if n < 2 {
        return Err(Error::ParameterTooSmall {
            name: "n",
            min: 2,
            value: n,
        });
    }
    let n_samples = 2 * n + 2;
    let samples: Vec<C64> = (0..n_samples)
        .map(|j| {
            let r = 0.6 + 0.8 * (j as f64 + 1.0) / (n_samples as f64 + 1.0);
            let theta = 0.4 + 2.0 * std::f64::consts::PI * j as f64 / n_samples as f64;
            C64::new(r * theta.cos(), r * theta.sin())
        })
        .collect();

    let mut generators = Vec::with_capacity(n_samples);
    let mut conj_generators = Vec::with_capacity(n_samples);
    for alpha in &samples {
        let mut g = CVec::zeros(2 * n);
        let mut gc = CVec::zeros(2 * n);
        let mut pow = C64::new(1.0, 0.0);
        for k in 0..n {
            g[k] = pow;
            g[n + k] = pow * alpha;
            gc[k] = pow;
            gc[n + k] = pow * alpha.conj();
            pow *= alpha;
        }
        generators.push(g);
        conj_generators.push(gc);
    }

    let d = Subspace::from_spanning(2 * n, &generators, 1e-9).with_dims(2, n)?;
    let d_perp = d.orthogonal_complement();

    // pattern e_{1,j+1} - e_{2,j}: +1 at flat (0, j), -1 at flat (1, j-1)
    let mut pattern_ok = d_perp.dim() == n - 1;
    for j in 1..n {
        let mut v = CVec::zeros(2 * n);
        v[j] = C64::new(1.0, 0.0);
        v[n + j - 1] = C64::new(-1.0, 0.0);
        let nv = v.norm();
        let v = v / C64::new(nv, 0.0);
        if d_perp.residual(&v) > 1e-8 {
            pattern_ok = false;
        }
    }

    let search = best_product_in_subspace(&d_perp, cfg)?;
    let residual = 1.0 - search.value;
    let d_perp_entangled = if residual < cfg.tol {
        Verdict::certified_no(Certificate::ProductPair {
            product: search.best.clone(),
            residual,
        })
    } else if residual > ENTANGLED_RESIDUAL {
        Verdict::heuristic_yes(SearchStats::from_result(&search))
    } else {
        Verdict::inconclusive(Some(SearchStats::from_result(&search)))
    };

    let conj_span_dim = span_dimension(&conj_generators, 2 * n, SPAN_RANK_TOL);
    Ok(TwoByNFixture {
        d,
        d_perp,
        d_perp_matches_pattern: pattern_ok,
        d_perp_entangled,
        conj_span_dim,
    })
}

/// Upper bound `p + q ≤ 2mn - m - n + 2` satisfied by every edge type.
pub fn edge_type_upper_bound(m: usize, n: usize) -> usize {
    2 * m * n - m - n + 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::phi_family;
    use crate::maps::{choi_of_kraus, choi_ppt_state, stormer_state, trace_map, x_state};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn unit(v: &[f64]) -> CVec {
        let v = CVec::from_fn(v.len(), |i, _| c(v[i], 0.0));
        let n = v.norm();
        v / c(n, 0.0)
    }

    fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> CVec {
        let v = CVec::from_fn(n, |_, _| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5));
        let nv = v.norm();
        v / c(nv, 0.0)
    }

    #[test]
    fn intersection_pairs_of_named_states() {
        let (d, e) = intersection_pair(&choi_ppt_state(), DEFAULT_RANK_TOL).unwrap();
        assert_eq!((d.dim(), e.dim()), (4, 4));

        let (d, e) = intersection_pair(&stormer_state(1.0).unwrap(), DEFAULT_RANK_TOL).unwrap();
        assert_eq!((d.dim(), e.dim()), (7, 6));

        let pv = ProductVector::normalized(unit(&[1.0, 2.0, 0.0]), unit(&[0.0, 1.0, 1.0])).unwrap();
        let (d, e) = intersection_pair(&pv.projector(), DEFAULT_RANK_TOL).unwrap();
        assert_eq!((d.dim(), e.dim()), (1, 1));
        assert!(d.residual(&pv.tensor()) < 1e-9);
        assert!(e.residual(&pv.partial_conjugate()) < 1e-9);
    }

    #[test]
    fn intersection_pair_rejects_npt_states() {
        let mut ent = CMat::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                ent.set(i * 2 + i, j * 2 + j, c(1.0, 0.0));
            }
        }
        let ent = ent.with_dims(2, 2).unwrap();
        assert!(matches!(
            intersection_pair(&ent, DEFAULT_RANK_TOL),
            Err(Error::NotPpt)
        ));
    }

    #[test]
    fn choi_state_is_heuristic_edge_of_type_4_4() {
        let cfg = SearchConfig::default();
        let rep = is_edge(&choi_ppt_state(), &cfg).unwrap();
        assert_eq!(rep.ppt.status, VerdictStatus::CertifiedYes);
        assert_eq!((rep.p, rep.q), (4, 4));
        assert_eq!(rep.edge.status, VerdictStatus::HeuristicYes);
    }

    #[test]
    fn stormer_edge_by_parameter() {
        let cfg = SearchConfig::default();
        let rep = is_edge(&stormer_state(1.0).unwrap(), &cfg).unwrap();
        assert_eq!((rep.p, rep.q), (7, 6));
        assert_eq!(rep.edge.status, VerdictStatus::HeuristicYes);

        let rep = is_edge(&stormer_state(0.5).unwrap(), &cfg).unwrap();
        assert_eq!(rep.edge.status, VerdictStatus::CertifiedNo);
        match rep.edge.certificate.unwrap() {
            Certificate::ProductPair { product, residual } => {
                assert!(residual < 1e-8);
                // re-verify the containments
                let a = stormer_state(0.5).unwrap();
                let d = range_basis(&a, DEFAULT_RANK_TOL).unwrap();
                let e = range_basis(&partial_transpose(&a).unwrap(), DEFAULT_RANK_TOL).unwrap();
                assert!(d.residual(&product.tensor()) < 1e-6);
                assert!(e.residual(&product.partial_conjugate()) < 1e-6);
            }
            other => panic!("unexpected certificate {other:?}"),
        }
    }

    #[test]
    fn x_family_type_predictions_on_canonical_configs() {
        let e1 = unit(&[1.0, 0.0, 0.0]);
        let e2 = unit(&[0.0, 1.0, 0.0]);
        let e3 = unit(&[0.0, 0.0, 1.0]);
        let mix = unit(&[1.0, 1.0, 0.0]);
        assert_eq!(x_type_prediction(&e1, &e2, &e3).unwrap(), (7, 6));
        assert_eq!(x_type_prediction(&e1, &e2, &mix).unwrap(), (7, 5));
        assert_eq!(x_type_prediction(&e1, &e1, &e2).unwrap(), (6, 5));
        assert_eq!(x_type_prediction(&e1, &e1, &e1).unwrap(), (4, 4));
    }

    #[test]
    fn x_family_prediction_matches_numerical_ranks() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let lambda = 2.0f64.sqrt();
        for _ in 0..20 {
            let (xi, eta, zeta) = (
                random_unit(&mut rng, 3),
                random_unit(&mut rng, 3),
                random_unit(&mut rng, 3),
            );
            let (p, q) = x_type_prediction(&xi, &eta, &zeta).unwrap();
            let x = x_state(lambda, &xi, &eta, &zeta).unwrap().state;
            assert_eq!(p, numerical_rank(&x, DEFAULT_RANK_TOL));
            assert_eq!(
                q,
                numerical_rank(&partial_transpose(&x).unwrap(), DEFAULT_RANK_TOL)
            );
        }
    }

    #[test]
    fn x_family_edges_and_bounds() {
        let cfg = SearchConfig::default();
        let e1 = unit(&[1.0, 0.0, 0.0]);
        let e2 = unit(&[0.0, 1.0, 0.0]);
        let e3 = unit(&[0.0, 0.0, 1.0]);
        let x = x_state(2.0f64.sqrt(), &e1, &e2, &e3).unwrap().state;
        let rep = is_edge(&x, &cfg).unwrap();
        assert_eq!((rep.p, rep.q), (7, 6));
        assert_eq!(rep.edge.status, VerdictStatus::HeuristicYes);
        // type bounds: p, q > max(m, n) and p + q ≤ 2mn - m - n + 2
        assert!(rep.p > 3 && rep.q > 3);
        assert!(rep.p + rep.q <= edge_type_upper_bound(3, 3));
    }

    #[test]
    fn boundary_tests_for_positive_maps() {
        let cfg = SearchConfig::default();
        let v = boundary_p1(&phi_family(1.0, 0.0, 1.0).unwrap(), &cfg).unwrap();
        assert_eq!(v.status, VerdictStatus::HeuristicYes);
        match v.certificate.unwrap() {
            Certificate::BoundaryContact { pairing, .. } => assert!(pairing.abs() < 1e-7),
            other => panic!("unexpected certificate {other:?}"),
        }

        let v = boundary_p1(&trace_map(3, 3), &cfg).unwrap();
        assert_eq!(v.status, VerdictStatus::HeuristicNo);
        assert!((v.stats.unwrap().best_value - 1.0).abs() < 1e-9);

        let v = boundary_p1(&phi_family(1.0, 0.5, 0.5).unwrap(), &cfg).unwrap();
        assert_eq!(v.status, VerdictStatus::HeuristicYes);

        // a map that is not positive at all
        let v = boundary_p1(&phi_family(1.0, 0.0, 0.5).unwrap(), &cfg).unwrap();
        assert_eq!(v.status, VerdictStatus::CertifiedNo);
    }

    #[test]
    fn witness_analysis_of_the_choi_map() {
        let cfg = SearchConfig::default().with_restarts(256);
        let rep = witness_analysis(&phi_family(1.0, 0.0, 1.0).unwrap(), &cfg).unwrap();
        assert_eq!(rep.span_dim, 7);
        assert!(!rep.spanning);
        assert_eq!(rep.conj_span_dim, 9);
        assert!(rep.co_spanning);
        // every reported zero re-verifies
        let phi = phi_family(1.0, 0.0, 1.0).unwrap();
        for pv in &rep.zero_set {
            let p = pair(&pv.projector(), &phi).unwrap();
            assert!(p.abs() < 1e-7 * (2.0 / 3.0));
        }
    }

    #[test]
    fn witness_analysis_rejects_cp_maps() {
        let cfg = SearchConfig::default();
        assert!(matches!(
            witness_analysis(&phi_family(2.0, 0.0, 0.0).unwrap(), &cfg),
            Err(Error::CompletelyPositiveInput)
        ));
    }

    #[test]
    fn witness_analysis_of_an_exposed_family_point() {
        // a = 1/2 with b, c the roots of t² - (3/2)t + 1/4: satisfies
        // a+b+c = 2 and bc = (1-a)²
        let b = (3.0 + 5.0f64.sqrt()) / 4.0;
        let cc = (3.0 - 5.0f64.sqrt()) / 4.0;
        assert!((0.5 + b + cc - 2.0).abs() < 1e-12);
        assert!((b * cc - 0.25).abs() < 1e-12);
        let cfg = SearchConfig::default().with_restarts(256);
        let rep = witness_analysis(&phi_family(0.5, b, cc).unwrap(), &cfg).unwrap();
        assert!(rep.spanning, "span_dim = {}", rep.span_dim);
        assert!(rep.co_spanning, "conj_span_dim = {}", rep.conj_span_dim);
    }

    #[test]
    fn optimality_conditions_for_co_cp_maps() {
        let cfg = SearchConfig::default();
        // single Kraus matrix: the identity of M_3, completely entangled span
        let id3 = CMat::identity(3);
        let phi = choi_of_kraus(3, 3, &[], &[id3]).unwrap();
        let rep = optimality_necessary(&phi, &cfg).unwrap();
        assert_eq!(rep.support_dim, 1);
        assert_eq!(rep.support_entangled.status, VerdictStatus::HeuristicYes);
        assert_eq!(
            rep.complement_has_product.status,
            VerdictStatus::CertifiedYes
        );
        assert_eq!(rep.face_condition.status, VerdictStatus::Inconclusive);

        // antisymmetric Kraus in 2⊗2: no product vector in the span
        let w = CMat::from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]);
        let phi = choi_of_kraus(2, 2, &[], &[w]).unwrap();
        let rep = optimality_necessary(&phi, &cfg).unwrap();
        assert_eq!(rep.support_entangled.status, VerdictStatus::HeuristicYes);
    }

    #[test]
    fn optimality_conditions_for_non_optimal_interpolant() {
        // support of the interpolation between the PPT-symmetric map and
        // the single-Kraus witness: 4-dimensional, completely entangled,
        // with a product vector in the complement
        let cfg = SearchConfig::default().with_restarts(128);
        let (lambda, t) = (2.0f64.sqrt(), 0.5f64);
        let mu = 1.0 / lambda;
        let s = (1.0 - t).sqrt();
        let sym = |i: usize, j: usize| -> CMat {
            CMat::from_fn(3, 3, |r, cc| {
                if (r, cc) == (i, j) {
                    c(s * lambda, 0.0)
                } else if (r, cc) == (j, i) {
                    c(s * mu, 0.0)
                } else {
                    c(0.0, 0.0)
                }
            })
        };
        let ccp = vec![CMat::identity(3), sym(0, 1), sym(1, 2), sym(2, 0)];
        let phi = choi_of_kraus(3, 3, &[], &ccp).unwrap();
        let rep = optimality_necessary(&phi, &cfg).unwrap();
        assert_eq!(rep.support_dim, 4);
        assert_eq!(rep.support_entangled.status, VerdictStatus::HeuristicYes);
        assert_eq!(
            rep.complement_has_product.status,
            VerdictStatus::CertifiedYes
        );
    }

    #[test]
    fn optimality_preconditions() {
        let cfg = SearchConfig::default();
        // no Kraus attached
        let phi = phi_family(0.0, 1.0, 1.0).unwrap();
        assert!(optimality_necessary(&phi, &cfg).is_err());
        // mixed Kraus
        let v = CMat::identity(3);
        let phi = choi_of_kraus(3, 3, &[v.clone()], &[v]).unwrap();
        assert!(optimality_necessary(&phi, &cfg).is_err());
    }

    #[test]
    fn two_by_n_fixture_diagnostics() {
        let cfg = SearchConfig::default();
        for n in 2..=5 {
            let fx = two_by_n_fixture(n, &cfg).unwrap();
            assert_eq!(fx.d.dim(), n + 1, "dim D at n={n}");
            assert_eq!(fx.d_perp.dim(), n - 1);
            assert!(fx.d_perp_matches_pattern, "pattern at n={n}");
            assert_eq!(fx.conj_span_dim, 2 * n, "conjugate span at n={n}");
            if n >= 3 {
                assert_eq!(fx.d_perp_entangled.status, VerdictStatus::HeuristicYes);
                let stats = fx.d_perp_entangled.stats.unwrap();
                assert!(1.0 - stats.best_value > ENTANGLED_RESIDUAL);
            }
        }
        assert!(two_by_n_fixture(1, &cfg).is_err());
    }

    #[test]
    fn two_by_two_fixture_perp_is_antisymmetric_line() {
        let cfg = SearchConfig::default();
        let fx = two_by_n_fixture(2, &cfg).unwrap();
        assert_eq!(fx.d_perp.dim(), 1);
        let anti = {
            let mut v = CVec::zeros(4);
            v[1] = c(1.0 / 2.0f64.sqrt(), 0.0);
            v[2] = c(-1.0 / 2.0f64.sqrt(), 0.0);
            v
        };
        assert!(fx.d_perp.residual(&anti) < 1e-8);
        // the antisymmetric line peaks at 1/2: entangled heuristically
        assert_eq!(fx.d_perp_entangled.status, VerdictStatus::HeuristicYes);
    }
}
