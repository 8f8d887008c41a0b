//! Exact integer combinatorics bounding the admissible types `(p, q)` of
//! edge states in `m ⊗ n`.
//!
//! The exclusion engine rests on a polynomial nonvanishing condition: if
//! `(-α+β)^k (α+β)^ℓ` is nonzero modulo the ideal `(α^m, β^n)`, then every
//! subspace pair of codimensions `(k, ℓ)` admits a product vector with the
//! paired-conjugate containment, so no edge of type `(mn-k, mn-ℓ)` exists.
//! On the critical line `k + ℓ = m + n - 2` the only surviving monomial is
//! `α^{m-1} β^{n-1}`, whose coefficient is the signed binomial sum
//! `Σ_{r+s=m-1} (-1)^r C(k,r) C(ℓ,s)` — a Krawtchouk polynomial value.
//! All arithmetic is exact big-integer; binomials here overflow 64 bits
//! well inside the supported range.
//!
//! A catalog says "not excluded by these necessary conditions", never
//! "an edge of this type exists".

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact binomial coefficient, zero for `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Coefficients of `(-α+β)^k (α+β)^ℓ` by degree in `α`:
/// `coeff[a] = Σ_{r+s=a} (-1)^r C(k,r) C(ℓ,s)`; the degree in `β` is
/// `k + ℓ - a`.
fn signed_product_coefficients(k: usize, l: usize) -> Vec<BigInt> {
    let total = k + l;
    let mut coeffs = vec![BigInt::zero(); total + 1];
    for (a, coeff) in coeffs.iter_mut().enumerate() {
        for r in 0..=a.min(k) {
            let s = a - r;
            if s > l {
                continue;
            }
            let term = binomial(k as u64, r as u64) * binomial(l as u64, s as u64);
            if r % 2 == 0 {
                *coeff += term;
            } else {
                *coeff -= term;
            }
        }
    }
    coeffs
}

/// Whether `(-α+β)^k (α+β)^ℓ ≠ 0` modulo the ideal `(α^m, β^n)`: true iff
/// some monomial `α^a β^b` with `a < m` and `b < n` survives with nonzero
/// coefficient. True excludes edge type `(mn-k, mn-ℓ)`.
pub fn poly_condition(k: usize, l: usize, m: usize, n: usize) -> bool {
    let coeffs = signed_product_coefficients(k, l);
    let total = k + l;
    for (a, coeff) in coeffs.iter().enumerate() {
        let b = total - a;
        if a < m && b < n && !coeff.is_zero() {
            return true;
        }
    }
    false
}

/// The signed binomial sum `Σ_{r+s=m-1} (-1)^r C(k,r) C(ℓ,s)`, i.e. the
/// coefficient of `α^{m-1}` in the expansion; an independent route to the
/// critical-line decision of [`poly_condition`].
pub fn kraw_coeff(k: usize, l: usize, m: usize) -> BigInt {
    if m == 0 {
        return BigInt::zero();
    }
    let a = m - 1;
    let mut acc = BigInt::zero();
    for r in 0..=a.min(k) {
        let s = a - r;
        if s > l {
            continue;
        }
        let term = binomial(k as u64, r as u64) * binomial(l as u64, s as u64);
        if r % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Why a type `(p, q)` was excluded from a catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExclusionReason {
    /// `p ≤ max(m, n)` or `q ≤ max(m, n)`: such PPT states are separable.
    LowerBound,
    /// `p + q > 2mn - m - n + 2`: the polynomial condition holds throughout
    /// this region.
    UpperBoundOrPoly,
    /// On the line `p + q = 2mn - m - n + 2` the Krawtchouk coefficient is
    /// nonzero.
    KrawtchoukCoeff,
    /// In 3 ⊗ 3, rank-4 PPT entanglement is always of type `(4, 4)`.
    Rank4Rule,
}

/// Catalog of edge types not excluded by the necessary conditions.
#[derive(Clone, Debug)]
pub struct TypeCatalog {
    pub m: usize,
    pub n: usize,
    pub admissible: BTreeSet<(usize, usize)>,
    pub exclusions: Vec<((usize, usize), ExclusionReason)>,
}

impl TypeCatalog {
    /// Admissible pairs with `p ≤ q` only.
    pub fn admissible_up_to_symmetry(&self) -> BTreeSet<(usize, usize)> {
        self.admissible
            .iter()
            .map(|&(p, q)| if p <= q { (p, q) } else { (q, p) })
            .collect()
    }
}

/// Filters the rectangle `1 ≤ p, q ≤ mn` by the necessary conditions for
/// the existence of an edge of type `(p, q)`: the separability lower bound,
/// the region where the polynomial condition always holds (equivalently the
/// upper bound `p + q ≤ 2mn - m - n + 2`), the Krawtchouk test on the
/// critical line, and (optionally, 3 ⊗ 3 only) the rank-4 rule.
pub fn admissible_edge_types(m: usize, n: usize, apply_rank4_rule: bool) -> Result<TypeCatalog> {
    if m < 2 || n < 2 {
        return Err(Error::ParameterTooSmall {
            name: if m < 2 { "m" } else { "n" },
            min: 2,
            value: m.min(n),
        });
    }
    let mn = m * n;
    let upper = 2 * mn - m - n + 2;
    let lower = m.max(n);
    let mut admissible = BTreeSet::new();
    let mut exclusions = Vec::new();
    for p in 1..=mn {
        for q in 1..=mn {
            if p <= lower || q <= lower {
                exclusions.push(((p, q), ExclusionReason::LowerBound));
                continue;
            }
            if p + q > upper {
                exclusions.push(((p, q), ExclusionReason::UpperBoundOrPoly));
                continue;
            }
            if p + q == upper {
                let (k, l) = (mn - p, mn - q);
                if !kraw_coeff(k, l, m).is_zero() {
                    exclusions.push(((p, q), ExclusionReason::KrawtchoukCoeff));
                    continue;
                }
            }
            if apply_rank4_rule && (m, n) == (3, 3) && ((p == 4 && q > 4) || (q == 4 && p > 4)) {
                exclusions.push(((p, q), ExclusionReason::Rank4Rule));
                continue;
            }
            admissible.insert((p, q));
        }
    }
    Ok(TypeCatalog {
        m,
        n,
        admissible,
        exclusions,
    })
}
