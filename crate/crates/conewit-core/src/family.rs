//! The generalized Choi map family `Φ[a,b,c]` on `M_3` and its exact
//! classification.
//!
//! For nonnegative `a, b, c` the map acts by
//!
//! ```text
//! Φ[a,b,c](X) = diag(a·x11 + b·x22 + c·x33,
//!                    c·x11 + a·x22 + b·x33,
//!                    b·x11 + c·x22 + a·x33)  -  (X - diag X)
//! ```
//!
//! and its Choi matrix `A[a,b,c]` has diagonal `(a,c,b,b,a,c,c,b,a)` with
//! `-1` at the six corner couplings. Membership in each positivity cone is
//! decided by closed-form algebraic inequalities, evaluated exactly on the
//! inputs (no epsilon): `a = 2` classifies completely positive, not
//! "approximately" so.

use crate::error::{Error, Result};
use crate::maps::LinMap;
use crate::matcore::{CMat, C64};

/// Exact cone memberships of `Φ[a,b,c]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyClassification {
    pub positive: bool,
    pub two_positive: bool,
    pub completely_positive: bool,
    pub completely_copositive: bool,
    pub decomposable: bool,
    /// PPT-ness of the Choi matrix itself; equivalent to CP ∧ co-CP.
    pub choi_matrix_ppt: bool,
}

fn check_params(a: f64, b: f64, c: f64) -> Result<()> {
    for (name, v) in [("a", a), ("b", b), ("c", c)] {
        if !(v >= 0.0) {
            return Err(Error::NegativeParameter { name, value: v });
        }
    }
    Ok(())
}

/// The Choi matrix `A[a,b,c]` tagged as a 3 ⊗ 3 matrix.
pub fn family_choi(a: f64, b: f64, c: f64) -> Result<CMat> {
    check_params(a, b, c)?;
    let diag = [a, c, b, b, a, c, c, b, a];
    let mut m = CMat::zeros(9, 9);
    for (i, d) in diag.iter().enumerate() {
        m.set(i, i, C64::new(*d, 0.0));
    }
    for &(i, j) in &[(0, 4), (0, 8), (4, 8)] {
        m.set(i, j, C64::new(-1.0, 0.0));
        m.set(j, i, C64::new(-1.0, 0.0));
    }
    m.with_dims(3, 3)
}

/// The map `Φ[a,b,c]` as a [`LinMap`].
pub fn phi_family(a: f64, b: f64, c: f64) -> Result<LinMap> {
    LinMap::from_choi(family_choi(a, b, c)?)
}

/// Classifies `Φ[a,b,c]` by the closed-form predicates:
///
/// - positive       ⟺ `a+b+c ≥ 2` and (`a ≤ 1` ⟹ `bc ≥ (1-a)²`)
/// - 2-positive     ⟺ positive and (`a ≥ 2` or (`1 ≤ a < 2` and `bc ≥ (2-a)(b+c)`))
/// - CP             ⟺ `a ≥ 2`
/// - co-CP          ⟺ `bc ≥ 1` (2-copositive and completely copositive agree here)
/// - decomposable   ⟺ `a ≤ 2` ⟹ `bc ≥ ((2-a)/2)²`
///
/// The positivity conjunct on the 2-positive predicate only matters on the
/// degenerate ray `b = c = 0`, `1 ≤ a < 2`, where the bare inequality reads
/// `0 ≥ 0` although the map fails positivity already.
pub fn classify(a: f64, b: f64, c: f64) -> Result<FamilyClassification> {
    check_params(a, b, c)?;
    let positive = a + b + c >= 2.0 && (a > 1.0 || b * c >= (1.0 - a) * (1.0 - a));
    let two_positive =
        positive && (a >= 2.0 || (1.0 <= a && a < 2.0 && b * c >= (2.0 - a) * (b + c)));
    let completely_positive = a >= 2.0;
    let completely_copositive = b * c >= 1.0;
    let decomposable = a > 2.0 || b * c >= (2.0 - a) * (2.0 - a) / 4.0;
    Ok(FamilyClassification {
        positive,
        two_positive,
        completely_positive,
        completely_copositive,
        decomposable,
        choi_matrix_ppt: completely_positive && completely_copositive,
    })
}
