//! Computing with the convex cones attached to positive linear maps between
//! matrix algebras and with their dual state cones.
//!
//! The crate works at desk scale (bipartite dimensions up to 9 ⊗ 9) and
//! provides:
//!
//! - dense complex matrix primitives with bipartite structure ([`matcore`]);
//! - linear maps as Choi matrices, the duality pairing
//!   `⟨A, φ⟩ = Tr(A C_φᵗ)`, and the classical example states ([`maps`]);
//! - the generalized Choi map family `Φ[a,b,c]` on `M_3` with its exact
//!   classification ([`family`]);
//! - bilinear multistart optimization over product vectors ([`prodsearch`]);
//! - cone-membership verdicts with honest certificates ([`cones`]);
//! - edge-state detection and entanglement-witness analysis ([`edgefaces`]);
//! - exact integer combinatorics bounding admissible edge types ([`kraw`]).
//!
//! Verdicts distinguish certified answers (carrying an independently
//! checkable certificate) from heuristic ones (carrying search statistics):
//! the underlying membership problems are NP-hard in general, so a finite
//! search only ever certifies one side.

pub mod cones;
pub mod edgefaces;
pub mod error;
pub mod family;
pub mod kraw;
pub mod maps;
pub mod matcore;
pub mod prodsearch;

pub use cones::{Certificate, SearchStats, SeparabilityReport, Verdict, VerdictStatus};
pub use edgefaces::{EdgeReport, OptimalityReport, TwoByNFixture, WitnessReport};
pub use error::{Error, Result};
pub use family::FamilyClassification;
pub use kraw::{ExclusionReason, TypeCatalog};
pub use maps::{LinMap, ProductVector, XState};
pub use matcore::{CMat, CVec, SpectralDecomp, Subspace, C64};
pub use prodsearch::{EnumerationResult, SearchConfig, SearchResult};
