//! Constructions on top of `k(Δ)`: the Gorenstein quotient `bar k(Δ)` and its truncations,
//! Lefschetz rank probes, Macaulay's M-vector test, the link isomorphism and the verifiers that
//! turn them into [`VerificationReport`]s.

mod connection;
mod lefschetz;
mod link;
mod mvector;
mod quotient;
mod special;
mod suite;

use thiserror::Error;

use crate::complex::ComplexError;
use crate::face_ring::RingError;

pub use connection::verify_connection;
pub use lefschetz::{
    best_profile, forms_for, generic_form, has_g_profile, lefschetz_ranks, rank_duality,
    weak_lefschetz_profile, LefschetzRank, Omega, StepRank,
};
pub use link::{link_reduction, principal_ideal_dims, verify_link_isomorphism, LinkReduction};
pub use mvector::{
    check_mvector, is_mvector, macaulay_representation, mvector_consequences, pseudo_power,
    MvectorFailure,
};
pub use quotient::{
    gorenstein_quotient, truncated_quotient, GorensteinQuotient, TruncatedQuotient,
};
pub use special::{qualifying_faces, verify_gthm_special_case};
pub use suite::{
    g_mvector_consequences, verify_gorenstein, verify_lefschetz, verify_link_isomorphisms,
    verify_schenzel, verify_socle, verify_socle_decomposition, verify_symmetry, Analysis,
    Provenance,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ManifoldError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("no vertex {0}")]
    NoSuchVertex(String),
    #[error("{0:?} is not a maximal facet containing the vertex")]
    BadFacet(Vec<String>),
    #[error("Θ' is not an l.s.o.p. for the link of {vertex}: {source}")]
    LinkLsop { vertex: String, source: RingError },
    #[error("needs d >= 3, got d = {0}")]
    DimensionTooSmall(usize),
}
