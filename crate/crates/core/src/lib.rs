//! Face rings of simplicial complexes over exact fields.
//!
//! The crate builds the Stanley–Reisner ring of a complex degree by degree, reduces it by a
//! generic linear system of parameters, and computes graded socles, Gorenstein quotients,
//! Lefschetz ranks and link isomorphisms with exact linear algebra over `Q` or `F_p`.

pub mod complex;
pub mod corpus;
pub mod face_ring;
pub mod homology;
pub mod linalg;
pub mod manifold_g;
pub mod report;
pub mod util;

pub use complex::{parse_complex, FVector, Face, HVector, SimplicialComplex};
pub use linalg::{Field, FieldSpec};
pub use report::{Verdict, VerificationReport};
