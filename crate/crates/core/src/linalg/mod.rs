//! Exact linear algebra over `Q` and `F_p`: echelon forms, ranks, kernels, images and quotient
//! spaces with explicit coset bases. No floating point is used anywhere.

mod echelon;
pub mod field;
pub mod matrix;
pub mod subspace;

use thiserror::Error;

pub use echelon::SparseRow;
pub use field::{
    generic_vector, is_prime, random_linear_combo, random_vector, Field, FieldSpec, PrimeField,
    Rationals, DEFAULT_PRIME, RATIONAL_SAMPLE_BOUND,
};
pub use matrix::{ExactMatrix, Rref};
pub use subspace::{quotient_coset_basis, QuotientSpace, SubspaceBasis};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("unrecognized field `{0}` (expected Q, Fp, Fp:<p> or F<p>)")]
    BadFieldSpec(String),
    #[error("uniform sampling is not available over {0}; use bounded integer draws")]
    NoUniformSampling(FieldSpec),
}

/// Runs `$body` with `$f` bound to the concrete field named by a [`FieldSpec`].
///
/// ```
/// use facering::linalg::{Field, FieldSpec};
/// let spec: FieldSpec = "F7".parse().unwrap();
/// let one_plus_six = facering::with_field!(spec, |f| f.is_zero(&f.add(&f.one(), &f.from_i64(6))));
/// assert!(one_plus_six);
/// ```
#[macro_export]
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            $crate::linalg::FieldSpec::Rationals => {
                let $f = $crate::linalg::Rationals;
                $body
            }
            $crate::linalg::FieldSpec::PrimeField(p) => {
                let $f = $crate::linalg::PrimeField::new(p).expect("field spec was validated");
                $body
            }
        }
    };
}
