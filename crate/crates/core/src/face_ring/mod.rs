//! The face ring `k[Δ]`, linear systems of parameters, the Artinian reduction `k(Δ)` and its
//! graded socle.

mod lsop;
mod monomial;
mod reduction;
mod socle;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::homology::Witness;
use crate::linalg::Field;
use crate::util::derive_seed;

pub use lsop::{
    attempt_budget, certify_lsop, normalize_lsop, passes_facet_minors, sample_lsop, verify_lsop,
    Lsop,
};
pub use monomial::{LinearForm, Monomial, MonomialBasis};
pub use reduction::ArtinianReduction;
pub(crate) use socle::common_kernel;
pub use socle::{
    predicted_socle_dims, schenzel_formula, schenzel_hilbert, SocleDecomposition, SocleSummary,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RingError {
    #[error("could not certify l.s.o.p. from master seed {master_seed} after {} attempts (first seeds tried: {:?})", seeds.len(), &seeds[..seeds.len().min(8)])]
    LsopNotCertified { master_seed: u64, seeds: Vec<u64> },
    #[error("no l.s.o.p. exists over {field}: every normalized Θ fails")]
    NoLsop { field: String },
    #[error("Θ is not an l.s.o.p.: dim k(Δ)_(d+1) = {top_dim}")]
    NotAnLsop { top_dim: usize },
    #[error("expected {expected} entries, got {got}")]
    WrongLsopLength { expected: usize, got: usize },
    #[error("{0:?} is not a facet of maximal size")]
    NotAFacet(Vec<String>),
    #[error("Θ restricted to facet {0:?} is singular")]
    SingularFacetMinor(Vec<String>),
    #[error("complex is not Buchsbaum over this field (witness: {0:?})")]
    NotBuchsbaum(Option<Witness>),
    #[error("complex has no faces")]
    VoidComplex,
}

/// One independent l.s.o.p. draw.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub lsop_seed: u64,
    pub hilbert: Vec<usize>,
}

/// The retained reduction of several trials plus the record of all of them.
#[derive(Debug)]
pub struct GenericReduction<F: Field> {
    pub reduction: ArtinianReduction<F>,
    pub master_seed: u64,
    pub trials: Vec<TrialRecord>,
    pub chosen: usize,
    /// Every trial produced the same Hilbert function.
    pub consistent: bool,
}

/// Seed of trial `t` under `master`.
pub fn trial_seed(master: u64, t: usize) -> u64 {
    derive_seed(master, t as u64)
}

/// Runs `trials` independent certified draws and keeps the one of smallest total dimension
/// (largest image of `Θ`), the earliest on ties.
pub fn generic_reduction<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    master_seed: u64,
    trials: usize,
) -> Result<GenericReduction<F>, RingError> {
    if k.is_void() {
        return Err(RingError::VoidComplex);
    }
    let trials = trials.max(1);
    let runs: Vec<(u64, ArtinianReduction<F>)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let seed = trial_seed(master_seed, t);
            let lsop = certify_lsop(field, k, seed)?;
            Ok((seed, ArtinianReduction::new(field, k, lsop)?))
        })
        .collect::<Result<_, RingError>>()?;
    let records: Vec<TrialRecord> = runs
        .iter()
        .enumerate()
        .map(|(t, (seed, r))| TrialRecord {
            trial: t,
            seed: *seed,
            lsop_seed: r.lsop().seed.expect("sampled"),
            hilbert: r.hilbert(),
        })
        .collect();
    let total = |h: &[usize]| h.iter().sum::<usize>();
    let chosen = (0..records.len())
        .min_by_key(|&t| (total(&records[t].hilbert), t))
        .expect("at least one trial");
    let consistent = records.iter().all(|r| r.hilbert == records[0].hilbert);
    let reduction = runs
        .into_iter()
        .nth(chosen)
        .expect("chosen index in range")
        .1;
    Ok(GenericReduction {
        reduction,
        master_seed,
        trials: records,
        chosen,
        consistent,
    })
}
