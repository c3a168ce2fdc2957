use serde::Serialize;

use super::quotient::TruncatedQuotient;
use crate::face_ring::LinearForm;
use crate::linalg::{generic_vector, Field};
use crate::util::{derive_seed, rng_for};

/// A concrete linear form, or a request to draw generic ones.
#[derive(Clone, Debug)]
pub enum Omega<F: Field> {
    Form(LinearForm<F>),
    Generic,
}

/// Generic form number `trial` under `seed`.
pub fn generic_form<F: Field>(field: &F, n: usize, seed: u64, trial: usize) -> LinearForm<F> {
    LinearForm::new(generic_vector(
        field,
        n,
        &mut rng_for(derive_seed(seed, trial as u64)),
    ))
}

/// The forms an [`Omega`] stands for: one, or one per trial.
pub fn forms_for<F: Field>(
    field: &F,
    n: usize,
    omega: &Omega<F>,
    seed: u64,
    trials: usize,
) -> Vec<LinearForm<F>> {
    match omega {
        Omega::Form(f) => vec![f.clone()],
        Omega::Generic => (0..trials.max(1))
            .map(|t| generic_form(field, n, seed, t))
            .collect(),
    }
}

/// Rank of `ω^(d-2i)` from piece `i` to piece `d - i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LefschetzRank {
    pub i: usize,
    pub rank: usize,
    pub dim_source: usize,
    pub dim_target: usize,
    /// Ranks of the individual draws, when generic.
    pub trial_ranks: Vec<usize>,
    /// All draws gave the same rank.
    pub consistent: bool,
}

impl LefschetzRank {
    pub fn is_iso(&self) -> bool {
        self.rank == self.dim_source && self.rank == self.dim_target
    }
}

/// `ω^(d-2i): bar_i -> bar_(d-i)` for `i <= d/2`, the best rank over the draws.
pub fn lefschetz_ranks<F: Field>(
    q: &TruncatedQuotient<'_, F>,
    omega: &Omega<F>,
    i: usize,
    seed: u64,
    trials: usize,
) -> LefschetzRank {
    let d = q.krull_dim();
    assert!(2 * i <= d, "degree {i} is above the middle of {d}");
    let forms = forms_for(q.field(), q.parent().num_vars(), omega, seed, trials);
    let trial_ranks: Vec<usize> = forms
        .iter()
        .map(|w| q.power_map(w, i, d - i).rank())
        .collect();
    LefschetzRank {
        i,
        rank: *trial_ranks.iter().max().expect("at least one form"),
        dim_source: q.dim(i),
        dim_target: q.dim(d - i),
        consistent: trial_ranks.windows(2).all(|w| w[0] == w[1]),
        trial_ranks,
    }
}

/// `·ω: piece i -> piece i+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRank {
    pub i: usize,
    pub rank: usize,
    pub dim_source: usize,
    pub dim_target: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl StepRank {
    fn new(i: usize, rank: usize, dim_source: usize, dim_target: usize) -> Self {
        StepRank {
            i,
            rank,
            dim_source,
            dim_target,
            injective: rank == dim_source,
            surjective: rank == dim_target,
        }
    }
}

/// Injectivity and surjectivity of `·ω` between consecutive pieces, `i = 0..d-1`.
pub fn weak_lefschetz_profile<F: Field>(
    q: &TruncatedQuotient<'_, F>,
    form: &LinearForm<F>,
) -> Vec<StepRank> {
    (0..q.krull_dim())
        .map(|i| {
            StepRank::new(
                i,
                q.multiplication_map(form, i).rank(),
                q.dim(i),
                q.dim(i + 1),
            )
        })
        .collect()
}

/// Per-step maximum of the ranks over several profiles of the same quotient.
pub fn best_profile(profiles: &[Vec<StepRank>]) -> Vec<StepRank> {
    let first = &profiles[0];
    first
        .iter()
        .map(|s| {
            let rank = profiles
                .iter()
                .map(|p| p[s.i].rank)
                .max()
                .expect("nonempty");
            StepRank::new(s.i, rank, s.dim_source, s.dim_target)
        })
        .collect()
}

/// The shape predicted by the g-conjecture: injective below `floor(d/2)`, surjective from
/// `ceil(d/2)` on.
pub fn has_g_profile(profile: &[StepRank], d: usize) -> bool {
    profile
        .iter()
        .all(|s| (s.i >= d / 2 || s.injective) && (s.i < d.div_ceil(2) || s.surjective))
}

/// `rank(·ω at i)` against `rank(·ω at d-1-i)`; equal on a Gorenstein quotient, whose
/// pairing into the top degree makes the two maps transposes of each other.
pub fn rank_duality(profile: &[StepRank], d: usize) -> Vec<(usize, usize, usize)> {
    (0..d)
        .map(|i| (i, profile[i].rank, profile[d - 1 - i].rank))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::face_ring::{certify_lsop, ArtinianReduction};
    use crate::linalg::Rationals;
    use crate::manifold_g::quotient::gorenstein_quotient;

    fn with_bar<R>(name: &str, body: impl FnOnce(&TruncatedQuotient<'_, Rationals>) -> R) -> R {
        let k = corpus::load(name).unwrap();
        let r = ArtinianReduction::new(&Rationals, &k, certify_lsop(&Rationals, &k, 12).unwrap())
            .unwrap();
        let s = r.socle();
        let bar = gorenstein_quotient(&r, &s);
        body(&bar)
    }

    #[test]
    fn torus_ranks() {
        with_bar("torus7", |bar| {
            let l = lefschetz_ranks(bar, &Omega::Generic, 1, 5, 3);
            assert_eq!((l.rank, l.dim_source, l.dim_target), (4, 4, 4));
            assert!(l.is_iso() && l.consistent);
            let w = generic_form(&Rationals, 7, 5, 0);
            let p = weak_lefschetz_profile(bar, &w);
            let flags: Vec<(bool, bool)> = p.iter().map(|s| (s.injective, s.surjective)).collect();
            assert_eq!(flags, vec![(true, false), (true, true), (false, true)]);
            assert!(has_g_profile(&p, 3));
            assert!(rank_duality(&p, 3).iter().all(|&(_, a, b)| a == b));
        });
    }

    #[test]
    fn sphere_ranks() {
        with_bar("simplex_boundary_4", |bar| {
            let l = lefschetz_ranks(bar, &Omega::Generic, 1, 1, 2);
            assert_eq!((l.rank, l.dim_source, l.dim_target), (1, 1, 1));
            let mid = lefschetz_ranks(bar, &Omega::Generic, 2, 1, 1);
            assert!(mid.is_iso());
        });
        with_bar("simplex_boundary_3", |bar| {
            let p = weak_lefschetz_profile(bar, &generic_form(&Rationals, 4, 0, 0));
            assert!(p.iter().all(|s| s.injective && s.surjective));
        });
    }

    #[test]
    fn zero_form() {
        with_bar("torus7", |bar| {
            let p = weak_lefschetz_profile(bar, &LinearForm::zero(&Rationals, 7));
            assert!(p
                .iter()
                .all(|s| s.rank == 0 && s.injective == (s.dim_source == 0)));
            assert!(!has_g_profile(&p, 3));
            let l = lefschetz_ranks(bar, &Omega::Form(LinearForm::zero(&Rationals, 7)), 1, 0, 3);
            assert_eq!(l.trial_ranks, vec![0]);
        });
    }
}
