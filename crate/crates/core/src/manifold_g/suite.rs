use rayon::prelude::*;

use super::lefschetz::{
    generic_form, lefschetz_ranks, rank_duality, weak_lefschetz_profile, Omega,
};
use super::link::{link_reduction, verify_link_isomorphism};
use super::mvector::mvector_consequences;
use super::quotient::{gorenstein_quotient, GorensteinQuotient};
use crate::complex::SimplicialComplex;
use crate::face_ring::{
    generic_reduction, schenzel_formula, ArtinianReduction, GenericReduction, RingError,
    SocleDecomposition,
};
use crate::homology::{classify, ClassificationReport, LocalCohomologyTable};
use crate::linalg::Field;
use crate::report::{ReportInputs, Verdict, VerificationReport};
use crate::util::{binomial, derive_seed};

/// Stream offset for the `ω` draws, kept apart from the l.s.o.p. draws.
const OMEGA_STREAM: u64 = 0x006f_6d65_6761;

/// Name, master seed and trial count of a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub complex: String,
    pub seed: u64,
    pub trials: usize,
}

/// Everything the verifiers share: the classification, a generic reduction and its socle.
#[derive(Debug)]
pub struct Analysis<F: Field> {
    pub field: F,
    pub complex: SimplicialComplex,
    pub provenance: Provenance,
    pub classification: ClassificationReport,
    pub generic: GenericReduction<F>,
    pub socle: SocleDecomposition<F>,
}

impl<F: Field> Analysis<F> {
    pub fn new(
        field: &F,
        k: &SimplicialComplex,
        provenance: Provenance,
    ) -> Result<Self, RingError> {
        let classification = classify(field, k);
        let generic = generic_reduction(field, k, provenance.seed, provenance.trials)?;
        let socle = generic.reduction.socle();
        Ok(Analysis {
            field: field.clone(),
            complex: k.clone(),
            provenance,
            classification,
            generic,
            socle,
        })
    }

    pub fn reduction(&self) -> &ArtinianReduction<F> {
        &self.generic.reduction
    }

    pub fn krull_dim(&self) -> usize {
        self.complex.krull_dim()
    }

    pub fn gorenstein(&self) -> GorensteinQuotient<'_, F> {
        gorenstein_quotient(self.reduction(), &self.socle)
    }

    pub fn inputs(&self) -> ReportInputs {
        ReportInputs::new(
            self.provenance.complex.clone(),
            self.field.spec(),
            Some(self.provenance.seed),
            Some(self.provenance.trials),
        )
    }

    /// `Pass` for connected orientable homology manifolds, `NotApplicable` otherwise.
    pub fn manifold_gate(&self) -> Verdict {
        if self.classification.is_orientable {
            Verdict::Pass
        } else {
            Verdict::NotApplicable
        }
    }

    pub fn buchsbaum_gate(&self) -> Verdict {
        if self.classification.is_buchsbaum {
            Verdict::Pass
        } else {
            Verdict::NotApplicable
        }
    }

    /// Seed for generic multipliers `ω`.
    pub fn omega_seed(&self) -> u64 {
        derive_seed(self.provenance.seed, OMEGA_STREAM)
    }

    fn note_trials(&self, report: &mut VerificationReport) {
        if !self.generic.consistent {
            report.note("l.s.o.p. trials disagree on the Hilbert function; the smallest was kept");
        }
        if self.field.spec().characteristic() != 0 {
            report.note("characteristic-p evidence");
        }
    }
}

/// Kernel dimensions of the variable maps against `C(d, i) β_{i-1}`.
pub fn verify_socle<F: Field>(a: &Analysis<F>) -> VerificationReport {
    let mut report = VerificationReport::new("socle-dimensions", a.inputs());
    report.check(
        "socle dims = C(d,i) * beta_(i-1)",
        &a.socle.predicted,
        &a.socle.dims,
    );
    report.note(format!("hilbert function {:?}", a.reduction().hilbert()));
    report.finalize(a.manifold_gate())
}

/// Direct dimensions of `k(Δ)` against the formula from `h` and the Betti numbers.
pub fn verify_schenzel<F: Field>(a: &Analysis<F>) -> VerificationReport {
    let mut report = VerificationReport::new("schenzel", a.inputs());
    let h = a.complex.h_vector().0;
    report.check(
        "dim k(Δ)_i",
        schenzel_formula(&h, &a.classification.betti),
        a.reduction().hilbert(),
    );
    a.note_trials(&mut report);
    report.finalize(a.buchsbaum_gate())
}

/// Socle dimensions against `Σ_j C(d,j) dim H^j(k[Δ])_{i-j}`, using the local cohomology table.
/// The remainder in degree `i` is `dim S_{i-d}`; it must be nonnegative, and for orientable
/// manifolds it is `1` in the top degree and `0` elsewhere. Also asserts that for Buchsbaum
/// complexes `H^j` with `j < d` sits in degree 0 with dimension `β_{j-1}`.
pub fn verify_socle_decomposition<F: Field>(
    a: &Analysis<F>,
    table: &LocalCohomologyTable,
) -> VerificationReport {
    let d = a.krull_dim();
    let betti = &a.classification.betti;
    let mut report = VerificationReport::new("socle-decomposition", a.inputs());
    let (lo, hi) = table.window;
    for j in 0..d {
        let expected: Vec<u128> = (lo..=hi)
            .map(|m| {
                if m == 0 && j > 0 {
                    betti.get(j as isize - 1) as u128
                } else {
                    0
                }
            })
            .collect();
        let observed: Vec<u128> = (lo..=hi).map(|m| table.dim(j, m)).collect();
        report.check(format!("H^{j} over degrees {lo}..{hi}"), expected, observed);
    }
    let local_part: Vec<i128> = (0..=d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    binomial(d as u64, j as u64) as i128 * table.dim(j, i as i64 - j as i64) as i128
                })
                .sum()
        })
        .collect();
    let residual: Vec<i128> = a
        .socle
        .dims
        .iter()
        .zip(&local_part)
        .map(|(&s, &l)| s as i128 - l)
        .collect();
    report.check("dim S_(i-d) >= 0", true, residual.iter().all(|&r| r >= 0));
    if a.classification.is_orientable {
        let expected: Vec<i128> = (0..=d).map(|i| i128::from(i == d)).collect();
        report.check("dim S_(i-d) = [i = d]", expected, &residual);
    }
    report.note(format!(
        "local cohomology part {local_part:?}, remainder {residual:?}"
    ));
    report.finalize(a.buchsbaum_gate())
}

/// Socle of `bar k(Δ)` must be `(0, ..., 0, 1)`.
pub fn verify_gorenstein<F: Field>(
    a: &Analysis<F>,
    bar: &GorensteinQuotient<'_, F>,
) -> VerificationReport {
    let d = a.krull_dim();
    let mut report = VerificationReport::new("gorenstein-quotient", a.inputs());
    let expected: Vec<usize> = (0..=d).map(|i| usize::from(i == d)).collect();
    report.check("socle of bar k(Δ)", expected, bar.socle_dims());
    if a.classification.is_homology_sphere {
        report.check("I = 0 on a sphere", vec![0; d + 1], bar.ideal_dims());
    }
    report.note(format!("h'' = {:?}", bar.hilbert()));
    report.finalize(a.manifold_gate())
}

pub fn verify_symmetry<F: Field>(
    a: &Analysis<F>,
    bar: &GorensteinQuotient<'_, F>,
) -> VerificationReport {
    let mut report = VerificationReport::new("hilbert-symmetry", a.inputs());
    let h2 = bar.hilbert();
    let reversed: Vec<usize> = h2.iter().rev().copied().collect();
    report.check("h'' reversed = h''", reversed, h2);
    report.finalize(a.manifold_gate())
}

/// `ω^(d-2i): bar_i -> bar_(d-i)` for generic `ω` and every `i <= d/2`, plus the rank duality
/// of single steps.
pub fn verify_lefschetz<F: Field>(
    a: &Analysis<F>,
    bar: &GorensteinQuotient<'_, F>,
) -> VerificationReport {
    let d = a.krull_dim();
    let (seed, trials) = (a.omega_seed(), a.provenance.trials);
    let mut report = VerificationReport::new("lefschetz", a.inputs());
    let ranks: Vec<_> = (0..=d / 2)
        .into_par_iter()
        .map(|i| lefschetz_ranks(bar, &Omega::Generic, i, seed, trials))
        .collect();
    for l in &ranks {
        report.check(
            format!(
                "i={}: rank of ω^{} bar_{} -> bar_{}",
                l.i,
                d - 2 * l.i,
                l.i,
                d - l.i
            ),
            (l.dim_source, l.dim_source),
            (l.rank, l.dim_target),
        );
        if !l.consistent {
            report.note(format!(
                "i={}: draws disagree, ranks {:?}",
                l.i, l.trial_ranks
            ));
        }
    }
    let w = generic_form(bar.field(), a.complex.num_vertices(), seed, 0);
    let profile = weak_lefschetz_profile(bar, &w);
    for (i, r, dual) in rank_duality(&profile, d) {
        if i <= (d - 1) / 2 {
            report.check(format!("rank of ω at {i} = rank at {}", d - 1 - i), dual, r);
        }
    }
    a.note_trials(&mut report);
    report.finalize(a.manifold_gate())
}

pub fn g_mvector_consequences<F: Field>(
    a: &Analysis<F>,
    bar: &GorensteinQuotient<'_, F>,
) -> VerificationReport {
    let h2: Vec<i64> = bar.hilbert().iter().map(|&x| x as i64).collect();
    mvector_consequences(&h2, &a.classification.betti, a.inputs())
}

/// The link isomorphism at every vertex, or only at `only`.
pub fn verify_link_isomorphisms<F: Field>(
    a: &Analysis<F>,
    only: Option<usize>,
) -> VerificationReport {
    let r = a.reduction();
    let vertices: Vec<usize> = match only {
        Some(v) => vec![v],
        None => (0..a.complex.num_vertices()).collect(),
    };
    let parts: Vec<VerificationReport> = vertices
        .par_iter()
        .map(|&v| match link_reduction(r, v, None) {
            Ok(l) => verify_link_isomorphism(r, &l, Verdict::Pass, a.inputs()),
            Err(e) => {
                let mut rep = VerificationReport::new("link-isomorphism", a.inputs());
                rep.check(
                    format!("v={}: link reduction", a.complex.label(v)),
                    "ok",
                    e.to_string(),
                );
                rep
            }
        })
        .collect();
    let mut report = VerificationReport::new("link-isomorphism", a.inputs());
    for p in parts {
        report.absorb("", p);
    }
    report.finalize(a.manifold_gate())
}
