use rayon::prelude::*;

use super::lefschetz::{lefschetz_ranks, Omega};
use super::suite::Analysis;
use super::ManifoldError;
use crate::complex::{Face, SimplicialComplex};
use crate::face_ring::LinearForm;
use crate::linalg::{ExactMatrix, Field};
use crate::report::{Verdict, VerificationReport};

/// Faces of size `d - 2` whose star contains every vertex.
pub fn qualifying_faces(k: &SimplicialComplex) -> Vec<Face> {
    let d = k.krull_dim();
    if d < 2 {
        return Vec::new();
    }
    k.faces_of_size(d - 2)
        .iter()
        .filter(|tau| {
            let mut seen = vec![false; k.num_vertices()];
            for f in k.facets().iter().filter(|f| tau.is_subset(f)) {
                for &v in f.vertices() {
                    seen[v] = true;
                }
            }
            seen.iter().all(|&s| s)
        })
        .cloned()
        .collect()
}

/// For each qualifying `τ` and `v ∈ τ`: `x_v^(d-2)` is injective from `k(Δ)_1` to
/// `bar_(d-1)` and an isomorphism `bar_1 -> bar_(d-1)`; then the same for a generic `ω`.
pub fn verify_gthm_special_case<F: Field>(
    a: &Analysis<F>,
) -> Result<VerificationReport, ManifoldError> {
    let d = a.krull_dim();
    if d < 3 {
        return Err(ManifoldError::DimensionTooSmall(d));
    }
    let k = &a.complex;
    let r = a.reduction();
    let bar = a.gorenstein();
    let n = k.num_vertices();
    let mut report = VerificationReport::new("g-special-case", a.inputs());
    let faces = qualifying_faces(k);
    report.note(format!(
        "{} qualifying face(s) of dimension {}",
        faces.len(),
        d as isize - 3
    ));

    let pairs: Vec<(&Face, usize)> = faces
        .iter()
        .flat_map(|t| t.vertices().iter().map(move |&v| (t, v)))
        .collect();
    type Ranks = (String, (usize, usize), (usize, usize));
    let results: Vec<Ranks> = pairs
        .par_iter()
        .map(|&(tau, v)| {
            let mut power = ExactMatrix::identity(r.field(), r.dim(1));
            for t in 1..d - 1 {
                power = r.variable_map(v, t).mul(&power);
            }
            let into_bar = bar.projection_matrix(d - 1).mul(&power).rank();
            let on_bar = bar
                .power_map(&LinearForm::variable(r.field(), n, v), 1, d - 1)
                .rank();
            let name = format!("τ={{{}}} v={}", k.face_labels(tau).join(","), k.label(v));
            (name, (into_bar, r.dim(1)), (on_bar, bar.dim(d - 1)))
        })
        .collect();
    for (name, (into_bar, dim1), (on_bar, dim_top)) in results {
        report.check(
            format!("{name}: rank x_v^{} k(Δ)_1 -> bar_{}", d - 2, d - 1),
            dim1,
            into_bar,
        );
        report.check(
            format!(
                "{name}: rank x_v^{} bar_1 -> bar_{}, dim bar_{}",
                d - 2,
                d - 1,
                d - 1
            ),
            (bar.dim(1), bar.dim(1)),
            (on_bar, dim_top),
        );
    }
    if !faces.is_empty() {
        let l = lefschetz_ranks(
            &bar,
            &Omega::Generic,
            1,
            a.omega_seed(),
            a.provenance.trials,
        );
        report.check(
            format!("generic ω^{}: bar_1 -> bar_{}", d - 2, d - 1),
            (l.dim_source, l.dim_source),
            (l.rank, l.dim_target),
        );
    }
    let gate = if a.manifold_gate() != Verdict::Pass {
        Verdict::NotApplicable
    } else if faces.is_empty() {
        Verdict::HypothesisNotMet
    } else {
        Verdict::Pass
    };
    Ok(report.finalize(gate))
}
