use rayon::prelude::*;

use super::lefschetz::{best_profile, forms_for, rank_duality, weak_lefschetz_profile, Omega};
use super::suite::Analysis;
use crate::complex::Face;
use crate::face_ring::{generic_reduction, LinearForm};
use crate::linalg::Field;
use crate::report::{Verdict, VerificationReport};
use crate::util::derive_seed;

/// Stream offset for the per-link l.s.o.p. draws.
const LINK_STREAM: u64 = 0x6c69_6e6b;

/// Outcome of the middle-degree test on one vertex link.
struct LinkPremise {
    vertex: usize,
    rank: usize,
    target: usize,
    error: Option<String>,
}

/// Premise: for how many vertices `v` is `·ω: k(lk v)_m -> k(lk v)_{m+1}` onto, with
/// `m = floor((d-1)/2)` and generic `ω` and `Θ'`? If at least `n - d`, the conclusion is checked
/// on `bar k(Δ)`: `·ω` injective below `floor(d/2)`, surjective from `ceil(d/2)` on, together
/// with surjectivity on `k(Δ)` itself at `ceil(d/2)`.
///
/// With `zero_omega` the link multiplier is forced to zero, which makes the premise fail
/// wherever the target degree is nonzero.
pub fn verify_connection<F: Field>(a: &Analysis<F>, zero_omega: bool) -> VerificationReport {
    let k = &a.complex;
    let field = &a.field;
    let d = a.krull_dim();
    let n = k.num_vertices();
    let m = d.saturating_sub(1) / 2;
    let (seed, trials) = (a.provenance.seed, a.provenance.trials);
    let mut report = VerificationReport::new("link-premise-connection", a.inputs());

    let premises: Vec<LinkPremise> = (0..n)
        .into_par_iter()
        .map(|v| {
            let lk = k.link(&Face::new(vec![v])).expect("vertex is a face");
            match generic_reduction(
                field,
                &lk,
                derive_seed(seed ^ LINK_STREAM, v as u64),
                trials,
            ) {
                Ok(g) => {
                    let r = &g.reduction;
                    let omega = if zero_omega {
                        Omega::Form(LinearForm::zero(field, lk.num_vertices()))
                    } else {
                        Omega::Generic
                    };
                    let forms = forms_for(
                        field,
                        lk.num_vertices(),
                        &omega,
                        derive_seed(seed, v as u64),
                        trials,
                    );
                    let rank = forms
                        .iter()
                        .map(|w| r.multiplication_map(w, m).rank())
                        .max()
                        .unwrap_or(0);
                    LinkPremise {
                        vertex: v,
                        rank,
                        target: r.dim(m + 1),
                        error: None,
                    }
                }
                Err(e) => LinkPremise {
                    vertex: v,
                    rank: 0,
                    target: 0,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    let passing = premises
        .iter()
        .filter(|p| p.error.is_none() && p.rank == p.target)
        .count();
    let threshold = n.saturating_sub(d);
    for p in premises
        .iter()
        .filter(|p| p.error.is_some() || p.rank != p.target)
    {
        let why = p
            .error
            .clone()
            .unwrap_or_else(|| format!("rank {} < {}", p.rank, p.target));
        report.note(format!(
            "v={}: link map not onto ({why})",
            k.label(p.vertex)
        ));
    }
    report.note(format!(
        "{passing} of {n} vertex links onto in degree {m} -> {}; n - d = {threshold}",
        m + 1
    ));
    let premise = passing >= threshold;
    report.check(
        format!("premise: at least n-d={threshold} links onto in degree {m}"),
        true,
        premise,
    );

    if premise {
        let bar = a.gorenstein();
        let forms = forms_for(field, n, &Omega::Generic, a.omega_seed(), trials);
        let profiles: Vec<_> = forms
            .iter()
            .map(|w| weak_lefschetz_profile(&bar, w))
            .collect();
        if profiles.windows(2).any(|w| w[0] != w[1]) {
            report.note("generic ω draws disagree; per-step maximum ranks are used");
        }
        let profile = best_profile(&profiles);
        for s in &profile {
            if s.i < d / 2 {
                report.check(
                    format!("conclusion: ·ω bar_{} -> bar_{} injective", s.i, s.i + 1),
                    true,
                    s.injective,
                );
            }
            if s.i >= d.div_ceil(2) {
                report.check(
                    format!("conclusion: ·ω bar_{} -> bar_{} surjective", s.i, s.i + 1),
                    true,
                    s.surjective,
                );
            }
        }
        let c = d.div_ceil(2);
        if c < d {
            let r = a.reduction();
            let rank = forms
                .iter()
                .map(|w| r.multiplication_map(w, c).rank())
                .max()
                .unwrap_or(0);
            report.check(
                format!("conclusion: ·ω k(Δ)_{c} -> k(Δ)_{} surjective", c + 1),
                r.dim(c + 1),
                rank,
            );
        }
        for (i, rank, dual) in rank_duality(&profile, d) {
            if i <= d.saturating_sub(1) / 2 {
                report.check(
                    format!("duality: rank ·ω at {i} = rank at {}", d - 1 - i),
                    dual,
                    rank,
                );
            }
        }
    }
    let gate = match (a.manifold_gate(), premise) {
        (Verdict::Pass, true) => Verdict::Pass,
        (Verdict::Pass, false) => Verdict::HypothesisNotMet,
        (g, _) => g,
    };
    report.finalize(gate)
}
