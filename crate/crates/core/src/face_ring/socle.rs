use rayon::prelude::*;
use serde::Serialize;

use super::reduction::ArtinianReduction;
use super::RingError;
use crate::complex::SimplicialComplex;
use crate::homology::{classify, BettiVector};
use crate::linalg::{ExactMatrix, Field, SubspaceBasis};
use crate::util::binomial;

/// Graded socle of `k(Δ)` with bases in coset coordinates.
#[derive(Clone, Debug)]
pub struct SocleDecomposition<F: Field> {
    pub dims: Vec<usize>,
    pub bases: Vec<SubspaceBasis<F>>,
    /// `C(d, i) · β_{i-1}` for each degree.
    pub predicted: Vec<u128>,
    pub betti: BettiVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SocleSummary {
    pub dims: Vec<usize>,
    pub predicted: Vec<u128>,
}

impl<F: Field> SocleDecomposition<F> {
    pub fn matches_prediction(&self) -> bool {
        self.dims
            .iter()
            .zip(&self.predicted)
            .all(|(a, b)| *a as u128 == *b)
    }

    pub fn summary(&self) -> SocleSummary {
        SocleSummary {
            dims: self.dims.clone(),
            predicted: self.predicted.clone(),
        }
    }
}

/// `C(d, i) · β_{i-1}` for `i = 0..=d`.
pub fn predicted_socle_dims(d: usize, betti: &BettiVector) -> Vec<u128> {
    (0..=d)
        .map(|i| binomial(d as u64, i as u64) * betti.get(i as isize - 1) as u128)
        .collect()
}

/// Socle of a graded piece: the common kernel of `maps`, all with `cols` columns.
pub(crate) fn common_kernel<F: Field>(
    field: &F,
    cols: usize,
    maps: &[ExactMatrix<F>],
) -> SubspaceBasis<F> {
    if maps.iter().all(|m| m.nrows() == 0) {
        return SubspaceBasis::full(field, cols);
    }
    ExactMatrix::vstack(field, cols, maps).kernel_basis()
}

impl<F: Field> ArtinianReduction<F> {
    /// Kernel of `y ↦ (x_1 y, ..., x_n y)` in every degree.
    pub fn socle(&self) -> SocleDecomposition<F> {
        let d = self.krull_dim();
        let bases: Vec<SubspaceBasis<F>> = (0..=d)
            .into_par_iter()
            .map(|i| common_kernel(self.field(), self.dim(i), self.variable_maps(i)))
            .collect();
        let betti = crate::homology::betti(self.field(), self.complex());
        SocleDecomposition {
            dims: bases.iter().map(|b| b.dim()).collect(),
            predicted: predicted_socle_dims(d, &betti),
            bases,
            betti,
        }
    }
}

/// `h'_i = h_i + C(d,i) Σ_{j=1}^{i-1} (-1)^{i-j-1} β_{j-1}`; refuses non-Buchsbaum input.
pub fn schenzel_hilbert<F: Field>(field: &F, k: &SimplicialComplex) -> Result<Vec<i64>, RingError> {
    let report = classify(field, k);
    if !report.is_buchsbaum {
        return Err(RingError::NotBuchsbaum(report.witness));
    }
    Ok(schenzel_formula(&k.h_vector().0, &report.betti))
}

/// The formula alone, for callers that already know the complex is Buchsbaum.
pub fn schenzel_formula(h: &[i64], betti: &BettiVector) -> Vec<i64> {
    let d = h.len() - 1;
    (0..=d)
        .map(|i| {
            let alt: i64 = (1..i)
                .map(|j| {
                    let b = betti.get(j as isize - 1) as i64;
                    if (i - j - 1) % 2 == 0 {
                        b
                    } else {
                        -b
                    }
                })
                .sum();
            h[i] + binomial(d as u64, i as u64) as i64 * alt
        })
        .collect()
}
