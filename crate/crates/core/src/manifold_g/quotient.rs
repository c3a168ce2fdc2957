use rayon::prelude::*;

use crate::face_ring::{ArtinianReduction, LinearForm, SocleDecomposition};
use crate::linalg::{ExactMatrix, Field, QuotientSpace, SubspaceBasis};

/// `k(Δ, level) = k(Δ) / I_[level]` where `I_[level]` is the socle in degrees `0..=level`.
///
/// Each graded piece is a quotient of the coset coordinate space of `k(Δ)_i`. Socle elements
/// are killed by every variable, so multiplication descends to the quotient.
#[derive(Debug)]
pub struct TruncatedQuotient<'a, F: Field> {
    parent: &'a ArtinianReduction<F>,
    level: usize,
    pieces: Vec<QuotientSpace<F>>,
    socle_dims: Vec<usize>,
}

/// `bar k(Δ) = k(Δ) / I` with `I` the socle below the top degree.
pub type GorensteinQuotient<'a, F> = TruncatedQuotient<'a, F>;

pub fn truncated_quotient<'a, F: Field>(
    parent: &'a ArtinianReduction<F>,
    socle: &SocleDecomposition<F>,
    level: usize,
) -> TruncatedQuotient<'a, F> {
    let d = parent.krull_dim();
    let f = parent.field();
    let pieces = (0..=d)
        .map(|i| {
            if i <= level && i < socle.bases.len() {
                QuotientSpace::new(socle.bases[i].clone())
            } else {
                QuotientSpace::trivial(f, parent.dim(i))
            }
        })
        .collect();
    TruncatedQuotient {
        parent,
        level,
        pieces,
        socle_dims: socle.dims.clone(),
    }
}

pub fn gorenstein_quotient<'a, F: Field>(
    parent: &'a ArtinianReduction<F>,
    socle: &SocleDecomposition<F>,
) -> GorensteinQuotient<'a, F> {
    truncated_quotient(parent, socle, parent.krull_dim().saturating_sub(1))
}

impl<'a, F: Field> TruncatedQuotient<'a, F> {
    pub fn parent(&self) -> &'a ArtinianReduction<F> {
        self.parent
    }
    pub fn field(&self) -> &F {
        self.parent.field()
    }
    pub fn level(&self) -> usize {
        self.level
    }
    pub fn krull_dim(&self) -> usize {
        self.parent.krull_dim()
    }

    pub fn dim(&self, i: usize) -> usize {
        self.pieces.get(i).map(|q| q.dim()).unwrap_or(0)
    }

    /// Graded dimensions; for the Gorenstein quotient this is `h''`.
    pub fn hilbert(&self) -> Vec<usize> {
        (0..=self.krull_dim()).map(|i| self.dim(i)).collect()
    }

    /// Dimensions of the ideal that was divided out.
    pub fn ideal_dims(&self) -> Vec<usize> {
        (0..=self.krull_dim())
            .map(|i| {
                if i <= self.level {
                    self.socle_dims[i]
                } else {
                    0
                }
            })
            .collect()
    }

    pub fn piece(&self, i: usize) -> &QuotientSpace<F> {
        &self.pieces[i]
    }

    /// Class of an element of `k(Δ)_i` given in coset coordinates.
    pub fn project(&self, i: usize, coords: &[F::Elem]) -> Vec<F::Elem> {
        match self.pieces.get(i) {
            Some(q) => q.project(coords),
            None => Vec::new(),
        }
    }

    /// Canonical preimage in `k(Δ)_i`.
    pub fn lift(&self, i: usize, coords: &[F::Elem]) -> Vec<F::Elem> {
        self.pieces[i].lift(coords)
    }

    /// The quotient map `k(Δ)_i -> piece i` as a matrix.
    pub fn projection_matrix(&self, i: usize) -> ExactMatrix<F> {
        let f = self.field();
        let n = self.parent.dim(i);
        let columns: Vec<Vec<F::Elem>> = (0..n)
            .map(|c| {
                let mut e = vec![f.zero(); n];
                e[c] = f.one();
                self.project(i, &e)
            })
            .collect();
        ExactMatrix::from_columns(f, self.dim(i), &columns)
    }

    /// Descends a map `k(Δ)_i -> k(Δ)_j` to the quotient pieces.
    fn descend(&self, m: &ExactMatrix<F>, i: usize, j: usize) -> ExactMatrix<F> {
        let f = self.field();
        let columns: Vec<Vec<F::Elem>> = self.pieces[i]
            .cosets()
            .iter()
            .map(|&c| self.project(j, &m.column(c)))
            .collect();
        ExactMatrix::from_columns(f, self.dim(j), &columns)
    }

    /// `·ω` from piece `i` to piece `i + 1`.
    pub fn multiplication_map(&self, form: &LinearForm<F>, i: usize) -> ExactMatrix<F> {
        if i >= self.krull_dim() {
            return ExactMatrix::zeros(self.field(), 0, self.dim(i));
        }
        self.descend(&self.parent.multiplication_map(form, i), i, i + 1)
    }

    /// `·ω^(j-i)` from piece `i` to piece `j`, as a product of single-degree maps.
    pub fn power_map(&self, form: &LinearForm<F>, i: usize, j: usize) -> ExactMatrix<F> {
        assert!(i <= j, "power maps go up in degree");
        let mut acc = ExactMatrix::identity(self.field(), self.dim(i));
        for t in i..j {
            acc = self.multiplication_map(form, t).mul(&acc);
        }
        acc
    }

    /// Variable multiplications on piece `i`.
    pub fn variable_maps(&self, i: usize) -> Vec<ExactMatrix<F>> {
        if i >= self.krull_dim() {
            return Vec::new();
        }
        self.parent
            .variable_maps(i)
            .par_iter()
            .map(|m| self.descend(m, i, i + 1))
            .collect()
    }

    /// Socle of the quotient in every degree, as subspaces of the quotient coordinates.
    pub fn socle(&self) -> Vec<SubspaceBasis<F>> {
        (0..=self.krull_dim())
            .into_par_iter()
            .map(|i| {
                crate::face_ring::common_kernel(self.field(), self.dim(i), &self.variable_maps(i))
            })
            .collect()
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        self.socle().iter().map(|b| b.dim()).collect()
    }
}
