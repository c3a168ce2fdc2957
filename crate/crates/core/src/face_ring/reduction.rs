use std::sync::OnceLock;

use rayon::prelude::*;

use super::lsop::{normalize_lsop, Lsop};
use super::monomial::{LinearForm, Monomial, MonomialBasis};
use super::RingError;
use crate::complex::SimplicialComplex;
use crate::linalg::{ExactMatrix, Field, PrimeField, QuotientSpace, SparseRow, SubspaceBasis};

/// Prime used for modular rank certificates over `Q`.
const CERTIFICATE_PRIME: u64 = 2_147_483_647;

/// Sparse coordinates of `form * m` in the monomial basis `target`; non-face products vanish.
fn form_times_monomial<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    form: &LinearForm<F>,
    m: &Monomial,
    target: &MonomialBasis,
) -> SparseRow<F::Elem> {
    let mut row: SparseRow<F::Elem> = form
        .terms(field)
        .filter_map(|(v, c)| {
            let p = m.times_variable(v);
            if !p.is_standard(k) {
                return None;
            }
            Some((
                target.index_of(&p).expect("standard monomial is listed"),
                c.clone(),
            ))
        })
        .collect();
    row.sort_by_key(|e| e.0);
    row
}

/// Span of `θ_t * m` over all forms and all `m` of degree `degree - 1`.
fn theta_image<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    forms: &[LinearForm<F>],
    prev: &MonomialBasis,
    cur: &MonomialBasis,
) -> SubspaceBasis<F> {
    let rows: Vec<SparseRow<F::Elem>> = forms
        .iter()
        .flat_map(|t| prev.monomials().iter().map(move |m| (t, m)))
        .map(|(t, m)| form_times_monomial(field, k, t, m, cur))
        .filter(|r| !r.is_empty())
        .collect();
    SubspaceBasis::from_sparse_rows(field, cur.len(), rows)
}

/// `dim k[Δ]_i / (Θ k[Δ]_{i-1})` for a single degree, without building lower degrees.
pub(crate) fn theta_image_deficiency<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    forms: &[LinearForm<F>],
    degree: usize,
) -> usize {
    let cur = MonomialBasis::new(k, degree);
    if degree == 0 {
        return cur.len();
    }
    let prev = MonomialBasis::new(k, degree - 1);
    cur.len() - theta_image(field, k, forms, &prev, &cur).dim()
}

/// Like [`theta_image_deficiency`], but over `Q` first tries the same computation modulo a
/// large prime: reduction mod p cannot raise rank, so a vanishing quotient mod p certifies a
/// vanishing quotient over `Q`.
pub(crate) fn certified_deficiency<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    forms: &[LinearForm<F>],
    degree: usize,
) -> usize {
    if field.spec().characteristic() == 0 {
        let reduced: Option<Vec<LinearForm<PrimeField>>> = forms
            .iter()
            .map(|f| {
                f.coeffs()
                    .iter()
                    .map(|c| field.reduce_mod(c, CERTIFICATE_PRIME))
                    .collect::<Option<Vec<u64>>>()
                    .map(LinearForm::new)
            })
            .collect();
        if let Some(r) = reduced {
            let fp = PrimeField::new(CERTIFICATE_PRIME).expect("prime");
            if theta_image_deficiency(&fp, k, &r, degree) == 0 {
                return 0;
            }
        }
    }
    theta_image_deficiency(field, k, forms, degree)
}

/// `k(Δ) = k[Δ]/(Θ)` degree by degree. Each `k(Δ)_i` is represented by the standard monomials
/// that are not pivots of the lex-echelonized image of `Θ · k[Δ]_{i-1}`.
#[derive(Debug)]
pub struct ArtinianReduction<F: Field> {
    complex: SimplicialComplex,
    field: F,
    lsop: Lsop<F>,
    bases: Vec<MonomialBasis>,
    quotients: Vec<QuotientSpace<F>>,
    variable_maps: Vec<OnceLock<Vec<ExactMatrix<F>>>>,
}

impl<F: Field> ArtinianReduction<F> {
    /// Builds degrees `0..=d+1`; fails unless the top one vanishes.
    ///
    /// Images are generated from `Θ` row-reduced against a facet. The span, and so every
    /// echelon form and coset basis, is unchanged, but the generators are much sparser.
    pub fn new(field: &F, k: &SimplicialComplex, lsop: Lsop<F>) -> Result<Self, RingError> {
        let d = k.krull_dim();
        if lsop.len() != d {
            return Err(RingError::WrongLsopLength {
                expected: d,
                got: lsop.len(),
            });
        }
        if lsop.forms.iter().any(|f| f.num_vars() != k.num_vertices()) {
            return Err(RingError::WrongLsopLength {
                expected: k.num_vertices(),
                got: lsop.forms[0].num_vars(),
            });
        }
        let sigma = k
            .facets()
            .iter()
            .find(|f| f.len() == d)
            .expect("some facet has maximal size");
        let generators = match normalize_lsop(field, k, &lsop, sigma.vertices()) {
            Ok(norm) => norm.forms,
            Err(RingError::SingularFacetMinor(_)) => {
                return Err(RingError::NotAnLsop {
                    top_dim: theta_image_deficiency(field, k, &lsop.forms, d + 1),
                })
            }
            Err(e) => return Err(e),
        };
        let top = certified_deficiency(field, k, &generators, d + 1);
        if top != 0 {
            return Err(RingError::NotAnLsop { top_dim: top });
        }
        let bases: Vec<MonomialBasis> = (0..=d + 1)
            .into_par_iter()
            .map(|i| MonomialBasis::new(k, i))
            .collect();
        let quotients: Vec<QuotientSpace<F>> = (0..=d + 1)
            .into_par_iter()
            .map(|i| {
                if i == 0 {
                    QuotientSpace::trivial(field, bases[0].len())
                } else if i == d + 1 {
                    QuotientSpace::new(SubspaceBasis::full(field, bases[i].len()))
                } else {
                    QuotientSpace::new(theta_image(field, k, &generators, &bases[i - 1], &bases[i]))
                }
            })
            .collect();
        Ok(ArtinianReduction {
            complex: k.clone(),
            field: field.clone(),
            lsop,
            bases,
            quotients,
            variable_maps: (0..=d).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn lsop(&self) -> &Lsop<F> {
        &self.lsop
    }
    pub fn krull_dim(&self) -> usize {
        self.complex.krull_dim()
    }
    pub fn num_vars(&self) -> usize {
        self.complex.num_vertices()
    }

    /// `dim k(Δ)_i`; zero above `d`.
    pub fn dim(&self, i: usize) -> usize {
        self.quotients.get(i).map(|q| q.dim()).unwrap_or(0)
    }

    /// `(dim k(Δ)_0, ..., dim k(Δ)_d)`.
    pub fn hilbert(&self) -> Vec<usize> {
        (0..=self.krull_dim()).map(|i| self.dim(i)).collect()
    }

    /// Standard monomials of `k[Δ]_i`.
    pub fn ambient_basis(&self, i: usize) -> &MonomialBasis {
        &self.bases[i]
    }

    pub fn quotient(&self, i: usize) -> &QuotientSpace<F> {
        &self.quotients[i]
    }

    /// Monomials whose classes form the chosen basis of `k(Δ)_i`.
    pub fn coset_monomials(&self, i: usize) -> Vec<&Monomial> {
        self.quotients[i]
            .cosets()
            .iter()
            .map(|&c| self.bases[i].get(c))
            .collect()
    }

    /// Coset coordinates of the class of an element of `k[Δ]_i`.
    pub fn project(&self, i: usize, ambient: &[F::Elem]) -> Vec<F::Elem> {
        if i >= self.quotients.len() {
            return Vec::new();
        }
        self.quotients[i].project(ambient)
    }

    /// Canonical representative in `k[Δ]_i`.
    pub fn lift(&self, i: usize, coords: &[F::Elem]) -> Vec<F::Elem> {
        self.quotients[i].lift(coords)
    }

    /// `form * y` for `y ∈ k[Δ]_i` given densely; the result lives in `k[Δ]_{i+1}`.
    pub fn multiply_ambient(&self, form: &LinearForm<F>, i: usize, y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let owned;
        let target = match self.bases.get(i + 1) {
            Some(b) => b,
            None => {
                owned = MonomialBasis::new(&self.complex, i + 1);
                &owned
            }
        };
        let source = &self.bases[i];
        let mut out = vec![f.zero(); target.len()];
        for (idx, c) in y.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (col, a) in form_times_monomial(f, &self.complex, form, source.get(idx), target) {
                out[col] = f.add(&out[col], &f.mul(c, &a));
            }
        }
        out
    }

    /// Matrix (`dim_{i+1} x dim_i`) of multiplication by `form` from `k(Δ)_i` to `k(Δ)_{i+1}`.
    pub fn multiplication_map(&self, form: &LinearForm<F>, i: usize) -> ExactMatrix<F> {
        let f = &self.field;
        let rows = self.dim(i + 1);
        if rows == 0 || i > self.krull_dim() {
            return ExactMatrix::zeros(f, rows, self.dim(i));
        }
        let target = &self.bases[i + 1];
        let columns: Vec<Vec<F::Elem>> = self
            .coset_monomials(i)
            .into_iter()
            .map(|m| {
                let mut v = vec![f.zero(); target.len()];
                for (c, a) in form_times_monomial(f, &self.complex, form, m, target) {
                    v[c] = a;
                }
                self.quotients[i + 1].project(&v)
            })
            .collect();
        ExactMatrix::from_columns(f, rows, &columns)
    }

    /// Multiplication by a monomial of any degree, from `k(Δ)_i` to `k(Δ)_{i + deg m}`.
    pub fn monomial_map(&self, m: &Monomial, i: usize) -> ExactMatrix<F> {
        let f = &self.field;
        let j = i + m.degree();
        let rows = self.dim(j);
        if rows == 0 {
            return ExactMatrix::zeros(f, 0, self.dim(i));
        }
        let columns: Vec<Vec<F::Elem>> = self
            .coset_monomials(i)
            .into_iter()
            .map(|c| {
                let p = c.times(m);
                let mut v = vec![f.zero(); self.bases[j].len()];
                if p.is_standard(&self.complex) {
                    v[self.bases[j]
                        .index_of(&p)
                        .expect("standard monomial is listed")] = f.one();
                }
                self.quotients[j].project(&v)
            })
            .collect();
        ExactMatrix::from_columns(f, rows, &columns)
    }

    /// Multiplication by each variable `x_v` on `k(Δ)_i`, computed once and cached.
    pub fn variable_maps(&self, i: usize) -> &[ExactMatrix<F>] {
        self.variable_maps[i].get_or_init(|| {
            let n = self.num_vars();
            (0..n)
                .into_par_iter()
                .map(|v| self.multiplication_map(&LinearForm::variable(&self.field, n, v), i))
                .collect()
        })
    }

    pub fn variable_map(&self, v: usize, i: usize) -> &ExactMatrix<F> {
        &self.variable_maps(i)[v]
    }

    /// Human-readable element of `k(Δ)_i` in the coset basis.
    pub fn render(&self, i: usize, coords: &[F::Elem]) -> String {
        let f = &self.field;
        let terms: Vec<String> = coords
            .iter()
            .zip(self.coset_monomials(i))
            .filter(|(c, _)| !f.is_zero(c))
            .map(|(c, m)| format!("{}*{}", f.render(c), m.render(&self.complex)))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}
