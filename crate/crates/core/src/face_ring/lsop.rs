use rand::Rng;

use super::monomial::LinearForm;
use super::reduction::certified_deficiency;
use super::RingError;
use crate::complex::SimplicialComplex;
use crate::linalg::{generic_vector, ExactMatrix, Field};
use crate::util::{derive_seed, rng_for};

/// A candidate linear system of parameters `θ_1, ..., θ_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Lsop<F: Field> {
    pub forms: Vec<LinearForm<F>>,
    /// Seed the forms were drawn from, if sampled.
    pub seed: Option<u64>,
    /// Ordered facet `(v_1, ..., v_d)` with `θ_i = x_{v_i} + Σ_{j∉σ} c_ij x_j`, if normalized.
    pub normalized_on: Option<Vec<usize>>,
}

impl<F: Field> Lsop<F> {
    pub fn new(forms: Vec<LinearForm<F>>) -> Self {
        Lsop {
            forms,
            seed: None,
            normalized_on: None,
        }
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// Coefficients as a `d x n` matrix.
    pub fn matrix(&self, field: &F) -> ExactMatrix<F> {
        let n = self.forms.first().map(|f| f.num_vars()).unwrap_or(0);
        let rows: Vec<Vec<F::Elem>> = self.forms.iter().map(|f| f.coeffs().to_vec()).collect();
        ExactMatrix::from_dense(field, n, &rows)
    }
}

/// `d` forms with coefficients drawn by the field's genericity sampler.
pub fn sample_lsop<F: Field, R: Rng + ?Sized>(
    field: &F,
    k: &SimplicialComplex,
    rng: &mut R,
) -> Lsop<F> {
    let (n, d) = (k.num_vertices(), k.krull_dim());
    Lsop::new(
        (0..d)
            .map(|_| LinearForm::new(generic_vector(field, n, rng)))
            .collect(),
    )
}

/// Necessary and sufficient condition checked facet by facet: the columns of `Θ` indexed by
/// each facet are linearly independent.
pub fn passes_facet_minors<F: Field>(field: &F, k: &SimplicialComplex, lsop: &Lsop<F>) -> bool {
    if lsop.len() != k.krull_dim() {
        return false;
    }
    let m = lsop.matrix(field);
    k.facets()
        .iter()
        .all(|f| m.select_columns(f.vertices()).rank() == f.len())
}

/// Accepts iff `dim k(Δ)_{d+1} = 0`.
pub fn verify_lsop<F: Field>(field: &F, k: &SimplicialComplex, lsop: &Lsop<F>) -> bool {
    lsop.len() == k.krull_dim()
        && certified_deficiency(field, k, &lsop.forms, k.krull_dim() + 1) == 0
}

/// Resampling budget per certification.
pub fn attempt_budget(field_size: u64) -> usize {
    if field_size < 100 {
        4096
    } else {
        64
    }
}

/// Samples from seeds derived from `seed` until a draw passes [`verify_lsop`].
pub fn certify_lsop<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    seed: u64,
) -> Result<Lsop<F>, RingError> {
    let budget = match field.spec().characteristic() {
        0 => attempt_budget(u64::MAX),
        p => attempt_budget(p),
    };
    let mut tried = Vec::new();
    for a in 0..budget as u64 {
        let s = derive_seed(seed, a);
        tried.push(s);
        let mut lsop = sample_lsop(field, k, &mut rng_for(s));
        lsop.seed = Some(s);
        if passes_facet_minors(field, k, &lsop) && verify_lsop(field, k, &lsop) {
            return Ok(lsop);
        }
    }
    if let Some(lsop) = exhaustive_lsop(field, k, seed) {
        return lsop;
    }
    Err(RingError::LsopNotCertified {
        master_seed: seed,
        seeds: tried,
    })
}

/// Largest search space [`exhaustive_lsop`] will walk.
const EXHAUSTIVE_LIMIT: u64 = 1 << 22;

/// Over a small prime field, walks every `Θ` that is the identity on the first facet,
/// starting at an offset derived from `seed`. Every l.s.o.p. is row-equivalent to one of these.
/// `None` when the space is too large to walk; `Some(Err)` when it holds no l.s.o.p.
fn exhaustive_lsop<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    seed: u64,
) -> Option<Result<Lsop<F>, RingError>> {
    let p = field.spec().characteristic();
    let (n, d) = (k.num_vertices(), k.krull_dim());
    let sigma = k
        .facets()
        .iter()
        .find(|f| f.len() == d)?
        .vertices()
        .to_vec();
    let free: Vec<usize> = (0..n).filter(|v| !sigma.contains(v)).collect();
    let slots = (d * free.len()) as u32;
    if p == 0
        || p.checked_pow(slots)
            .is_none_or(|total| total > EXHAUSTIVE_LIMIT)
    {
        return None;
    }
    let total = p.pow(slots);
    let start = derive_seed(seed, u64::MAX) % total;
    for step in 0..total {
        let mut code = (start + step) % total;
        let mut rows = vec![vec![field.zero(); n]; d];
        for (i, row) in rows.iter_mut().enumerate() {
            row[sigma[i]] = field.one();
            for &v in &free {
                row[v] = field.from_i64((code % p) as i64);
                code /= p;
            }
        }
        let mut lsop = Lsop::new(rows.into_iter().map(LinearForm::new).collect());
        if passes_facet_minors(field, k, &lsop) && verify_lsop(field, k, &lsop) {
            lsop.seed = Some(seed);
            return Some(Ok(lsop));
        }
    }
    Some(Err(RingError::NoLsop {
        field: field.spec().to_string(),
    }))
}

/// Row-reduces `Θ` so that its columns on the ordered facet `sigma` form the identity.
pub fn normalize_lsop<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    lsop: &Lsop<F>,
    sigma: &[usize],
) -> Result<Lsop<F>, RingError> {
    let d = k.krull_dim();
    let n = k.num_vertices();
    if sigma.len() != d || lsop.len() != d || !k.is_face(sigma) {
        return Err(RingError::NotAFacet(
            sigma.iter().map(|&v| k.label(v).to_string()).collect(),
        ));
    }
    let mut perm = sigma.to_vec();
    perm.extend((0..n).filter(|v| !sigma.contains(v)));
    let rref = lsop.matrix(field).select_columns(&perm).rref();
    if rref.pivots != (0..d).collect::<Vec<_>>() {
        return Err(RingError::SingularFacetMinor(
            sigma.iter().map(|&v| k.label(v).to_string()).collect(),
        ));
    }
    let forms = (0..d)
        .map(|i| {
            let mut coeffs = vec![field.zero(); n];
            for (c, &v) in perm.iter().enumerate() {
                coeffs[v] = rref.matrix.get(i, c);
            }
            LinearForm::new(coeffs)
        })
        .collect();
    Ok(Lsop {
        forms,
        seed: lsop.seed,
        normalized_on: Some(sigma.to_vec()),
    })
}
