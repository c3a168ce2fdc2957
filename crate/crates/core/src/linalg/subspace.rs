use super::echelon::{dense_from_sparse, sparse_from_dense, Echelon, SparseRow};
use super::field::Field;

/// Subspace of `F^ambient_dim` held as a reduced row echelon basis.
#[derive(Clone, Debug)]
pub struct SubspaceBasis<F: Field> {
    field: F,
    ambient_dim: usize,
    rows: Vec<SparseRow<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> SubspaceBasis<F> {
    pub fn zero(field: &F, ambient_dim: usize) -> Self {
        SubspaceBasis {
            field: field.clone(),
            ambient_dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient_dim: usize) -> Self {
        SubspaceBasis {
            field: field.clone(),
            ambient_dim,
            rows: (0..ambient_dim).map(|i| vec![(i, field.one())]).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of arbitrary sparse vectors (dependent ones are discarded).
    pub fn from_sparse_rows(
        field: &F,
        ambient_dim: usize,
        vectors: Vec<SparseRow<F::Elem>>,
    ) -> Self {
        let mut vectors = vectors;
        vectors
            .sort_by_cached_key(|r| (r.len(), r.iter().map(|(_, x)| field.size(x)).sum::<u64>()));
        let mut ech = Echelon::new(field.clone(), ambient_dim);
        for v in vectors {
            debug_assert!(v.iter().all(|(c, _)| *c < ambient_dim));
            ech.insert(v);
        }
        let (rows, pivots) = ech.into_rref();
        SubspaceBasis {
            field: field.clone(),
            ambient_dim,
            rows,
            pivots,
        }
    }

    /// Span of dense vectors.
    pub fn from_vectors(field: &F, ambient_dim: usize, vectors: &[Vec<F::Elem>]) -> Self {
        let sparse = vectors
            .iter()
            .map(|v| {
                assert_eq!(v.len(), ambient_dim, "vector length mismatch");
                sparse_from_dense(field, v)
            })
            .collect();
        Self::from_sparse_rows(field, ambient_dim, sparse)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    /// Pivot columns, strictly increasing.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn rows(&self) -> &[SparseRow<F::Elem>] {
        &self.rows
    }
    pub fn basis_dense(&self) -> Vec<Vec<F::Elem>> {
        self.rows
            .iter()
            .map(|r| dense_from_sparse(&self.field, r, self.ambient_dim))
            .collect()
    }

    /// Residual of `v` after subtracting its component along the echelon basis. The residual
    /// vanishes on every pivot coordinate.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            // Other pivot columns of `row` are zero, so `w[p]` is still the original entry.
            let a = w[p].clone();
            if f.is_zero(&a) {
                continue;
            }
            for (c, x) in row {
                w[*c] = f.sub_mul(&w[*c], &a, x);
            }
        }
        w
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Whether `self` is contained in `other` (same ambient space).
    pub fn is_subspace_of(&self, other: &SubspaceBasis<F>) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.basis_dense().iter().all(|v| other.contains(v))
    }
}

/// Coordinates not used as pivots by `sub`. Their unit vectors project to a basis of
/// `F^ambient_dim / sub`.
pub fn quotient_coset_basis<F: Field>(ambient_dim: usize, sub: &SubspaceBasis<F>) -> Vec<usize> {
    assert_eq!(
        sub.ambient_dim(),
        ambient_dim,
        "subspace lives in a different ambient space"
    );
    let mut is_pivot = vec![false; ambient_dim];
    for &p in sub.pivots() {
        is_pivot[p] = true;
    }
    (0..ambient_dim).filter(|&c| !is_pivot[c]).collect()
}

/// `F^n / sub` with the coset basis given by [`quotient_coset_basis`].
#[derive(Clone, Debug)]
pub struct QuotientSpace<F: Field> {
    sub: SubspaceBasis<F>,
    cosets: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl<F: Field> QuotientSpace<F> {
    pub fn new(sub: SubspaceBasis<F>) -> Self {
        let cosets = quotient_coset_basis(sub.ambient_dim(), &sub);
        let mut position = vec![None; sub.ambient_dim()];
        for (k, &c) in cosets.iter().enumerate() {
            position[c] = Some(k);
        }
        QuotientSpace {
            sub,
            cosets,
            position,
        }
    }

    /// The whole space modulo nothing.
    pub fn trivial(field: &F, ambient_dim: usize) -> Self {
        Self::new(SubspaceBasis::zero(field, ambient_dim))
    }

    pub fn field(&self) -> &F {
        self.sub.field()
    }
    pub fn dim(&self) -> usize {
        self.cosets.len()
    }
    pub fn ambient_dim(&self) -> usize {
        self.sub.ambient_dim()
    }
    pub fn subspace(&self) -> &SubspaceBasis<F> {
        &self.sub
    }
    /// Ambient coordinates whose unit vectors represent the quotient basis.
    pub fn cosets(&self) -> &[usize] {
        &self.cosets
    }
    pub fn coset_position(&self, ambient: usize) -> Option<usize> {
        self.position[ambient]
    }

    /// Coordinates of the class of `v` in the coset basis.
    pub fn project(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let r = self.sub.reduce(v);
        self.cosets.iter().map(|&c| r[c].clone()).collect()
    }

    /// Canonical representative of a class given in coset coordinates.
    pub fn lift(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(coords.len(), self.dim(), "coordinate length mismatch");
        let f = self.field();
        let mut v = vec![f.zero(); self.ambient_dim()];
        for (x, &c) in coords.iter().zip(&self.cosets) {
            v[c] = x.clone();
        }
        v
    }
}
