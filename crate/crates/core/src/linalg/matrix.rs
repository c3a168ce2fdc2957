use super::echelon::{dense_from_sparse, sparse_from_dense, Echelon, SparseRow};
use super::field::Field;
use super::subspace::SubspaceBasis;

/// Matrix over an exact field, stored as sparse rows.
#[derive(Clone, Debug)]
pub struct ExactMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<SparseRow<F::Elem>>,
}

/// Result of [`ExactMatrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub matrix: ExactMatrix<F>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<F: Field> PartialEq for ExactMatrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, field.one())]).collect();
        ExactMatrix {
            field: field.clone(),
            rows: n,
            cols: n,
            data,
        }
    }

    /// Builds from dense rows; every row must have length `cols`.
    pub fn from_dense(field: &F, cols: usize, rows: &[Vec<F::Elem>]) -> Self {
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "dense row has wrong length");
                sparse_from_dense(field, r)
            })
            .collect();
        ExactMatrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds from small integers, mostly for tests and fixtures.
    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        let dense: Vec<Vec<F::Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_dense(field, cols, &dense)
    }

    /// Builds from sparse rows; entries are sorted and zeros dropped, repeated columns summed.
    pub fn from_sparse_rows(field: &F, cols: usize, rows: Vec<SparseRow<F::Elem>>) -> Self {
        let data = rows
            .into_iter()
            .map(|mut r| {
                r.sort_by_key(|e| e.0);
                let mut out: SparseRow<F::Elem> = Vec::with_capacity(r.len());
                for (c, v) in r {
                    assert!(c < cols, "column {c} out of range {cols}");
                    match out.last_mut() {
                        Some(last) if last.0 == c => last.1 = field.add(&last.1, &v),
                        _ => out.push((c, v)),
                    }
                }
                out.retain(|e| !field.is_zero(&e.1));
                out
            })
            .collect::<Vec<_>>();
        ExactMatrix {
            field: field.clone(),
            rows: data.len(),
            cols,
            data,
        }
    }

    /// Builds from dense column vectors of length `rows`.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut data: Vec<SparseRow<F::Elem>> = vec![Vec::new(); rows];
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column has wrong length");
            for (r, x) in col.iter().enumerate() {
                if !field.is_zero(x) {
                    data[r].push((c, x.clone()));
                }
            }
        }
        ExactMatrix {
            field: field.clone(),
            rows,
            cols: columns.len(),
            data,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn nrows(&self) -> usize {
        self.rows
    }
    pub fn ncols(&self) -> usize {
        self.cols
    }
    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> F::Elem {
        assert!(r < self.rows && c < self.cols);
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn row(&self, r: usize) -> &[(usize, F::Elem)] {
        &self.data[r]
    }

    pub fn row_dense(&self, r: usize) -> Vec<F::Elem> {
        dense_from_sparse(&self.field, &self.data[r], self.cols)
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row_dense(r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<SparseRow<F::Elem>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        ExactMatrix {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// `self * v` for a dense column vector.
    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let f = &self.field;
        self.data
            .iter()
            .map(|row| {
                row.iter().fold(f.zero(), |acc, (c, x)| {
                    if f.is_zero(&v[*c]) {
                        acc
                    } else {
                        f.add(&acc, &f.mul(x, &v[*c]))
                    }
                })
            })
            .collect()
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let f = &self.field;
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = vec![f.zero(); rhs.cols];
                for (k, a) in row {
                    for (c, b) in &rhs.data[*k] {
                        acc[*c] = f.add(&acc[*c], &f.mul(a, b));
                    }
                }
                sparse_from_dense(f, &acc)
            })
            .collect();
        ExactMatrix {
            field: f.clone(),
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        let f = &self.field;
        let minus_one = f.neg(&f.one());
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| super::echelon::sparse_sub_mul(f, a, &minus_one, b))
            .collect();
        ExactMatrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let f = &self.field;
        let data = self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(c, x)| (*c, f.mul(s, x)))
                    .filter(|e| !f.is_zero(&e.1))
                    .collect()
            })
            .collect();
        ExactMatrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(field: &F, cols: usize, blocks: &[ExactMatrix<F>]) -> Self {
        let mut data = Vec::new();
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend(b.data.iter().cloned());
        }
        ExactMatrix {
            field: field.clone(),
            rows: data.len(),
            cols,
            data,
        }
    }

    /// Stacks matrices with equal row counts side by side.
    pub fn hstack(field: &F, rows: usize, blocks: &[ExactMatrix<F>]) -> Self {
        let mut data: Vec<SparseRow<F::Elem>> = vec![Vec::new(); rows];
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for (r, row) in b.data.iter().enumerate() {
                data[r].extend(row.iter().map(|(c, x)| (c + offset, x.clone())));
            }
            offset += b.cols;
        }
        ExactMatrix {
            field: field.clone(),
            rows,
            cols: offset,
            data,
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            pos[c] = k;
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut r: SparseRow<F::Elem> = row
                    .iter()
                    .filter(|(c, _)| pos[*c] != usize::MAX)
                    .map(|(c, x)| (pos[*c], x.clone()))
                    .collect();
                r.sort_by_key(|e| e.0);
                r
            })
            .collect();
        ExactMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    /// Row order fed to the eliminator: sparsest and cheapest rows first, so that over `Q`
    /// pivots are taken from the rows least likely to inflate coefficients.
    fn elimination_order(&self) -> Vec<usize> {
        let f = &self.field;
        let mut order: Vec<usize> = (0..self.rows).collect();
        order.sort_by_cached_key(|&r| {
            let row = &self.data[r];
            (
                row.len(),
                row.iter().map(|(_, x)| f.size(x)).sum::<u64>(),
                r,
            )
        });
        order
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.field.clone(), self.cols);
        for r in self.elimination_order() {
            ech.insert(self.data[r].clone());
            if ech.rank() == self.cols {
                break;
            }
        }
        ech.rank()
    }

    /// Reduced row echelon form: nonzero rows first, sorted by pivot column.
    pub fn rref(&self) -> Rref<F> {
        let mut ech = Echelon::new(self.field.clone(), self.cols);
        for r in self.elimination_order() {
            ech.insert(self.data[r].clone());
        }
        let (mut rows, pivots) = ech.into_rref();
        let rank = rows.len();
        rows.resize(self.rows, Vec::new());
        Rref {
            matrix: ExactMatrix {
                field: self.field.clone(),
                rows: self.rows,
                cols: self.cols,
                data: rows,
            },
            rank,
            pivots,
        }
    }

    /// Row space as an echelonized subspace of `F^cols`.
    pub fn row_space(&self) -> SubspaceBasis<F> {
        SubspaceBasis::from_sparse_rows(&self.field, self.cols, self.data.clone())
    }

    /// Null space `{x : self * x = 0}` in `F^cols`.
    pub fn kernel_basis(&self) -> SubspaceBasis<F> {
        let f = &self.field;
        let Rref {
            matrix,
            rank,
            pivots,
        } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut vectors = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v: SparseRow<F::Elem> = vec![(free, f.one())];
            for (i, &p) in pivots.iter().enumerate().take(rank) {
                let x = matrix.get(i, free);
                if !f.is_zero(&x) {
                    v.push((p, f.neg(&x)));
                }
            }
            v.sort_by_key(|e| e.0);
            vectors.push(v);
        }
        SubspaceBasis::from_sparse_rows(f, self.cols, vectors)
    }

    /// Column space as an echelonized subspace of `F^rows`.
    pub fn image_basis(&self) -> SubspaceBasis<F> {
        self.transpose().row_space()
    }

    /// Some `x` with `self * x = b`, or `None` if `b` is outside the column space.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let f = &self.field;
        let rhs = ExactMatrix::from_columns(f, self.rows, &[b.to_vec()]);
        let Rref {
            matrix,
            rank,
            pivots,
        } = ExactMatrix::hstack(f, self.rows, &[self.clone(), rhs]).rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate().take(rank) {
            x[p] = matrix.get(i, self.cols);
        }
        Some(x)
    }
}
