//! Incremental row echelonization over sparse rows, switching to dense storage once the
//! accumulated basis is more than 30% filled.

use super::field::Field;

/// Sparse vector: `(column, value)` pairs, strictly increasing columns, no stored zeros.
pub type SparseRow<E> = Vec<(usize, E)>;

const DENSE_FILL_PERCENT: usize = 30;
const DENSE_MIN_CELLS: usize = 256;

enum Stored<E> {
    Sparse(SparseRow<E>),
    Dense(Vec<E>),
}

/// Row-space accumulator. Every stored row is monic at its pivot (leading) column.
pub(crate) struct Echelon<F: Field> {
    field: F,
    cols: usize,
    pivot_slot: Vec<Option<usize>>,
    rows: Vec<Stored<F::Elem>>,
    pivots: Vec<usize>,
    nnz: usize,
    dense: bool,
}

pub(crate) fn sparse_from_dense<F: Field>(field: &F, v: &[F::Elem]) -> SparseRow<F::Elem> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !field.is_zero(x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub(crate) fn dense_from_sparse<F: Field>(
    field: &F,
    v: &[(usize, F::Elem)],
    len: usize,
) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `w - a * p` on sparse rows.
pub(crate) fn sparse_sub_mul<F: Field>(
    field: &F,
    w: &[(usize, F::Elem)],
    a: &F::Elem,
    p: &[(usize, F::Elem)],
) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(w.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < w.len() || j < p.len() {
        let wc = w.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let pc = p.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if wc < pc {
            out.push(w[i].clone());
            i += 1;
        } else if pc < wc {
            let v = field.neg(&field.mul(a, &p[j].1));
            if !field.is_zero(&v) {
                out.push((pc, v));
            }
            j += 1;
        } else {
            let v = field.sub_mul(&w[i].1, a, &p[j].1);
            if !field.is_zero(&v) {
                out.push((wc, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn sparse_get<E>(v: &[(usize, E)], col: usize) -> Option<&E> {
    v.binary_search_by_key(&col, |e| e.0).ok().map(|k| &v[k].1)
}

impl<F: Field> Echelon<F> {
    pub(crate) fn new(field: F, cols: usize) -> Self {
        Echelon {
            field,
            cols,
            pivot_slot: vec![None; cols],
            rows: Vec::new(),
            pivots: Vec::new(),
            nnz: 0,
            dense: false,
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; returns whether it was independent of the rows already present.
    pub(crate) fn insert(&mut self, row: SparseRow<F::Elem>) -> bool {
        if self.rows.len() == self.cols {
            return false;
        }
        if self.dense {
            let w = dense_from_sparse(&self.field, &row, self.cols);
            self.insert_dense(w)
        } else {
            self.insert_sparse(row)
        }
    }

    fn insert_sparse(&mut self, mut w: SparseRow<F::Elem>) -> bool {
        let f = self.field.clone();
        loop {
            let Some((lead, a)) = w.first().cloned() else {
                return false;
            };
            match self.pivot_slot[lead] {
                Some(slot) => {
                    let Stored::Sparse(p) = &self.rows[slot] else {
                        unreachable!("dense row stored in sparse mode")
                    };
                    w = sparse_sub_mul(&f, &w, &a, p);
                }
                None => {
                    let inv = f.inv(&a);
                    for e in w.iter_mut() {
                        e.1 = f.mul(&e.1, &inv);
                    }
                    self.nnz += w.len();
                    self.store(lead, Stored::Sparse(w));
                    self.maybe_densify();
                    return true;
                }
            }
        }
    }

    fn insert_dense(&mut self, mut w: Vec<F::Elem>) -> bool {
        let f = self.field.clone();
        for c in 0..self.cols {
            if f.is_zero(&w[c]) {
                continue;
            }
            match self.pivot_slot[c] {
                Some(slot) => {
                    let Stored::Dense(p) = &self.rows[slot] else {
                        unreachable!("sparse row stored in dense mode")
                    };
                    let a = w[c].clone();
                    for j in c..self.cols {
                        if !f.is_zero(&p[j]) {
                            w[j] = f.sub_mul(&w[j], &a, &p[j]);
                        }
                    }
                }
                None => {
                    let inv = f.inv(&w[c]);
                    for x in w[c..].iter_mut() {
                        if !f.is_zero(x) {
                            *x = f.mul(x, &inv);
                        }
                    }
                    self.store(c, Stored::Dense(w));
                    return true;
                }
            }
        }
        false
    }

    fn store(&mut self, pivot: usize, row: Stored<F::Elem>) {
        self.pivot_slot[pivot] = Some(self.rows.len());
        self.pivots.push(pivot);
        self.rows.push(row);
    }

    fn maybe_densify(&mut self) {
        let cells = self.rows.len() * self.cols;
        if cells < DENSE_MIN_CELLS || self.nnz * 100 <= DENSE_FILL_PERCENT * cells {
            return;
        }
        let f = self.field.clone();
        let cols = self.cols;
        for r in self.rows.iter_mut() {
            if let Stored::Sparse(s) = r {
                *r = Stored::Dense(dense_from_sparse(&f, s, cols));
            }
        }
        self.dense = true;
    }

    /// Back-substitutes to reduced row echelon form; rows are returned sorted by pivot.
    pub(crate) fn into_rref(self) -> (Vec<SparseRow<F::Elem>>, Vec<usize>) {
        let f = self.field;
        let cols = self.cols;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&k| self.pivots[k]);
        let pivots: Vec<usize> = order.iter().map(|&k| self.pivots[k]).collect();
        let mut rows: Vec<SparseRow<F::Elem>> = Vec::with_capacity(order.len());
        let mut stored: Vec<Option<Stored<F::Elem>>> = self.rows.into_iter().map(Some).collect();
        for &k in &order {
            let row = match stored[k].take().expect("row consumed twice") {
                Stored::Sparse(s) => s,
                Stored::Dense(d) => sparse_from_dense(&f, &d),
            };
            rows.push(row);
        }
        let is_pivot = {
            let mut m = vec![usize::MAX; cols];
            for (i, &p) in pivots.iter().enumerate() {
                m[p] = i;
            }
            m
        };
        // Bottom-up: rows below are already fully reduced and vanish on every other pivot column.
        for i in (0..rows.len()).rev() {
            let targets: Vec<(usize, F::Elem)> = rows[i]
                .iter()
                .filter(|(c, _)| *c != pivots[i] && is_pivot[*c] != usize::MAX)
                .cloned()
                .collect();
            if targets.is_empty() {
                continue;
            }
            let mut w = std::mem::take(&mut rows[i]);
            for (c, a) in targets {
                let q = is_pivot[c];
                debug_assert!(q > i);
                w = sparse_sub_mul(&f, &w, &a, &rows[q]);
            }
            debug_assert!(sparse_get(&w, pivots[i]).is_some());
            rows[i] = w;
        }
        (rows, pivots)
    }
}
