//! Reduced simplicial homology, homology of the pairs `(Δ, cost τ)`, classification of
//! complexes, and graded dimensions of the local cohomology of the face ring.

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{ComplexError, Face, SimplicialComplex};
use crate::linalg::{ExactMatrix, Field, SparseRow};
use crate::util::binomial_i;

/// Reduced Betti numbers `β_{-1}, ..., β_{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BettiVector(pub Vec<u64>);

impl BettiVector {
    /// `β_i` for `i >= -1`; zero beyond the stored range.
    pub fn get(&self, i: isize) -> u64 {
        if i < -1 {
            return 0;
        }
        self.0.get((i + 1) as usize).copied().unwrap_or(0)
    }
}

/// Dimensions of the augmented relative chain complex of `(Δ, cost τ)`: faces containing `τ`,
/// with boundary terms that delete a vertex of `τ` dropped. Entry `s` is the homology in
/// face-size `s`, that is in dimension `s - 1`.
fn relative_homology_by_size<F: Field>(field: &F, k: &SimplicialComplex, tau: &Face) -> Vec<u64> {
    let d = k.krull_dim();
    if k.is_void() {
        return vec![0; d + 1];
    }
    let chains: Vec<Vec<&Face>> = (0..=d)
        .map(|s| {
            k.faces_of_size(s)
                .iter()
                .filter(|f| tau.is_subset(f))
                .collect()
        })
        .collect();
    // rank of the boundary from size s to size s - 1; zero for s = 0
    let mut ranks = vec![0usize; d + 2];
    for s in 1..=d {
        if chains[s].is_empty() || chains[s - 1].is_empty() {
            continue;
        }
        let target = &chains[s - 1];
        let rows: Vec<SparseRow<F::Elem>> = chains[s]
            .iter()
            .map(|f| {
                let mut row: SparseRow<F::Elem> = Vec::with_capacity(s);
                for (pos, &v) in f.vertices().iter().enumerate() {
                    if tau.contains(v) {
                        continue;
                    }
                    let g = f.without(v);
                    let col = target.binary_search(&&g).expect("boundary face is listed");
                    let sign = if pos % 2 == 0 {
                        field.one()
                    } else {
                        field.neg(&field.one())
                    };
                    row.push((col, sign));
                }
                row.sort_by_key(|e| e.0);
                row
            })
            .collect();
        ranks[s] = ExactMatrix::from_sparse_rows(field, target.len(), rows).rank();
    }
    (0..=d)
        .map(|s| (chains[s].len() - ranks[s] - ranks[s + 1]) as u64)
        .collect()
}

/// Reduced Betti numbers over `field`.
pub fn betti<F: Field>(field: &F, k: &SimplicialComplex) -> BettiVector {
    BettiVector(relative_homology_by_size(field, k, &Face::empty()))
}

/// `dim H^i(Δ, cost τ)`. For `τ = ∅` this is the reduced Betti number `β_i`.
pub fn relative_cohomology_dim<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    tau: &Face,
    i: isize,
) -> Result<u64, ComplexError> {
    Ok(BettiVector(relative_cohomology_dims(field, k, tau)?).get(i))
}

/// `dim H^i(Δ, cost τ)` for `i = -1, ..., d-1`.
pub fn relative_cohomology_dims<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    tau: &Face,
) -> Result<Vec<u64>, ComplexError> {
    if !k.contains_face(tau) {
        let labels: Vec<String> = tau.vertices().iter().map(|v| v.to_string()).collect();
        return Err(ComplexError::NotAFace(labels.join(",")));
    }
    Ok(relative_homology_by_size(field, k, tau))
}

/// Where a classification property first fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub property: &'static str,
    pub face: Vec<String>,
    /// Homology degree of the offending link, when the failure is homological.
    pub degree: Option<isize>,
    pub observed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub field: String,
    pub dim: isize,
    pub is_pure: bool,
    pub is_connected: bool,
    pub is_strongly_connected: bool,
    pub is_buchsbaum: bool,
    pub is_homology_manifold: bool,
    pub is_homology_sphere: bool,
    pub is_orientable: bool,
    pub betti: BettiVector,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// First failure of the Buchsbaum or manifold condition at a single link.
fn link_failure(
    k: &SimplicialComplex,
    tau: &Face,
    link_betti: &BettiVector,
    d: usize,
) -> (Option<Witness>, Option<Witness>) {
    let top = d as isize - tau.len() as isize - 1;
    let labels = k.face_labels(tau);
    let low = (-1..top)
        .find(|&i| link_betti.get(i) != 0)
        .map(|i| Witness {
            property: "buchsbaum",
            face: labels.clone(),
            degree: Some(i),
            observed: link_betti.get(i),
        });
    let manifold = (link_betti.get(top) != 1).then(|| Witness {
        property: "homology-manifold",
        face: labels,
        degree: Some(top),
        observed: link_betti.get(top),
    });
    (low, manifold)
}

/// Purity, connectivity, Buchsbaum / manifold / sphere tests and orientability over `field`.
pub fn classify<F: Field>(field: &F, k: &SimplicialComplex) -> ClassificationReport {
    let d = k.krull_dim();
    let betti_k = betti(field, k);
    let is_pure = k.is_pure();
    let is_connected = k.is_connected();

    let faces: Vec<&Face> = k.faces().filter(|f| !f.is_empty()).collect();
    let failures: Vec<(Option<Witness>, Option<Witness>)> = faces
        .par_iter()
        .map(|tau| {
            let lk = k.link(tau).expect("face of k");
            link_failure(k, tau, &betti(field, &lk), d)
        })
        .collect();
    let buchsbaum_witness = failures.iter().find_map(|f| f.0.clone());
    let manifold_witness = failures.iter().find_map(|f| f.1.clone());

    let purity_witness = (!is_pure).then(|| {
        let f = k
            .facets()
            .iter()
            .find(|f| f.len() != d)
            .expect("impure complex has a short facet");
        Witness {
            property: "pure",
            face: k.face_labels(f),
            degree: None,
            observed: f.len() as u64,
        }
    });
    let is_buchsbaum = is_pure && buchsbaum_witness.is_none();
    let is_homology_manifold = is_buchsbaum && manifold_witness.is_none();

    let (low, top) = link_failure(k, &Face::empty(), &betti_k, d);
    let sphere_witness = low.or(top).map(|mut w| {
        w.property = "homology-sphere";
        w
    });
    let is_homology_sphere = is_homology_manifold && sphere_witness.is_none();
    let is_orientable = is_homology_manifold && is_connected && betti_k.get(d as isize - 1) == 1;

    let witness = purity_witness
        .or(if is_pure { buchsbaum_witness } else { None })
        .or(if is_buchsbaum { manifold_witness } else { None })
        .or(if is_homology_manifold {
            sphere_witness
        } else {
            None
        });

    ClassificationReport {
        field: field.spec().to_string(),
        dim: k.dim(),
        is_pure,
        is_connected,
        is_strongly_connected: k.is_strongly_connected(),
        is_buchsbaum,
        is_homology_manifold,
        is_homology_sphere,
        is_orientable,
        betti: betti_k,
        witness,
    }
}

/// Relative cohomology of one pair, as stored in a [`LocalCohomologyTable`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceCohomology {
    pub face: Vec<String>,
    /// `dim H^i(Δ, cost σ)` for `i = -1, ..., d-1`.
    pub dims: Vec<u64>,
}

/// `dim H^j(k[Δ])_m` for `j = 0..=d` and `m` in a window, from the Hochster–Gräbe formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalCohomologyTable {
    pub d: usize,
    pub window: (i64, i64),
    /// `entries[j][m - window.0]`.
    pub entries: Vec<Vec<u128>>,
    pub faces: Vec<FaceCohomology>,
    #[serde(skip)]
    sums_by_size: Vec<Vec<u64>>,
}

/// Number of ways to write `n` as an ordered sum of `k` positive integers.
fn compositions(n: i64, k: usize) -> u128 {
    if k == 0 {
        return (n == 0) as u128;
    }
    binomial_i(n - 1, k as i64 - 1)
}

impl LocalCohomologyTable {
    /// `dim H^j(k[Δ])_m` for any `m`: zero for `m > 0`.
    pub fn dim(&self, j: usize, m: i64) -> u128 {
        if j == 0 || j > self.d || m > 0 {
            return 0;
        }
        let i = j - 1;
        self.sums_by_size
            .iter()
            .enumerate()
            .map(|(size, sums)| compositions(-m, size) * sums[i + 1] as u128)
            .sum()
    }
}

pub fn default_window(d: usize) -> (i64, i64) {
    (-(d as i64) - 2, 0)
}

/// Local cohomology dimensions over `window` (inclusive).
pub fn local_cohomology_dims<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    window: (i64, i64),
) -> LocalCohomologyTable {
    let d = k.krull_dim();
    let faces: Vec<&Face> = k.faces().collect();
    let dims: Vec<Vec<u64>> = faces
        .par_iter()
        .map(|f| relative_homology_by_size(field, k, f))
        .collect();
    let mut sums_by_size = vec![vec![0u64; d + 1]; d + 1];
    for (f, v) in faces.iter().zip(&dims) {
        for (i, x) in v.iter().enumerate() {
            sums_by_size[f.len()][i] += x;
        }
    }
    let mut table = LocalCohomologyTable {
        d,
        window,
        entries: Vec::new(),
        faces: faces
            .iter()
            .zip(dims)
            .map(|(f, dims)| FaceCohomology {
                face: k.face_labels(f),
                dims,
            })
            .collect(),
        sums_by_size,
    };
    table.entries = (0..=d)
        .map(|j| (window.0..=window.1).map(|m| table.dim(j, m)).collect())
        .collect();
    table
}
