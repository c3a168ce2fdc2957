//! Finite abstract simplicial complexes with string vertex labels and dense integer ids.
//!
//! A complex is immutable once built. Faces of every size are enumerated on first use and
//! cached; the cache fill is idempotent and safe to race from several threads.

mod generate;
mod parse;

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::util::binomial;

pub use generate::{
    cross_polytope_boundary, generate, join, simplex_boundary, suspension, Generator,
};
pub use parse::parse_complex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("document contains no facets")]
    Empty,
    #[error("line {line}: vertex `{label}` repeated within one facet")]
    RepeatedLabel { line: usize, label: String },
    #[error("vertex label `{0}` used twice")]
    DuplicateLabel(String),
    #[error("vertex id {id} out of range for {n} vertices")]
    VertexOutOfRange { id: usize, n: usize },
    #[error("facet lists vertex id {0} twice")]
    RepeatedVertex(usize),
    #[error("vertex `{0}` lies in no facet")]
    UnusedVertex(String),
    #[error("{{{0}}} is not a face of the complex")]
    NotAFace(String),
    #[error("generator needs d >= 1, got {0}")]
    BadDimension(usize),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

/// A face as a strictly increasing list of vertex ids. The empty face is allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Face(Vec<usize>);

impl Face {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Face(vertices)
    }

    pub fn empty() -> Self {
        Face(Vec::new())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    pub fn union(&self, other: &Face) -> Face {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Face::new(v)
    }

    pub fn difference(&self, other: &Face) -> Face {
        Face(
            self.0
                .iter()
                .copied()
                .filter(|v| !other.contains(*v))
                .collect(),
        )
    }

    pub fn with(&self, v: usize) -> Face {
        let mut w = self.0.clone();
        w.push(v);
        Face::new(w)
    }

    pub fn without(&self, v: usize) -> Face {
        Face(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    /// All subsets with exactly `k` elements, in lexicographic order.
    pub fn subsets(&self, k: usize) -> Vec<Face> {
        let n = self.0.len();
        if k > n {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(Face(idx.iter().map(|&i| self.0[i]).collect()));
            let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
                break;
            };
            idx[pos] += 1;
            for j in pos + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
        out
    }
}

impl From<Vec<usize>> for Face {
    fn from(v: Vec<usize>) -> Self {
        Face::new(v)
    }
}

/// Face counts `f_{-1}, f_0, ..., f_{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<u64>);

/// `h_0, ..., h_d`; entries can be negative for non-Cohen-Macaulay complexes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HVector(pub Vec<i64>);

impl FVector {
    /// `h_k = sum_{i<=k} (-1)^(k-i) C(d-i, k-i) f_{i-1}` with `d = len - 1`.
    pub fn to_h(&self) -> HVector {
        let d = self.0.len() - 1;
        let h = (0..=d)
            .map(|k| {
                (0..=k)
                    .map(|i| {
                        let sign = if (k - i) % 2 == 0 { 1i128 } else { -1 };
                        sign * binomial((d - i) as u64, (k - i) as u64) as i128 * self.0[i] as i128
                    })
                    .sum::<i128>() as i64
            })
            .collect();
        HVector(h)
    }
}

impl HVector {
    /// `f_{k-1} = sum_{i<=k} C(d-i, k-i) h_i`.
    pub fn to_f(&self) -> FVector {
        let d = self.0.len() - 1;
        let f = (0..=d)
            .map(|k| {
                (0..=k)
                    .map(|i| binomial((d - i) as u64, (k - i) as u64) as i128 * self.0[i] as i128)
                    .sum::<i128>() as u64
            })
            .collect();
        FVector(f)
    }
}

#[derive(Clone, Debug)]
struct FaceLattice {
    by_size: Vec<Vec<Face>>,
    set: HashSet<Face>,
}

/// A finite simplicial complex. Vertex ids are `0..n` and index `labels`; facets are pairwise
/// incomparable and every vertex lies in some facet.
///
/// The void complex (no faces at all) and the complex `{∅}` are distinct: the first has no
/// facets, the second has the single facet `∅`.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    facets: Vec<Face>,
    lattice: OnceLock<FaceLattice>,
}

fn maximal_faces(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    faces.dedup();
    let mut kept: Vec<Face> = Vec::new();
    for f in faces {
        if !kept.iter().any(|g| f.is_subset(g)) {
            kept.push(f);
        }
    }
    kept.sort();
    kept
}

impl SimplicialComplex {
    /// Builds a complex from labels and facet vertex ids. Non-maximal facets are absorbed.
    pub fn new(labels: Vec<String>, facets: Vec<Vec<usize>>) -> Result<Self, ComplexError> {
        let n = labels.len();
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(ComplexError::DuplicateLabel(l.clone()));
            }
        }
        let mut faces = Vec::with_capacity(facets.len());
        let mut used = vec![false; n];
        for f in facets {
            let face = Face::new(f.clone());
            if face.len() != f.len() {
                let mut s = f.clone();
                s.sort_unstable();
                let dup = s
                    .windows(2)
                    .find(|w| w[0] == w[1])
                    .map(|w| w[0])
                    .unwrap_or(0);
                return Err(ComplexError::RepeatedVertex(dup));
            }
            for &v in face.vertices() {
                if v >= n {
                    return Err(ComplexError::VertexOutOfRange { id: v, n });
                }
                used[v] = true;
            }
            faces.push(face);
        }
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(ComplexError::UnusedVertex(labels[v].clone()));
        }
        Ok(SimplicialComplex {
            labels,
            facets: maximal_faces(faces),
            lattice: OnceLock::new(),
        })
    }

    /// Builds from facets given by label; ids follow first appearance.
    pub fn from_labeled_facets<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<Self, ComplexError> {
        let mut labels: Vec<String> = Vec::new();
        let mut ids: HashMap<String, usize> = HashMap::new();
        let mut out = Vec::with_capacity(facets.len());
        for f in facets {
            let mut face = Vec::with_capacity(f.len());
            for l in f {
                let l = l.as_ref();
                let id = *ids.entry(l.to_string()).or_insert_with(|| {
                    labels.push(l.to_string());
                    labels.len() - 1
                });
                face.push(id);
            }
            out.push(face);
        }
        Self::new(labels, out)
    }

    /// The complex with no faces at all.
    pub fn void() -> Self {
        SimplicialComplex {
            labels: Vec::new(),
            facets: Vec::new(),
            lattice: OnceLock::new(),
        }
    }

    /// The complex whose only face is the empty face.
    pub fn empty_face() -> Self {
        SimplicialComplex {
            labels: Vec::new(),
            facets: vec![Face::empty()],
            lattice: OnceLock::new(),
        }
    }

    /// Full simplex on the given labels.
    pub fn simplex<S: AsRef<str>>(labels: &[S]) -> Self {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let facet = Face((0..labels.len()).collect());
        SimplicialComplex {
            labels,
            facets: vec![facet],
            lattice: OnceLock::new(),
        }
    }

    /// Sub-complex generated by `facets` (ids of `self`), relabelled onto the vertices it uses.
    /// Returns the complex and, for each new id, the id it had in `self`.
    fn induced(&self, facets: Vec<Face>) -> (SimplicialComplex, Vec<usize>) {
        let used: BTreeSet<usize> = facets
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .collect();
        let old_ids: Vec<usize> = used.into_iter().collect();
        let mut new_id = vec![usize::MAX; self.labels.len()];
        for (k, &v) in old_ids.iter().enumerate() {
            new_id[v] = k;
        }
        let labels = old_ids.iter().map(|&v| self.labels[v].clone()).collect();
        let faces = facets
            .into_iter()
            .map(|f| Face::new(f.vertices().iter().map(|&v| new_id[v]).collect()))
            .collect();
        (
            SimplicialComplex {
                labels,
                facets: maximal_faces(faces),
                lattice: OnceLock::new(),
            },
            old_ids,
        )
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }
    pub fn vertex_id(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
    pub fn facets(&self) -> &[Face] {
        &self.facets
    }
    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// `d`: the largest facet cardinality (the Krull dimension of the face ring).
    pub fn krull_dim(&self) -> usize {
        self.facets.iter().map(|f| f.len()).max().unwrap_or(0)
    }

    /// `d - 1`; the void complex and `{∅}` both report `-1`.
    pub fn dim(&self) -> isize {
        self.krull_dim() as isize - 1
    }

    pub fn is_pure(&self) -> bool {
        let d = self.krull_dim();
        self.facets.iter().all(|f| f.len() == d)
    }

    fn lattice(&self) -> &FaceLattice {
        self.lattice.get_or_init(|| {
            let d = self.krull_dim();
            let mut by_size: Vec<BTreeSet<Face>> = vec![BTreeSet::new(); d + 1];
            for f in &self.facets {
                for (k, faces) in by_size.iter_mut().enumerate().take(f.len() + 1) {
                    faces.extend(f.subsets(k));
                }
            }
            let by_size: Vec<Vec<Face>> = by_size
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect();
            let set = by_size.iter().flatten().cloned().collect();
            FaceLattice { by_size, set }
        })
    }

    /// Faces with exactly `k` vertices, sorted lexicographically.
    pub fn faces_of_size(&self, k: usize) -> &[Face] {
        self.lattice()
            .by_size
            .get(k)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    /// Every face, by increasing size.
    pub fn faces(&self) -> impl Iterator<Item = &Face> {
        self.lattice().by_size.iter().flatten()
    }

    pub fn num_faces(&self) -> usize {
        self.lattice().set.len()
    }

    pub fn contains_face(&self, face: &Face) -> bool {
        self.lattice().set.contains(face)
    }

    pub fn is_face(&self, vertices: &[usize]) -> bool {
        self.contains_face(&Face::new(vertices.to_vec()))
    }

    /// Resolves a face given by labels.
    pub fn face_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Face, ComplexError> {
        let ids = labels
            .iter()
            .map(|l| {
                self.vertex_id(l.as_ref())
                    .ok_or_else(|| ComplexError::NotAFace(join_labels(labels)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let face = Face::new(ids);
        if !self.contains_face(&face) {
            return Err(ComplexError::NotAFace(join_labels(labels)));
        }
        Ok(face)
    }

    pub fn face_labels(&self, face: &Face) -> Vec<String> {
        face.vertices()
            .iter()
            .map(|&v| self.labels[v].clone())
            .collect()
    }

    /// All faces as sorted label sets; the id-free view used to compare complexes.
    pub fn labeled_faces(&self) -> BTreeSet<Vec<String>> {
        self.faces()
            .map(|f| {
                let mut l = self.face_labels(f);
                l.sort();
                l
            })
            .collect()
    }

    fn require_face(&self, tau: &Face) -> Result<(), ComplexError> {
        if self.contains_face(tau) {
            Ok(())
        } else {
            Err(ComplexError::NotAFace(join_labels(
                &tau.vertices()
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>(),
            )))
        }
    }

    /// `lk τ = {σ : σ ∩ τ = ∅, σ ∪ τ ∈ K}` on its own vertex set.
    pub fn link(&self, tau: &Face) -> Result<SimplicialComplex, ComplexError> {
        self.link_with_map(tau).map(|(k, _)| k)
    }

    /// The link together with the map from link vertex ids to ids of `self`.
    pub fn link_with_map(
        &self,
        tau: &Face,
    ) -> Result<(SimplicialComplex, Vec<usize>), ComplexError> {
        self.require_face(tau)?;
        let facets = self
            .facets
            .iter()
            .filter(|f| tau.is_subset(f))
            .map(|f| f.difference(tau))
            .collect();
        Ok(self.induced(facets))
    }

    /// `st τ = {σ : σ ∪ τ ∈ K}`.
    pub fn star(&self, tau: &Face) -> Result<SimplicialComplex, ComplexError> {
        self.require_face(tau)?;
        let facets = self
            .facets
            .iter()
            .filter(|f| tau.is_subset(f))
            .cloned()
            .collect();
        Ok(self.induced(facets).0)
    }

    /// `cost τ = {σ ∈ K : σ ⊉ τ}`; for `τ = ∅` this is the void complex.
    pub fn contrastar(&self, tau: &Face) -> Result<SimplicialComplex, ComplexError> {
        self.require_face(tau)?;
        if tau.is_empty() {
            return Ok(SimplicialComplex::void());
        }
        let mut candidates = Vec::new();
        for f in &self.facets {
            if tau.is_subset(f) {
                candidates.extend(tau.vertices().iter().map(|&v| f.without(v)));
            } else {
                candidates.push(f.clone());
            }
        }
        let (mut k, _) = self.induced(candidates);
        if k.facets == [Face::empty()] {
            // cost of a vertex-only complex: only the empty face survives
            k.labels.clear();
        }
        Ok(k)
    }

    pub fn f_vector(&self) -> FVector {
        if self.is_void() {
            return FVector(vec![0]);
        }
        FVector(
            self.lattice()
                .by_size
                .iter()
                .map(|s| s.len() as u64)
                .collect(),
        )
    }

    pub fn h_vector(&self) -> HVector {
        self.f_vector().to_h()
    }

    /// Connected components of the 1-skeleton, as sorted vertex lists.
    pub fn vertex_components(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut adj = vec![Vec::new(); n];
        for e in self.faces_of_size(2) {
            let (a, b) = (e.vertices()[0], e.vertices()[1]);
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut members = vec![s];
            comp[s] = out.len();
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = out.len();
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Connected as a topological space (the 1-skeleton is connected). Complexes with no
    /// vertices count as not connected.
    pub fn is_connected(&self) -> bool {
        self.num_vertices() > 0 && self.vertex_components().len() == 1
    }

    /// Facets connected through shared codimension-one faces (ridges).
    pub fn is_strongly_connected(&self) -> bool {
        let m = self.facets.len();
        if m == 0 {
            return false;
        }
        let mut by_ridge: HashMap<Face, Vec<usize>> = HashMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            for &v in f.vertices() {
                by_ridge.entry(f.without(v)).or_default().push(i);
            }
        }
        let mut seen = vec![false; m];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            for &v in self.facets[i].vertices() {
                for &j in &by_ridge[&self.facets[i].without(v)] {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Facet-list text in the `.cplx` format.
    pub fn to_cplx(&self) -> String {
        let mut s = String::new();
        for f in &self.facets {
            s.push_str(&self.face_labels(f).join(" "));
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "complex on {} vertices, dim {}, {} facets",
            self.num_vertices(),
            self.dim(),
            self.facets.len()
        )
    }
}

fn join_labels<S: AsRef<str>>(labels: &[S]) -> String {
    labels
        .iter()
        .map(|l| l.as_ref())
        .collect::<Vec<_>>()
        .join(",")
}
