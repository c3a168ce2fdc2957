use serde::Serialize;

use crate::complex::{Face, SimplicialComplex};
use crate::linalg::Field;

/// A monomial stored as the non-decreasing list of its variables (with repetition).
///
/// Sorting these lists ascending puts monomials in descending lexicographic order of their
/// exponent vectors (`x_0^i` first).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Monomial(Vec<usize>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn variable(v: usize) -> Self {
        Monomial(vec![v])
    }

    pub fn from_variables(mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        Monomial(vars)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn variables(&self) -> &[usize] {
        &self.0
    }

    pub fn support(&self) -> Face {
        Face::new(self.0.clone())
    }

    pub fn exponents(&self, n: usize) -> Vec<u32> {
        let mut e = vec![0; n];
        for &v in &self.0 {
            e[v] += 1;
        }
        e
    }

    pub fn times_variable(&self, v: usize) -> Monomial {
        let pos = self.0.partition_point(|&w| w <= v);
        let mut vars = self.0.clone();
        vars.insert(pos, v);
        Monomial(vars)
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        let mut vars = self.0.clone();
        vars.extend_from_slice(&other.0);
        Monomial::from_variables(vars)
    }

    /// Whether the monomial survives in the face ring (its support is a face).
    pub fn is_standard(&self, k: &SimplicialComplex) -> bool {
        k.contains_face(&self.support())
    }

    pub fn render(&self, k: &SimplicialComplex) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let v = self.0[i];
            let run = self.0[i..].iter().take_while(|&&w| w == v).count();
            let name = format!("x{}", k.label(v));
            parts.push(if run == 1 {
                name
            } else {
                format!("{name}^{run}")
            });
            i += run;
        }
        parts.join("*")
    }
}

/// The degree-`i` monomials of `k[Δ]`: those whose support is a face, in lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    degree: usize,
    monomials: Vec<Monomial>,
}

fn multisets(
    pool: &[usize],
    size: usize,
    start: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if size == 0 {
        out.push(cur.clone());
        return;
    }
    for k in start..pool.len() {
        cur.push(pool[k]);
        multisets(pool, size - 1, k, cur, out);
        cur.pop();
    }
}

impl MonomialBasis {
    pub fn new(k: &SimplicialComplex, degree: usize) -> Self {
        let mut monomials = Vec::new();
        if degree == 0 {
            if !k.is_void() {
                monomials.push(Monomial::one());
            }
        } else {
            for s in 1..=degree.min(k.krull_dim()) {
                for face in k.faces_of_size(s) {
                    let mut extra = Vec::new();
                    multisets(face.vertices(), degree - s, 0, &mut Vec::new(), &mut extra);
                    for e in extra {
                        let mut vars = face.vertices().to_vec();
                        vars.extend(e);
                        monomials.push(Monomial::from_variables(vars));
                    }
                }
            }
        }
        monomials.sort();
        MonomialBasis { degree, monomials }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn len(&self) -> usize {
        self.monomials.len()
    }
    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }
    pub fn get(&self, idx: usize) -> &Monomial {
        &self.monomials[idx]
    }
    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.monomials.binary_search(m).ok()
    }
}

/// `Σ c_v x_v` with a dense coefficient vector over the vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm<F: Field> {
    coeffs: Vec<F::Elem>,
}

impl<F: Field> LinearForm<F> {
    pub fn new(coeffs: Vec<F::Elem>) -> Self {
        LinearForm { coeffs }
    }

    pub fn zero(field: &F, n: usize) -> Self {
        LinearForm {
            coeffs: vec![field.zero(); n],
        }
    }

    pub fn variable(field: &F, n: usize, v: usize) -> Self {
        let mut coeffs = vec![field.zero(); n];
        coeffs[v] = field.one();
        LinearForm { coeffs }
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }
    pub fn coeff(&self, v: usize) -> &F::Elem {
        &self.coeffs[v]
    }
    pub fn num_vars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self, field: &F) -> bool {
        self.coeffs.iter().all(|c| field.is_zero(c))
    }

    /// `a * self + b * other`
    pub fn combine(&self, field: &F, a: &F::Elem, other: &Self, b: &F::Elem) -> Self {
        assert_eq!(
            self.coeffs.len(),
            other.coeffs.len(),
            "forms in different rings"
        );
        LinearForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(x, y)| field.add(&field.mul(a, x), &field.mul(b, y)))
                .collect(),
        }
    }

    pub fn scale(&self, field: &F, a: &F::Elem) -> Self {
        LinearForm {
            coeffs: self.coeffs.iter().map(|x| field.mul(a, x)).collect(),
        }
    }

    /// Nonzero terms as `(variable, coefficient)`.
    pub fn terms<'a>(&'a self, field: &'a F) -> impl Iterator<Item = (usize, &'a F::Elem)> + 'a {
        self.coeffs
            .iter()
            .enumerate()
            .filter(move |(_, c)| !field.is_zero(c))
    }

    pub fn render(&self, field: &F, k: &SimplicialComplex) -> String {
        let terms: Vec<String> = self
            .terms(field)
            .map(|(v, c)| format!("{}*x{}", field.render(c), k.label(v)))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}
