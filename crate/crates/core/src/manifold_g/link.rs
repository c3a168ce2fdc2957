use rayon::prelude::*;

use super::ManifoldError;
use crate::complex::{Face, SimplicialComplex};
use crate::face_ring::{normalize_lsop, ArtinianReduction, LinearForm, Lsop, Monomial};
use crate::linalg::{ExactMatrix, Field};
use crate::report::{ReportInputs, Verdict, VerificationReport};

/// The link of `v` reduced by `Θ' = (θ'_2, ..., θ'_d)`, where `Θ` is normalized on an ordered
/// facet `σ = (v, v_2, ..., v_d)` and `θ'_i` keeps only the terms of `θ_i` on link vertices.
#[derive(Debug)]
pub struct LinkReduction<F: Field> {
    pub vertex: usize,
    pub sigma: Vec<usize>,
    pub normalized: Lsop<F>,
    pub link: ArtinianReduction<F>,
    /// Parent id of each link vertex.
    pub link_to_parent: Vec<usize>,
    /// `θ'_1, ..., θ'_d` over the link vertices; only `θ'_2..` form the l.s.o.p.
    pub theta_prime: Vec<LinearForm<F>>,
    parent_to_link: Vec<Option<usize>>,
}

/// Builds the link reduction of `v`. Without `sigma`, the first maximal facet containing `v`
/// is used; either way `v` is moved to the front.
pub fn link_reduction<F: Field>(
    parent: &ArtinianReduction<F>,
    v: usize,
    sigma: Option<&[usize]>,
) -> Result<LinkReduction<F>, ManifoldError> {
    let k = parent.complex();
    let field = parent.field();
    let d = k.krull_dim();
    if v >= k.num_vertices() {
        return Err(ManifoldError::NoSuchVertex(v.to_string()));
    }
    let facet: Vec<usize> = match sigma {
        Some(s) => s.to_vec(),
        None => k
            .facets()
            .iter()
            .find(|f| f.len() == d && f.contains(v))
            .map(|f| f.vertices().to_vec())
            .ok_or_else(|| ManifoldError::BadFacet(vec![k.label(v).to_string()]))?,
    };
    if facet.len() != d || !facet.contains(&v) || !k.is_face(&facet) {
        return Err(ManifoldError::BadFacet(
            facet.iter().map(|&u| k.label(u).to_string()).collect(),
        ));
    }
    let mut ordered = vec![v];
    ordered.extend(facet.iter().copied().filter(|&u| u != v));
    let normalized = normalize_lsop(field, k, parent.lsop(), &ordered)?;

    let (lk, link_to_parent) = k.link_with_map(&Face::new(vec![v]))?;
    let mut parent_to_link = vec![None; k.num_vertices()];
    for (local, &p) in link_to_parent.iter().enumerate() {
        parent_to_link[p] = Some(local);
    }
    let theta_prime: Vec<LinearForm<F>> = normalized
        .forms
        .iter()
        .map(|t| LinearForm::new(link_to_parent.iter().map(|&p| t.coeff(p).clone()).collect()))
        .collect();
    let link = ArtinianReduction::new(field, &lk, Lsop::new(theta_prime[1..].to_vec())).map_err(
        |source| ManifoldError::LinkLsop {
            vertex: k.label(v).to_string(),
            source,
        },
    )?;
    Ok(LinkReduction {
        vertex: v,
        sigma: ordered,
        normalized,
        link,
        link_to_parent,
        theta_prime,
        parent_to_link,
    })
}

impl<F: Field> LinkReduction<F> {
    /// `-θ'_1`, through which `x_v` acts on `k(lk v)`.
    pub fn x_v_action(&self) -> LinearForm<F> {
        let f = self.link.field();
        self.theta_prime[0].scale(f, &f.neg(&f.one()))
    }

    fn to_parent(&self, m: &Monomial) -> Monomial {
        Monomial::from_variables(
            m.variables()
                .iter()
                .map(|&u| self.link_to_parent[u])
                .collect(),
        )
    }

    /// `φ` on an element of `k[lk v]_i` given in the link's monomial basis; lands in `k(Δ)_{i+1}`.
    pub fn phi_ambient(
        &self,
        parent: &ArtinianReduction<F>,
        i: usize,
        y: &[F::Elem],
    ) -> Vec<F::Elem> {
        let f = parent.field();
        let source = self.link.ambient_basis(i);
        let target = parent.ambient_basis(i + 1);
        let mut out = vec![f.zero(); target.len()];
        for (idx, c) in y.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let p = self.to_parent(source.get(idx)).times_variable(self.vertex);
            let pos = target
                .index_of(&p)
                .expect("a link face joined with v is a face");
            out[pos] = f.add(&out[pos], c);
        }
        parent.project(i + 1, &out)
    }

    /// Matrix of `φ: k(lk v)_i -> k(Δ)_{i+1}` in coset coordinates.
    pub fn phi(&self, parent: &ArtinianReduction<F>, i: usize) -> ExactMatrix<F> {
        let f = parent.field();
        let columns: Vec<Vec<F::Elem>> = (0..self.link.dim(i))
            .map(|c| {
                let mut e = vec![f.zero(); self.link.dim(i)];
                e[c] = f.one();
                self.phi_ambient(parent, i, &self.link.lift(i, &e))
            })
            .collect();
        ExactMatrix::from_columns(f, parent.dim(i + 1), &columns)
    }

    /// The inverse recipe applied to a representative `z` of `k(Δ)_i`: replace `x_v` by `-θ'_1`,
    /// drop monomials with a variable outside the link, and read the result in `k(lk v)_i`.
    pub fn psi(&self, parent: &ArtinianReduction<F>, i: usize, z: &[F::Elem]) -> Vec<F::Elem> {
        let f = parent.field();
        let action = self.x_v_action();
        let ambient = parent.lift(i, z);
        let basis = parent.ambient_basis(i);
        let mut out = vec![f.zero(); self.link.ambient_basis(i).len()];
        for (idx, c) in ambient.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let m = basis.get(idx);
            let power = m.variables().iter().filter(|&&u| u == self.vertex).count();
            let rest: Option<Vec<usize>> = m
                .variables()
                .iter()
                .filter(|&&u| u != self.vertex)
                .map(|&u| self.parent_to_link[u])
                .collect();
            let Some(rest) = rest else { continue };
            let rest = Monomial::from_variables(rest);
            let start = self.link.ambient_basis(rest.degree());
            let Some(pos) = start.index_of(&rest) else {
                continue;
            };
            let mut y = vec![f.zero(); start.len()];
            y[pos] = c.clone();
            for step in 0..power {
                y = self
                    .link
                    .multiply_ambient(&action, rest.degree() + step, &y);
            }
            for (o, a) in out.iter_mut().zip(&y) {
                *o = f.add(o, a);
            }
        }
        self.link.project(i, &out)
    }
}

/// Dimensions of `x_v k(Δ)_{i-1}`, the principal ideal `(x_v)` in degrees `1..=d`.
pub fn principal_ideal_dims<F: Field>(parent: &ArtinianReduction<F>, v: usize) -> Vec<usize> {
    (0..parent.krull_dim())
        .map(|i| parent.variable_map(v, i).rank())
        .collect()
}

fn unit<F: Field>(f: &F, n: usize, c: usize) -> Vec<F::Elem> {
    let mut e = vec![f.zero(); n];
    e[c] = f.one();
    e
}

fn is_zero<F: Field>(f: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| f.is_zero(x))
}

/// Checks that `φ` is a well-defined degree-one isomorphism onto `(x_v)`, that it intertwines
/// `-θ'_1` with `x_v`, and that the substitution recipe inverts it.
pub fn verify_link_isomorphism<F: Field>(
    parent: &ArtinianReduction<F>,
    l: &LinkReduction<F>,
    gate: Verdict,
    inputs: ReportInputs,
) -> VerificationReport {
    let f = parent.field();
    let k: &SimplicialComplex = parent.complex();
    let d = parent.krull_dim();
    let tag = format!("v={}", k.label(l.vertex));
    let mut report = VerificationReport::new("link-isomorphism", inputs);
    let phis: Vec<ExactMatrix<F>> = (0..=d).map(|i| l.phi(parent, i)).collect();
    let action = l.x_v_action();

    report.check(
        format!("{tag} graded dims of (x_v) in degrees 1..{d}"),
        (0..d).map(|i| l.link.dim(i)).collect::<Vec<_>>(),
        principal_ideal_dims(parent, l.vertex),
    );
    for i in 0..=d {
        let xv = parent.variable_map(l.vertex, i);
        report.check(
            format!("{tag} deg {i}: rank phi"),
            l.link.dim(i),
            phis[i].rank(),
        );
        report.check(
            format!("{tag} deg {i}: image phi = x_v k(Δ)_{i}"),
            true,
            xv.image_basis().basis_dense() == phis[i].image_basis().basis_dense(),
        );

        let well_defined = i == 0
            || l.theta_prime[1..].iter().all(|t| {
                (0..l.link.ambient_basis(i - 1).len()).all(|m| {
                    let y = l.link.multiply_ambient(
                        t,
                        i - 1,
                        &unit(f, l.link.ambient_basis(i - 1).len(), m),
                    );
                    is_zero(f, &l.phi_ambient(parent, i, &y))
                })
            });
        report.check(format!("{tag} deg {i}: phi kills Θ'"), true, well_defined);

        if i < d {
            let lhs = parent.variable_map(l.vertex, i + 1).mul(&phis[i]);
            let rhs = phis[i + 1].mul(&l.link.multiplication_map(&action, i));
            report.check(
                format!("{tag} deg {i}: x_v acts as -θ'_1"),
                true,
                lhs == rhs,
            );

            let forward = (0..parent.dim(i)).into_par_iter().all(|b| {
                let e = unit(f, parent.dim(i), b);
                let back = l.psi(parent, i, &e);
                phis[i].apply(&back) == xv.apply(&e)
            });
            let backward = (0..l.link.dim(i)).into_par_iter().all(|c| {
                let e = unit(f, l.link.dim(i), c);
                match xv.solve(&phis[i].apply(&e)) {
                    Some(z) => l.psi(parent, i, &z) == e,
                    None => false,
                }
            });
            let kills_annihilator = xv
                .kernel_basis()
                .basis_dense()
                .iter()
                .all(|z| is_zero(f, &l.psi(parent, i, z)));
            report.check(
                format!("{tag} deg {i}: substitution inverts phi"),
                true,
                forward && backward && kills_annihilator,
            );
        }
    }
    report.finalize(gate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::face_ring::certify_lsop;
    use crate::linalg::{FieldSpec, PrimeField, Rationals};

    fn reduction<F: Field>(field: &F, name: &str) -> ArtinianReduction<F> {
        let k = corpus::load(name).unwrap();
        ArtinianReduction::new(field, &k, certify_lsop(field, &k, 4).unwrap()).unwrap()
    }

    fn inputs() -> ReportInputs {
        ReportInputs::new("t", FieldSpec::Rationals, None, None)
    }

    #[test]
    fn link_dimensions() {
        let r = reduction(&Rationals, "simplex_boundary_3");
        let l = link_reduction(&r, 0, None).unwrap();
        assert_eq!(l.link.hilbert(), vec![1, 1, 1]);
        assert_eq!(l.theta_prime.len(), 3);

        let t = reduction(&Rationals, "torus7");
        for v in 0..7 {
            let l = link_reduction(&t, v, None).unwrap();
            assert_eq!(l.link.hilbert(), vec![1, 4, 1]);
            assert_eq!(principal_ideal_dims(&t, v), vec![1, 4, 1]);
        }
    }

    #[test]
    fn nothing_is_dropped_when_the_link_sees_every_vertex() {
        // every vertex of the 7-vertex torus is adjacent to every other one
        let r = reduction(&Rationals, "torus7");
        let l = link_reduction(&r, 2, None).unwrap();
        for (t, tp) in l.normalized.forms.iter().zip(&l.theta_prime).skip(1) {
            let full: Vec<_> = l
                .link_to_parent
                .iter()
                .map(|&p| t.coeff(p).clone())
                .collect();
            assert_eq!(tp.coeffs(), &full[..]);
            assert!(Rationals.is_zero(t.coeff(2)));
        }
    }

    #[test]
    fn isomorphism_checks_pass() {
        let r = reduction(&Rationals, "torus7");
        let l = link_reduction(&r, 0, None).unwrap();
        let rep = verify_link_isomorphism(&r, &l, Verdict::Pass, inputs());
        assert_eq!(rep.verdict, Verdict::Pass, "{}", rep.render());

        let f = PrimeField::new(2).unwrap();
        let rp = reduction(&f, "rp2_6");
        for v in 0..6 {
            let l = link_reduction(&rp, v, None).unwrap();
            assert_eq!(
                verify_link_isomorphism(&rp, &l, Verdict::Pass, inputs()).verdict,
                Verdict::Pass
            );
        }
    }

    #[test]
    fn isomorphism_on_a_larger_sphere() {
        let f = PrimeField::new(32003).unwrap();
        let r = reduction(&f, "cross_polytope_4");
        let l = link_reduction(&r, 3, None).unwrap();
        assert_eq!(l.link.hilbert(), vec![1, 3, 3, 1]);
        assert_eq!(
            verify_link_isomorphism(&r, &l, Verdict::Pass, inputs()).verdict,
            Verdict::Pass
        );
    }

    #[test]
    fn psi_inverts_phi_on_link_cosets() {
        let r = reduction(&Rationals, "torus7");
        let l = link_reduction(&r, 5, None).unwrap();
        let f = Rationals;
        for i in 0..3 {
            for c in 0..l.link.dim(i) {
                let e = unit(&f, l.link.dim(i), c);
                let z = r.variable_map(5, i).solve(&l.phi(&r, i).apply(&e)).unwrap();
                assert_eq!(l.psi(&r, i, &z), e);
            }
        }
    }

    #[test]
    fn bad_facets_are_rejected() {
        let r = reduction(&Rationals, "torus7");
        assert!(matches!(
            link_reduction(&r, 0, Some(&[1, 2, 3])),
            Err(ManifoldError::BadFacet(_))
        ));
        assert!(matches!(
            link_reduction(&r, 9, None),
            Err(ManifoldError::NoSuchVertex(_))
        ));
    }
}
