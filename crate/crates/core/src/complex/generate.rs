use std::collections::HashSet;
use std::str::FromStr;

use super::{ComplexError, Face, SimplicialComplex};

/// Named families with a size parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    SimplexBoundary,
    CrossPolytopeBoundary,
}

impl FromStr for Generator {
    type Err = ComplexError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "simplex-boundary" | "simplex_boundary" => Ok(Generator::SimplexBoundary),
            "cross-polytope-boundary" | "cross_polytope_boundary" | "cross-polytope" => {
                Ok(Generator::CrossPolytopeBoundary)
            }
            _ => Err(ComplexError::UnknownGenerator(s.to_string())),
        }
    }
}

pub fn generate(kind: Generator, d: usize) -> Result<SimplicialComplex, ComplexError> {
    match kind {
        Generator::SimplexBoundary => simplex_boundary(d),
        Generator::CrossPolytopeBoundary => cross_polytope_boundary(d),
    }
}

/// Boundary of the `d`-simplex: all `d`-subsets of `{1, ..., d+1}`, a `(d-1)`-sphere.
pub fn simplex_boundary(d: usize) -> Result<SimplicialComplex, ComplexError> {
    if d < 1 {
        return Err(ComplexError::BadDimension(d));
    }
    let labels = (1..=d + 1).map(|i| i.to_string()).collect();
    let all = Face::new((0..=d).collect());
    let facets = all
        .subsets(d)
        .into_iter()
        .map(|f| f.vertices().to_vec())
        .collect();
    SimplicialComplex::new(labels, facets)
}

/// Boundary of the `d`-dimensional cross-polytope on `2d` vertices; `i` and `i+d` are antipodal.
pub fn cross_polytope_boundary(d: usize) -> Result<SimplicialComplex, ComplexError> {
    if d < 1 {
        return Err(ComplexError::BadDimension(d));
    }
    let labels = (1..=2 * d).map(|i| i.to_string()).collect();
    let facets = (0u64..1 << d)
        .map(|mask| {
            (0..d)
                .map(|i| if mask >> i & 1 == 1 { i + d } else { i })
                .collect()
        })
        .collect();
    SimplicialComplex::new(labels, facets)
}

/// `K * L`. Labels shared by both sides get `.0` / `.1` suffixes.
pub fn join(k: &SimplicialComplex, l: &SimplicialComplex) -> SimplicialComplex {
    let left: HashSet<&str> = k.labels().iter().map(|s| s.as_str()).collect();
    let clash = l.labels().iter().any(|s| left.contains(s.as_str()));
    let rename = |s: &String, side: u8| {
        if clash {
            format!("{s}.{side}")
        } else {
            s.clone()
        }
    };
    let mut labels: Vec<String> = k.labels().iter().map(|s| rename(s, 0)).collect();
    labels.extend(l.labels().iter().map(|s| rename(s, 1)));
    let n = k.num_vertices();
    let mut facets = Vec::new();
    for f in k.facets() {
        for g in l.facets() {
            let mut v = f.vertices().to_vec();
            v.extend(g.vertices().iter().map(|&x| x + n));
            facets.push(v);
        }
    }
    SimplicialComplex::new(labels, facets).expect("join of valid complexes is valid")
}

/// Join with two new points; the apexes are labelled `N` and `S` unless taken.
pub fn suspension(k: &SimplicialComplex) -> SimplicialComplex {
    let mut north = "N".to_string();
    let mut south = "S".to_string();
    while k.vertex_id(&north).is_some() || k.vertex_id(&south).is_some() {
        north.push('\'');
        south.push('\'');
    }
    let poles =
        SimplicialComplex::new(vec![north, south], vec![vec![0], vec![1]]).expect("two points");
    join(k, &poles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{FVector, HVector};

    #[test]
    fn simplex_boundaries() {
        for d in 1..=5 {
            let s = simplex_boundary(d).unwrap();
            assert_eq!(s.num_vertices(), d + 1);
            assert_eq!(s.facets().len(), d + 1);
            assert_eq!(s.h_vector(), HVector(vec![1; d + 1]));
        }
        assert_eq!(
            simplex_boundary(0).unwrap_err(),
            ComplexError::BadDimension(0)
        );
    }

    #[test]
    fn cross_polytopes() {
        let o = cross_polytope_boundary(3).unwrap();
        assert_eq!(o.f_vector(), FVector(vec![1, 6, 12, 8]));
        assert_eq!(o.h_vector(), HVector(vec![1, 3, 3, 1]));
        assert!(!o.is_face(&[0, 3]));
        assert_eq!(
            cross_polytope_boundary(4).unwrap().h_vector(),
            HVector(vec![1, 4, 6, 4, 1])
        );
    }

    #[test]
    fn suspension_of_cross_polytope() {
        let o2 = cross_polytope_boundary(2).unwrap();
        let s = suspension(&o2);
        assert_eq!(s.f_vector(), cross_polytope_boundary(3).unwrap().f_vector());
    }

    #[test]
    fn join_renames_on_clash() {
        let a = simplex_boundary(1).unwrap();
        let j = join(&a, &a);
        assert_eq!(j.labels(), &["1.0", "2.0", "1.1", "2.1"]);
        assert_eq!(j.f_vector(), FVector(vec![1, 4, 4]));
    }

    #[test]
    fn join_face_numbers_convolve() {
        let parts = [
            simplex_boundary(2).unwrap(),
            cross_polytope_boundary(2).unwrap(),
            crate::corpus::load("torus7").unwrap(),
            SimplicialComplex::simplex(&["p"]),
        ];
        for a in &parts {
            for b in &parts {
                let (fa, fb) = (a.f_vector().0, b.f_vector().0);
                let mut expected = vec![0u64; fa.len() + fb.len() - 1];
                for (i, x) in fa.iter().enumerate() {
                    for (j, y) in fb.iter().enumerate() {
                        expected[i + j] += x * y;
                    }
                }
                assert_eq!(join(a, b).f_vector().0, expected);
            }
        }
    }

    #[test]
    fn parse_generator_names() {
        assert_eq!(
            "simplex-boundary".parse::<Generator>().unwrap(),
            Generator::SimplexBoundary
        );
        assert!("torus".parse::<Generator>().is_err());
    }
}
