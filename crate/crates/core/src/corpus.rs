//! Triangulations bundled with the crate.

use crate::complex::{parse_complex, ComplexError, SimplicialComplex};

pub const NAMES: [&str; 11] = [
    "simplex_boundary_2",
    "simplex_boundary_3",
    "simplex_boundary_4",
    "simplex_boundary_5",
    "cross_polytope_2",
    "cross_polytope_3",
    "cross_polytope_4",
    "torus7",
    "rp2_6",
    "klein8",
    "two_spheres",
];

pub fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "simplex_boundary_2" => include_str!("../corpus/simplex_boundary_2.cplx"),
        "simplex_boundary_3" => include_str!("../corpus/simplex_boundary_3.cplx"),
        "simplex_boundary_4" => include_str!("../corpus/simplex_boundary_4.cplx"),
        "simplex_boundary_5" => include_str!("../corpus/simplex_boundary_5.cplx"),
        "cross_polytope_2" => include_str!("../corpus/cross_polytope_2.cplx"),
        "cross_polytope_3" => include_str!("../corpus/cross_polytope_3.cplx"),
        "cross_polytope_4" => include_str!("../corpus/cross_polytope_4.cplx"),
        "torus7" => include_str!("../corpus/torus7.cplx"),
        "rp2_6" => include_str!("../corpus/rp2_6.cplx"),
        "klein8" => include_str!("../corpus/klein8.cplx"),
        "two_spheres" => include_str!("../corpus/two_spheres.cplx"),
        _ => return None,
    })
}

/// Parses a bundled complex; `None` for unknown names.
pub fn load(name: &str) -> Option<SimplicialComplex> {
    source(name).map(|s| parse_complex(s).expect("bundled corpus parses"))
}

pub fn all() -> Result<Vec<(&'static str, SimplicialComplex)>, ComplexError> {
    NAMES
        .iter()
        .map(|&n| Ok((n, parse_complex(source(n).expect("listed name"))?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{cross_polytope_boundary, simplex_boundary};

    #[test]
    fn files_match_generators() {
        for d in 2..=5 {
            let file = load(&format!("simplex_boundary_{d}")).unwrap();
            assert_eq!(
                file.labeled_faces(),
                simplex_boundary(d).unwrap().labeled_faces()
            );
        }
        for d in 2..=4 {
            let file = load(&format!("cross_polytope_{d}")).unwrap();
            assert_eq!(
                file.labeled_faces(),
                cross_polytope_boundary(d).unwrap().labeled_faces()
            );
        }
    }

    #[test]
    fn sizes() {
        let k = load("klein8").unwrap();
        assert_eq!((k.num_vertices(), k.facets().len()), (8, 16));
        assert_eq!(load("two_spheres").unwrap().num_vertices(), 8);
        assert!(load("nope").is_none());
        assert_eq!(all().unwrap().len(), NAMES.len());
    }
}
