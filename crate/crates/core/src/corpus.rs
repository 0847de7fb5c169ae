//! Small triangulated spaces used as fixtures and oracles.

use std::collections::BTreeSet;

use crate::complex::{FaceSet, RawFace};
use crate::filtered::{
    boundary_components, cone, cone_off_boundary, suspension, trivial_filtration, FilteredFaceSet,
};

/// A simplicial complex on integer vertices, closed under subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    /// Closure of the given facets. Vertex lists are sorted internally.
    pub fn from_facets(facets: &[Vec<usize>]) -> Self {
        let mut simplices = BTreeSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                simplices.insert(
                    (0..k)
                        .filter(|b| mask >> b & 1 == 1)
                        .map(|b| f[b])
                        .collect::<Vec<_>>(),
                );
            }
        }
        Self { simplices }
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter()
    }

    /// Number of simplices of each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.simplices.iter().map(Vec::len).max().unwrap_or(0);
        let mut f = vec![0; top];
        for s in &self.simplices {
            f[s.len() - 1] += 1;
        }
        f
    }

    /// Maximal simplices.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.simplices
            .iter()
            .filter(|s| {
                !self
                    .simplices
                    .iter()
                    .any(|t| t.len() == s.len() + 1 && s.iter().all(|v| t.contains(v)))
            })
            .cloned()
            .collect()
    }

    /// The face set with ids `"a.b.c"` and faces obtained by deleting
    /// vertices in order.
    pub fn to_face_set(&self) -> FaceSet {
        FaceSet::new(
            self.simplices
                .iter()
                .map(|s| RawFace {
                    id: simplex_id(s),
                    dim: s.len() - 1,
                    faces: if s.len() == 1 {
                        Vec::new()
                    } else {
                        (0..s.len())
                            .map(|k| {
                                let mut t = s.clone();
                                t.remove(k);
                                simplex_id(&t)
                            })
                            .collect()
                    },
                })
                .collect(),
        )
        .expect("simplicial complexes give valid face sets")
    }

    /// Staircase triangulation of `self × [0,1]`; vertex `(v, e)` is encoded
    /// as `2v + e`.
    pub fn prism(&self) -> SimplicialComplex {
        let mut facets = Vec::new();
        for s in self.facets() {
            let d = s.len();
            for turn in 0..d {
                let mut chain: Vec<usize> = s[..=turn].iter().map(|&v| 2 * v).collect();
                chain.extend(s[turn..].iter().map(|&v| 2 * v + 1));
                facets.push(chain);
            }
        }
        SimplicialComplex::from_facets(&facets)
    }
}

pub fn simplex_id(s: &[usize]) -> String {
    s.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(".")
}

pub fn point() -> SimplicialComplex {
    SimplicialComplex::from_facets(&[vec![0]])
}

/// The 1-simplex.
pub fn interval() -> SimplicialComplex {
    SimplicialComplex::from_facets(&[vec![0, 1]])
}

/// Boundary of the 2-simplex, a circle.
pub fn circle() -> SimplicialComplex {
    SimplicialComplex::from_facets(&[vec![0, 1], vec![0, 2], vec![1, 2]])
}

/// Seven-vertex torus.
pub fn torus() -> SimplicialComplex {
    let facets: Vec<Vec<usize>> = (0..7)
        .flat_map(|i| {
            [
                vec![i, (i + 1) % 7, (i + 3) % 7],
                vec![i, (i + 2) % 7, (i + 3) % 7],
            ]
        })
        .collect();
    SimplicialComplex::from_facets(&facets)
}

/// Six-vertex real projective plane.
pub fn projective_plane() -> SimplicialComplex {
    SimplicialComplex::from_facets(&[
        vec![0, 1, 2],
        vec![0, 2, 3],
        vec![0, 3, 4],
        vec![0, 4, 5],
        vec![0, 5, 1],
        vec![1, 2, 4],
        vec![2, 3, 5],
        vec![3, 4, 1],
        vec![4, 5, 2],
        vec![5, 1, 3],
    ])
}

/// Klein bottle on a 3×3 grid.
pub fn klein_bottle() -> SimplicialComplex {
    fn v(x: i64, y: i64) -> usize {
        let mut x = x.rem_euclid(6);
        let mut y = y;
        if x >= 3 {
            x -= 3;
            y = -y;
        }
        (x * 3 + y.rem_euclid(3)) as usize
    }
    let mut facets = Vec::new();
    for x in 0..3 {
        for y in 0..3 {
            facets.push(vec![v(x, y), v(x + 1, y), v(x + 1, y + 1)]);
            facets.push(vec![v(x, y), v(x, y + 1), v(x + 1, y + 1)]);
        }
    }
    SimplicialComplex::from_facets(&facets)
}

/// Möbius band as a twisted 3×3 strip; its boundary circle is a full
/// subcomplex.
pub fn mobius_band() -> SimplicialComplex {
    fn v(x: i64, y: i64) -> usize {
        let mut x = x.rem_euclid(6);
        let mut y = y;
        if x >= 3 {
            x -= 3;
            y = 2 - y;
        }
        (x * 3 + y) as usize
    }
    let mut facets = Vec::new();
    for x in 0..3 {
        for y in 0..2 {
            facets.push(vec![v(x, y), v(x + 1, y), v(x + 1, y + 1)]);
            facets.push(vec![v(x, y), v(x, y + 1), v(x + 1, y + 1)]);
        }
    }
    SimplicialComplex::from_facets(&facets)
}

/// Named corpus entries.
pub fn by_name(name: &str) -> Option<SimplicialComplex> {
    Some(match name {
        "point" => point(),
        "interval" => interval(),
        "circle" => circle(),
        "torus" => torus(),
        "rp2" => projective_plane(),
        "klein" => klein_bottle(),
        "mobius" => mobius_band(),
        _ => return None,
    })
}

pub const NAMES: [&str; 7] = [
    "point", "interval", "circle", "torus", "rp2", "klein", "mobius",
];

/// The filtered complexes exercised by the verification suite: trivial
/// filtrations of the closed surfaces, cones, a suspension and a coned-off
/// Möbius band.
pub fn filtered_corpus() -> Vec<(String, FilteredFaceSet)> {
    let fs = |c: SimplicialComplex| c.to_face_set();
    let mut out = Vec::new();
    for name in ["point", "circle", "torus", "klein", "rp2"] {
        let f = fs(by_name(name).expect("corpus name"));
        let n = f.dim().unwrap_or(0).max(1);
        out.push((format!("trivial({name})"), trivial_filtration(&f, n)));
    }
    out.push(("cone(circle)".into(), cone(&fs(circle()), 2).expect("cone")));
    out.push((
        "cone(rp2)".into(),
        cone(&fs(projective_plane()), 3).expect("cone"),
    ));
    out.push((
        "cone(rp2xI)".into(),
        cone(&fs(projective_plane().prism()), 4).expect("cone"),
    ));
    out.push((
        "suspension(rp2)".into(),
        suspension(&fs(projective_plane())),
    ));
    let m = fs(mobius_band());
    let comps = boundary_components(&m);
    out.push((
        "coneoff(mobius)".into(),
        cone_off_boundary(&m, &comps, 2).expect("coneoff"),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_vectors() {
        assert_eq!(torus().f_vector(), vec![7, 21, 14]);
        assert_eq!(projective_plane().f_vector(), vec![6, 15, 10]);
        assert_eq!(klein_bottle().f_vector(), vec![9, 27, 18]);
        assert_eq!(mobius_band().f_vector(), vec![9, 21, 12]);
        assert_eq!(circle().f_vector(), vec![3, 3]);
    }

    #[test]
    fn prism_of_interval_is_a_square() {
        let p = interval().prism();
        assert_eq!(p.f_vector(), vec![4, 5, 2]);
    }

    #[test]
    fn face_set_ids() {
        let f = circle().to_face_set();
        let e = f.lookup("0.2").unwrap();
        assert_eq!(f.id(f.face(e, 0)), "2");
        assert_eq!(f.id(f.face(e, 1)), "0");
    }
}
