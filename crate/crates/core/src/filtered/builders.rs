use std::collections::BTreeSet;

use super::{FilteredFaceSet, RawFilteredSimplex};
use crate::complex::FaceSet;
use crate::error::{Error, Result};

fn trivial_blocks(n: usize, dim: usize) -> Vec<i64> {
    let mut b = vec![-1; n];
    b.push(dim as i64);
    b
}

fn cone_blocks(n: usize, base_dim: Option<usize>) -> Vec<i64> {
    let mut b = vec![-1; n + 1];
    b[0] = 0;
    b[n] = base_dim.map_or(-1, |d| d as i64);
    b
}

fn trivial_simplices(f: &FaceSet, n: usize) -> Vec<RawFilteredSimplex> {
    (0..f.len())
        .map(|s| RawFilteredSimplex {
            id: f.id(s).to_string(),
            blocks: trivial_blocks(n, f.simplex_dim(s)),
            faces: f.faces(s).iter().map(|&x| f.id(x).to_string()).collect(),
        })
        .collect()
}

/// Cone on the simplices `members` of `f` (closed under faces), with the
/// apex in block 0 and the base in block `n`.
fn cone_simplices(
    f: &FaceSet,
    members: &[usize],
    prefix: &str,
    apex: &str,
    n: usize,
) -> Vec<RawFilteredSimplex> {
    let coned = |s: usize| format!("{prefix}{}", f.id(s));
    let mut out = vec![RawFilteredSimplex {
        id: apex.to_string(),
        blocks: cone_blocks(n, None),
        faces: Vec::new(),
    }];
    for &s in members {
        let d = f.simplex_dim(s);
        let mut faces = vec![f.id(s).to_string()];
        if d == 0 {
            faces.push(apex.to_string());
        } else {
            faces.extend(f.faces(s).iter().map(|&x| coned(x)));
        }
        out.push(RawFilteredSimplex {
            id: coned(s),
            blocks: cone_blocks(n, Some(d)),
            faces,
        });
    }
    out
}

/// Every simplex gets blocks `(-1, …, -1, dim)`.
pub fn trivial_filtration(f: &FaceSet, n: usize) -> FilteredFaceSet {
    FilteredFaceSet::new(n, trivial_simplices(f, n)).expect("trivial filtration is valid")
}

/// The face set underlying a trivially filtered face set.
pub fn underlying(k: &FilteredFaceSet) -> Result<FaceSet> {
    if k.is_trivially_filtered() {
        Ok(k.face_set())
    } else {
        Err(Error::Component(
            "input must be trivially filtered (only the last block nonempty)".into(),
        ))
    }
}

fn require_positive(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::FormalDimension {
            expected: 1,
            found: 0,
        })
    } else {
        Ok(())
    }
}

/// The cone `cK` with ids `cone:<id>` and `apex`.
pub fn cone(k: &FaceSet, n: usize) -> Result<FilteredFaceSet> {
    require_positive(n)?;
    let mut out = trivial_simplices(k, n);
    let all: Vec<usize> = (0..k.len()).collect();
    out.extend(cone_simplices(k, &all, "cone:", "apex", n));
    FilteredFaceSet::new(n, out)
}

/// Two cones on `f` glued along `f`, formal dimension `dim f + 1`.
pub fn suspension(f: &FaceSet) -> FilteredFaceSet {
    let n = f.dim().unwrap_or(0) + 1;
    let all: Vec<usize> = (0..f.len()).collect();
    let mut out = trivial_simplices(f, n);
    out.extend(cone_simplices(f, &all, "top:", "apex:top", n));
    out.extend(cone_simplices(f, &all, "bot:", "apex:bot", n));
    FilteredFaceSet::new(n, out).expect("suspension is valid")
}

/// `w` trivially filtered with a cone attached on each component. Cone
/// simplices are named `cone<u>:<id>` with apex `apex<u>`.
pub fn cone_off_boundary(
    w: &FaceSet,
    components: &[Vec<usize>],
    n: usize,
) -> Result<FilteredFaceSet> {
    if components.is_empty() {
        return Ok(trivial_filtration(w, n));
    }
    require_positive(n)?;
    let mut owner = vec![None; w.len()];
    for (u, comp) in components.iter().enumerate() {
        let members: BTreeSet<usize> = comp.iter().copied().collect();
        if let Some(&bad) = members.iter().find(|&&s| s >= w.len()) {
            return Err(Error::Component(format!(
                "simplex index {bad} out of range"
            )));
        }
        for &s in &members {
            if let Some(prev) = owner[s] {
                return Err(Error::Component(format!(
                    "components {prev} and {u} overlap in {}",
                    w.id(s)
                )));
            }
            owner[s] = Some(u);
            if let Some(&f) = w.faces(s).iter().find(|f| !members.contains(f)) {
                return Err(Error::Component(format!(
                    "face {} of {} escapes component {u}",
                    w.id(f),
                    w.id(s)
                )));
            }
        }
        let verts: BTreeSet<usize> = members
            .iter()
            .filter(|&&s| w.simplex_dim(s) == 0)
            .copied()
            .collect();
        if let Some(s) = (0..w.len())
            .find(|&s| !members.contains(&s) && w.vertices(s).iter().all(|v| verts.contains(v)))
        {
            return Err(Error::Component(format!(
                "component {u} is not full: missing {}",
                w.id(s)
            )));
        }
    }
    let mut out = trivial_simplices(w, n);
    for (u, comp) in components.iter().enumerate() {
        let mut members = comp.clone();
        members.sort_unstable();
        members.dedup();
        out.extend(cone_simplices(
            w,
            &members,
            &format!("cone{u}:"),
            &format!("apex{u}"),
            n,
        ));
    }
    FilteredFaceSet::new(n, out)
}

/// Connected components of the boundary of a pure face set: the closure of
/// the codimension-1 simplices lying in exactly one top simplex.
pub fn boundary_components(w: &FaceSet) -> Vec<Vec<usize>> {
    let Some(d) = w.dim() else {
        return Vec::new();
    };
    if d == 0 {
        return Vec::new();
    }
    let mut cofaces = vec![0usize; w.len()];
    for &s in w.simplices_of_dim(d) {
        for &f in w.faces(s) {
            cofaces[f] += 1;
        }
    }
    let mut inside = vec![false; w.len()];
    let mut stack: Vec<usize> = w
        .simplices_of_dim(d - 1)
        .iter()
        .copied()
        .filter(|&s| cofaces[s] == 1)
        .collect();
    while let Some(s) = stack.pop() {
        if !inside[s] {
            inside[s] = true;
            stack.extend(w.faces(s));
        }
    }
    let mut parent: Vec<usize> = (0..w.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut x = x;
        while p[x] != r {
            let next = p[x];
            p[x] = r;
            x = next;
        }
        r
    }
    for s in (0..w.len()).filter(|&s| inside[s]) {
        for &f in w.faces(s) {
            let (a, b) = (find(&mut parent, s), find(&mut parent, f));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut comps: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for s in (0..w.len()).filter(|&s| inside[s]) {
        let r = find(&mut parent, s);
        comps.entry(r).or_default().push(s);
    }
    let mut out: Vec<Vec<usize>> = comps.into_values().collect();
    out.sort_by_key(|c| c[0]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn cone_of_point_is_one_edge() {
        let k = cone(&corpus::point().to_face_set(), 1).unwrap();
        assert_eq!(k.len(), 3);
        let e = k.simplex(k.lookup("cone:0").unwrap());
        assert_eq!(e.filtration.0, vec![0, 0]);
        assert_eq!(k.simplex(e.faces[0]).id, "0");
        assert_eq!(k.simplex(e.faces[1]).id, "apex");
    }

    #[test]
    fn builder_counts() {
        let c = corpus::circle().to_face_set();
        assert_eq!(cone(&c, 2).unwrap().len(), 13);
        assert_eq!(suspension(&corpus::point().to_face_set()).len(), 5);
        let rp2 = corpus::projective_plane().to_face_set();
        assert_eq!(trivial_filtration(&rp2, 2).len(), 31);
        assert!(trivial_filtration(&rp2, 2).regular().len() == 31);
    }

    #[test]
    fn boundary_detection() {
        let m = corpus::mobius_band().to_face_set();
        let b = boundary_components(&m);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].len(), 12);
        let annulus = corpus::circle().prism().to_face_set();
        assert_eq!(boundary_components(&annulus).len(), 2);
        let seg = corpus::interval().to_face_set();
        assert_eq!(boundary_components(&seg), vec![vec![0], vec![2]]);
        assert!(boundary_components(&corpus::torus().to_face_set()).is_empty());
    }

    #[test]
    fn cone_off_checks_components() {
        let seg = corpus::interval().to_face_set();
        let k = cone_off_boundary(&seg, &[vec![0], vec![2]], 1).unwrap();
        assert_eq!(k.len(), 3 + 4);
        assert!(cone_off_boundary(&seg, &[vec![0], vec![0]], 1).is_err());
        assert!(cone_off_boundary(&seg, &[vec![1]], 1).is_err());
        // both vertices without the edge: not full
        assert!(cone_off_boundary(&seg, &[vec![0, 2]], 1).is_err());
        let triv = cone_off_boundary(&seg, &[], 1).unwrap();
        assert_eq!(triv, trivial_filtration(&seg, 1));
    }
}
