//! Filtered face sets over joins `Δ^{j_0} ∗ ⋯ ∗ Δ^{j_n}`, perversities,
//! builders and the JSON file format.

mod builders;
mod perversity;

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::complex::{FaceSet, RawFace};
use crate::error::{Error, Result, Violation, ViolationKind};

pub use builders::{
    boundary_components, cone, cone_off_boundary, suspension, trivial_filtration, underlying,
};
pub use perversity::{ExtendedInt, Perversity, PERVERSITY_FLOOR};

/// Block dimensions `(j_0, …, j_n)`, each at least `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FiltrationVector(pub Vec<i32>);

impl FiltrationVector {
    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn blocks(&self) -> &[i32] {
        &self.0
    }

    pub fn vertex_count(&self) -> usize {
        self.0.iter().map(|&j| (j + 1) as usize).sum()
    }

    /// Total simplex dimension.
    pub fn dim(&self) -> usize {
        self.vertex_count() - 1
    }

    /// `j_n ≥ 0`.
    pub fn is_regular(&self) -> bool {
        self.0.last().is_some_and(|&j| j >= 0)
    }

    /// Block containing global vertex position `v`.
    pub fn block_of(&self, v: usize) -> usize {
        let mut start = 0;
        for (k, &j) in self.0.iter().enumerate() {
            let end = start + (j + 1) as usize;
            if v < end {
                return k;
            }
            start = end;
        }
        panic!("vertex position {v} out of range");
    }

    /// Filtration of the face opposite to position `v`.
    pub fn face(&self, v: usize) -> FiltrationVector {
        let mut out = self.clone();
        out.0[self.block_of(v)] -= 1;
        out
    }
}

/// A simplex with its filtration and codimension-1 faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredSimplex {
    pub id: String,
    pub filtration: FiltrationVector,
    pub faces: Vec<usize>,
}

impl FilteredSimplex {
    pub fn dim(&self) -> usize {
        self.filtration.dim()
    }

    pub fn is_regular(&self) -> bool {
        self.filtration.is_regular()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSimplex {
    blocks: Vec<i64>,
    #[serde(default)]
    faces: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFiltered {
    formal_dimension: usize,
    simplices: BTreeMap<String, RawSimplex>,
}

/// A finite filtered face set of formal dimension `n`, closed under faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredFaceSet {
    n: usize,
    simplices: Vec<FilteredSimplex>,
    index: HashMap<String, usize>,
}

/// A simplex given by id, blocks and face ids, before validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawFilteredSimplex {
    pub id: String,
    pub blocks: Vec<i64>,
    pub faces: Vec<String>,
}

fn validate(n: usize, raw: &BTreeMap<String, RawSimplex>) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut shape_ok: HashMap<&str, bool> = HashMap::new();
    for (id, s) in raw {
        let mut ok = true;
        if id.is_empty() {
            out.push(Violation::new(id, ViolationKind::UnknownFace, "empty id"));
            ok = false;
        }
        if s.blocks.len() != n + 1 {
            out.push(Violation::new(
                id,
                ViolationKind::BlockCount,
                format!("expected {} blocks, found {}", n + 1, s.blocks.len()),
            ));
            ok = false;
        } else if s.blocks.iter().any(|&j| !(-1..=60).contains(&j)) {
            out.push(Violation::new(
                id,
                ViolationKind::BlockRange,
                "block outside -1..=60",
            ));
            ok = false;
        } else if s.blocks.iter().all(|&j| j == -1) {
            out.push(Violation::new(id, ViolationKind::EmptySimplex, ""));
            ok = false;
        }
        shape_ok.insert(id.as_str(), ok);
    }
    let dim = |s: &RawSimplex| (s.blocks.iter().map(|j| j + 1).sum::<i64>() - 1) as usize;
    let mut faces_ok = true;
    for (id, s) in raw {
        if !shape_ok[id.as_str()] {
            faces_ok = false;
            continue;
        }
        let d = dim(s);
        let expected = if d == 0 { 0 } else { d + 1 };
        if s.faces.len() != expected {
            out.push(Violation::new(
                id,
                ViolationKind::FaceCount,
                format!("expected {expected} faces, found {}", s.faces.len()),
            ));
            faces_ok = false;
            continue;
        }
        let fv = FiltrationVector(s.blocks.iter().map(|&j| j as i32).collect());
        for (v, f) in s.faces.iter().enumerate() {
            match raw.get(f) {
                None => {
                    out.push(Violation::new(id, ViolationKind::UnknownFace, f.clone()));
                    faces_ok = false;
                }
                Some(_) if !shape_ok[f.as_str()] => faces_ok = false,
                Some(face) => {
                    let expect = fv.face(v);
                    let got: Vec<i32> = face.blocks.iter().map(|&j| j as i32).collect();
                    if got != expect.0 {
                        out.push(Violation::new(
                            id,
                            ViolationKind::FiltrationDecrement,
                            format!("face {v} ({f}) has blocks {got:?}, expected {:?}", expect.0),
                        ));
                        faces_ok = false;
                    }
                }
            }
        }
    }
    if faces_ok {
        for (id, s) in raw {
            let d = dim(s);
            if d < 2 {
                continue;
            }
            'pairs: for b in 1..=d {
                for a in 0..b {
                    let lhs = &raw[&s.faces[b]].faces[a];
                    let rhs = &raw[&s.faces[a]].faces[b - 1];
                    if lhs != rhs {
                        out.push(Violation::new(
                            id,
                            ViolationKind::SimplicialIdentity,
                            format!("d{a} d{b} = {lhs} but d{} d{a} = {rhs}", b - 1),
                        ));
                        break 'pairs;
                    }
                }
            }
        }
    }
    out.sort();
    out
}

impl FilteredFaceSet {
    /// Builds and validates a filtered face set.
    pub fn new(n: usize, simplices: Vec<RawFilteredSimplex>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for s in simplices {
            if map
                .insert(
                    s.id.clone(),
                    RawSimplex {
                        blocks: s.blocks,
                        faces: s.faces,
                    },
                )
                .is_some()
            {
                return Err(Error::Invalid(vec![Violation::new(
                    s.id,
                    ViolationKind::UnknownFace,
                    "duplicate id",
                )]));
            }
        }
        Self::from_raw(RawFiltered {
            formal_dimension: n,
            simplices: map,
        })
    }

    fn from_raw(raw: RawFiltered) -> Result<Self> {
        let violations = validate(raw.formal_dimension, &raw.simplices);
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        let index: HashMap<String, usize> = raw
            .simplices
            .keys()
            .enumerate()
            .map(|(i, id)| (id.clone(), i))
            .collect();
        let simplices = raw
            .simplices
            .iter()
            .map(|(id, s)| FilteredSimplex {
                id: id.clone(),
                filtration: FiltrationVector(s.blocks.iter().map(|&j| j as i32).collect()),
                faces: s.faces.iter().map(|f| index[f]).collect(),
            })
            .collect();
        Ok(Self {
            n: raw.formal_dimension,
            simplices,
            index,
        })
    }

    fn to_raw(&self) -> RawFiltered {
        RawFiltered {
            formal_dimension: self.n,
            simplices: self
                .simplices
                .iter()
                .map(|s| {
                    (
                        s.id.clone(),
                        RawSimplex {
                            blocks: s.filtration.0.iter().map(|&j| i64::from(j)).collect(),
                            faces: s
                                .faces
                                .iter()
                                .map(|&f| self.simplices[f].id.clone())
                                .collect(),
                        },
                    )
                })
                .collect(),
        }
    }

    /// Parses and validates the JSON format.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawFiltered =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_raw(raw)
    }

    /// Canonical serialization: ids sorted, pretty-printed, trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_raw()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    /// Formal dimension `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self) -> &[FilteredSimplex] {
        &self.simplices
    }

    pub fn simplex(&self, s: usize) -> &FilteredSimplex {
        &self.simplices[s]
    }

    pub fn lookup(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Indices of the regular simplices `K_+`, in id order.
    pub fn regular(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&s| self.simplices[s].is_regular())
            .collect()
    }

    /// Largest simplex dimension (0 when empty).
    pub fn dim(&self) -> usize {
        self.simplices
            .iter()
            .map(FilteredSimplex::dim)
            .max()
            .unwrap_or(0)
    }

    /// True when every simplex has empty blocks `0..n`.
    pub fn is_trivially_filtered(&self) -> bool {
        self.simplices
            .iter()
            .all(|s| s.filtration.0[..self.n].iter().all(|&j| j == -1))
    }

    /// The face set obtained by forgetting the filtration.
    pub fn face_set(&self) -> FaceSet {
        FaceSet::new(
            self.simplices
                .iter()
                .map(|s| RawFace {
                    id: s.id.clone(),
                    dim: s.dim(),
                    faces: s
                        .faces
                        .iter()
                        .map(|&f| self.simplices[f].id.clone())
                        .collect(),
                })
                .collect(),
        )
        .expect("a valid filtered face set has a valid underlying face set")
    }
}

/// Validates JSON text, returning every violation found.
pub fn validate_json(text: &str) -> Result<Vec<Violation>> {
    let raw: RawFiltered = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(validate(raw.formal_dimension, &raw.simplices))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EDGE: &str = r#"{
        "formal_dimension": 1,
        "simplices": {
            "e": { "blocks": [0, 0], "faces": ["b", "a"] },
            "a": { "blocks": [0, -1], "faces": [] },
            "b": { "blocks": [-1, 0], "faces": [] }
        }
    }"#;

    #[test]
    fn one_edge_parses() {
        let k = FilteredFaceSet::from_json(EDGE).unwrap();
        assert_eq!(k.len(), 3);
        assert_eq!(k.regular().len(), 2);
    }

    #[test]
    fn undecremented_face_is_rejected() {
        let bad = EDGE.replace(r#""b": { "blocks": [-1, 0]"#, r#""b": { "blocks": [0, 0]"#);
        let v = validate_json(&bad).unwrap();
        assert!(v
            .iter()
            .any(|x| x.kind == ViolationKind::FiltrationDecrement && x.simplex == "e"));
        assert!(FilteredFaceSet::from_json(&bad).is_err());
    }

    #[test]
    fn round_trip_is_canonical() {
        let k = FilteredFaceSet::from_json(EDGE).unwrap();
        let s = k.to_json();
        assert_eq!(FilteredFaceSet::from_json(&s).unwrap().to_json(), s);
        assert!(s.find("\"a\"").unwrap() < s.find("\"e\"").unwrap());
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        let e = FilteredFaceSet::from_json(&EDGE[..40]).unwrap_err();
        assert!(e.is_parse());
    }

    #[test]
    fn block_of_positions() {
        let f = FiltrationVector(vec![1, -1, 0]);
        assert_eq!(f.block_of(0), 0);
        assert_eq!(f.block_of(1), 0);
        assert_eq!(f.block_of(2), 2);
        assert_eq!(f.face(2).0, vec![1, -1, -1]);
        assert!(!f.face(2).is_regular());
    }
}
