//! Plain face sets, their GF(2) cochains and interval-cut cup_i products.

use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result, Violation, ViolationKind};
use crate::gf2::{cohomology, BitMatrix, BitVec, QuotientSpace, Subspace};

/// One simplex of a face set as supplied by a caller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawFace {
    pub id: String,
    pub dim: usize,
    pub faces: Vec<String>,
}

impl RawFace {
    pub fn new(id: impl Into<String>, dim: usize, faces: &[&str]) -> Self {
        Self {
            id: id.into(),
            dim,
            faces: faces.iter().map(|s| (*s).to_string()).collect(),
        }
    }
}

/// A finite semi-simplicial set: simplices with ordered codimension-1 faces.
#[derive(Clone, Debug)]
pub struct FaceSet {
    ids: Vec<String>,
    dims: Vec<usize>,
    faces: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
    by_dim: Vec<Vec<usize>>,
    position: Vec<usize>,
    fingerprint: u64,
}

/// Checks face counts, face dimensions and the semi-simplicial identities.
pub fn validate_face_set(raw: &[RawFace]) -> std::result::Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    let mut dims: HashMap<&str, usize> = HashMap::new();
    for r in raw {
        if dims.insert(r.id.as_str(), r.dim).is_some() {
            violations.push(Violation::new(
                &r.id,
                ViolationKind::UnknownFace,
                "duplicate id",
            ));
        }
    }
    let lookup: HashMap<&str, &RawFace> = raw.iter().map(|r| (r.id.as_str(), r)).collect();
    let mut structurally_ok = true;
    for r in raw {
        let expected = if r.dim == 0 { 0 } else { r.dim + 1 };
        if r.faces.len() != expected {
            violations.push(Violation::new(
                &r.id,
                ViolationKind::FaceCount,
                format!("expected {expected} faces, found {}", r.faces.len()),
            ));
            structurally_ok = false;
            continue;
        }
        for f in &r.faces {
            match dims.get(f.as_str()) {
                None => {
                    violations.push(Violation::new(&r.id, ViolationKind::UnknownFace, f.clone()));
                    structurally_ok = false;
                }
                Some(&d) if d + 1 != r.dim => {
                    violations.push(Violation::new(
                        &r.id,
                        ViolationKind::FaceDimension,
                        format!("face {f} has dimension {d}"),
                    ));
                    structurally_ok = false;
                }
                Some(_) => {}
            }
        }
    }
    if structurally_ok {
        for r in raw {
            if r.dim < 2 {
                continue;
            }
            'pairs: for b in 1..=r.dim {
                for a in 0..b {
                    let lhs = &lookup[r.faces[b].as_str()].faces[a];
                    let rhs = &lookup[r.faces[a].as_str()].faces[b - 1];
                    if lhs != rhs {
                        violations.push(Violation::new(
                            &r.id,
                            ViolationKind::SimplicialIdentity,
                            format!("d{a} d{b} = {lhs} but d{} d{a} = {rhs}", b - 1),
                        ));
                        break 'pairs;
                    }
                }
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        violations.sort();
        Err(violations)
    }
}

impl FaceSet {
    /// Builds and validates a face set. Simplices are stored sorted by id.
    pub fn new(mut raw: Vec<RawFace>) -> Result<Self> {
        validate_face_set(&raw).map_err(Error::Invalid)?;
        raw.sort_by(|a, b| a.id.cmp(&b.id));
        let index: HashMap<String, usize> = raw
            .iter()
            .enumerate()
            .map(|(i, r)| (r.id.clone(), i))
            .collect();
        let ids: Vec<String> = raw.iter().map(|r| r.id.clone()).collect();
        let dims: Vec<usize> = raw.iter().map(|r| r.dim).collect();
        let faces: Vec<Vec<usize>> = raw
            .iter()
            .map(|r| r.faces.iter().map(|f| index[f]).collect())
            .collect();
        let top = dims.iter().copied().max().map_or(0, |d| d + 1);
        let mut by_dim = vec![Vec::new(); top];
        let mut position = vec![0; ids.len()];
        for (s, &d) in dims.iter().enumerate() {
            position[s] = by_dim[d].len();
            by_dim[d].push(s);
        }
        let mut h = std::collections::hash_map::DefaultHasher::new();
        ids.hash(&mut h);
        faces.hash(&mut h);
        Ok(Self {
            ids,
            dims,
            faces,
            index,
            by_dim,
            position,
            fingerprint: h.finish(),
        })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Largest simplex dimension, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn id(&self, s: usize) -> &str {
        &self.ids[s]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn lookup(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn simplex_dim(&self, s: usize) -> usize {
        self.dims[s]
    }

    pub fn faces(&self, s: usize) -> &[usize] {
        &self.faces[s]
    }

    pub fn face(&self, s: usize, k: usize) -> usize {
        self.faces[s][k]
    }

    /// Simplices of dimension `d`, in id order. Cochain coordinates follow
    /// this order.
    pub fn simplices_of_dim(&self, d: usize) -> &[usize] {
        self.by_dim.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices_of_dim(d).len()
    }

    /// Index of simplex `s` among the simplices of its dimension.
    pub fn position(&self, s: usize) -> usize {
        self.position[s]
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// The face of `s` spanned by the given vertex positions (strictly
    /// increasing).
    pub fn face_with_vertices(&self, s: usize, keep: &[usize]) -> usize {
        let d = self.dims[s];
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(keep.last().is_none_or(|&k| k <= d));
        let mut cur = s;
        let mut ki = keep.len();
        for pos in (0..=d).rev() {
            if ki > 0 && keep[ki - 1] == pos {
                ki -= 1;
            } else {
                cur = self.faces[cur][pos];
            }
        }
        cur
    }

    /// Ids of the vertices of `s`, in vertex order.
    pub fn vertices(&self, s: usize) -> Vec<usize> {
        (0..=self.dims[s])
            .map(|v| self.face_with_vertices(s, &[v]))
            .collect()
    }

    /// Raw description, sorted by id.
    pub fn to_raw(&self) -> Vec<RawFace> {
        (0..self.len())
            .map(|s| RawFace {
                id: self.ids[s].clone(),
                dim: self.dims[s],
                faces: self.faces[s].iter().map(|&f| self.ids[f].clone()).collect(),
            })
            .collect()
    }

    /// The sub face set on the given simplices, which must be closed under
    /// faces.
    pub fn subcomplex(&self, members: &[usize]) -> Result<FaceSet> {
        let keep: std::collections::BTreeSet<usize> = members.iter().copied().collect();
        for &s in &keep {
            if let Some(&f) = self.faces[s].iter().find(|f| !keep.contains(f)) {
                return Err(Error::Component(format!(
                    "face {} of {} escapes the subcomplex",
                    self.ids[f], self.ids[s]
                )));
            }
        }
        FaceSet::new(
            keep.iter()
                .map(|&s| RawFace {
                    id: self.ids[s].clone(),
                    dim: self.dims[s],
                    faces: self.faces[s].iter().map(|&f| self.ids[f].clone()).collect(),
                })
                .collect(),
        )
    }

    /// Zero cochain of degree `d`.
    pub fn zero_cochain(&self, d: usize) -> Cochain {
        Cochain {
            carrier: self.fingerprint,
            degree: d,
            coeffs: BitVec::zeros(self.count(d)),
        }
    }

    /// Cochain from coefficient vector in degree `d`.
    pub fn cochain(&self, d: usize, coeffs: BitVec) -> Result<Cochain> {
        if coeffs.len() != self.count(d) {
            return Err(Error::ClassLength {
                expected: self.count(d),
                found: coeffs.len(),
            });
        }
        Ok(Cochain {
            carrier: self.fingerprint,
            degree: d,
            coeffs,
        })
    }

    /// Dual basis cochain of a simplex.
    pub fn dual(&self, s: usize) -> Cochain {
        Cochain {
            carrier: self.fingerprint,
            degree: self.dims[s],
            coeffs: BitVec::unit(self.count(self.dims[s]), self.position[s]),
        }
    }

    /// Value of `u` on simplex `s` (zero when the degrees differ).
    pub fn eval(&self, u: &Cochain, s: usize) -> bool {
        self.dims[s] == u.degree && u.coeffs.get(self.position[s])
    }

    /// Matrix of the coboundary `N^d → N^{d+1}`.
    pub fn coboundary_matrix(&self, d: usize) -> BitMatrix {
        let rows = self.count(d + 1);
        let cols = self.count(d);
        let mut m = BitMatrix::zeros(rows, cols);
        for (r, &s) in self.simplices_of_dim(d + 1).iter().enumerate() {
            for &f in &self.faces[s] {
                let c = self.position[f];
                m.set(r, c, !m.get(r, c));
            }
        }
        m
    }

    /// `(δu)(σ) = Σ_k u(face_k σ)`.
    pub fn coboundary(&self, u: &Cochain) -> Result<Cochain> {
        self.check(u)?;
        let d = u.degree;
        let coeffs = BitVec::from_indices(
            self.count(d + 1),
            self.simplices_of_dim(d + 1)
                .iter()
                .enumerate()
                .filter(|(_, &s)| {
                    self.faces[s]
                        .iter()
                        .filter(|&&f| u.coeffs.get(self.position[f]))
                        .count()
                        % 2
                        == 1
                })
                .map(|(r, _)| r),
        );
        Ok(Cochain {
            carrier: self.fingerprint,
            degree: d + 1,
            coeffs,
        })
    }

    fn check(&self, u: &Cochain) -> Result<()> {
        if u.carrier == self.fingerprint {
            Ok(())
        } else {
            Err(Error::CarrierMismatch)
        }
    }

    /// `u ∪_i v` by enumerating interval cuts on every simplex of the target
    /// degree.
    pub fn cup_i(&self, u: &Cochain, v: &Cochain, i: i64) -> Result<Cochain> {
        self.check(u)?;
        self.check(v)?;
        if u.carrier != v.carrier {
            return Err(Error::CarrierMismatch);
        }
        let (p, q) = (u.degree as i64, v.degree as i64);
        let target = (p + q - i).max(0) as usize;
        if i < 0 || i > p.min(q) {
            return Ok(self.zero_cochain(target));
        }
        let i = i as usize;
        let coeffs = BitVec::from_indices(
            self.count(target),
            self.simplices_of_dim(target)
                .iter()
                .enumerate()
                .filter(|(_, &s)| {
                    let mut acc = false;
                    for cut in IntervalCut::enumerate(target, i) {
                        if let Some((even, odd)) = cut.split() {
                            if even.len() == u.degree + 1 && odd.len() == v.degree + 1 {
                                let a = self.face_with_vertices(s, &even);
                                let b = self.face_with_vertices(s, &odd);
                                acc ^= self.eval(u, a) && self.eval(v, b);
                            }
                        }
                    }
                    acc
                })
                .map(|(r, _)| r),
        );
        Ok(Cochain {
            carrier: self.fingerprint,
            degree: target,
            coeffs,
        })
    }

    /// Pullback `g*u` along a face-set map `g: self → target`, given as the
    /// image index of each simplex.
    pub fn pullback(&self, target: &FaceSet, g: &[usize], u: &Cochain) -> Result<Cochain> {
        target.check(u)?;
        let d = u.degree;
        Ok(Cochain {
            carrier: self.fingerprint,
            degree: d,
            coeffs: BitVec::from_indices(
                self.count(d),
                self.simplices_of_dim(d)
                    .iter()
                    .enumerate()
                    .filter(|(_, &s)| target.eval(u, g[s]))
                    .map(|(r, _)| r),
            ),
        })
    }

    /// True when `g` is a dimension-preserving map commuting with all faces.
    pub fn is_face_map(&self, target: &FaceSet, g: &[usize]) -> bool {
        g.len() == self.len()
            && (0..self.len()).all(|s| {
                g[s] < target.len()
                    && target.dims[g[s]] == self.dims[s]
                    && self.faces[s]
                        .iter()
                        .zip(&target.faces[g[s]])
                        .all(|(&f, &tf)| g[f] == tf)
            })
    }

    /// Inclusion of a subcomplex (as produced by [`FaceSet::subcomplex`]) into
    /// `self`, matched by id.
    pub fn inclusion_from(&self, sub: &FaceSet) -> Option<Vec<usize>> {
        sub.ids.iter().map(|id| self.lookup(id)).collect()
    }

    /// Cohomology of the full cochain complex, one quotient per degree.
    pub fn cohomology(&self) -> ClassicalCohomology {
        let top = self.by_dim.len();
        let spaces: Vec<Subspace> = (0..top).map(|d| Subspace::full(self.count(d))).collect();
        self.cohomology_of(spaces)
    }

    /// Cohomology relative to a subcomplex given by member simplices.
    pub fn relative_cohomology(&self, members: &[usize]) -> ClassicalCohomology {
        let top = self.by_dim.len();
        let mut inside = vec![false; self.len()];
        for &s in members {
            inside[s] = true;
        }
        let spaces = (0..top)
            .map(|d| {
                let n = self.count(d);
                Subspace::span(
                    n,
                    self.simplices_of_dim(d)
                        .iter()
                        .filter(|&&s| !inside[s])
                        .map(|&s| BitVec::unit(n, self.position[s])),
                )
            })
            .collect();
        self.cohomology_of(spaces)
    }

    /// Cohomology of a δ-stable family of cochain subspaces.
    pub fn cohomology_of(&self, spaces: Vec<Subspace>) -> ClassicalCohomology {
        let deltas: Vec<BitMatrix> = (0..spaces.len())
            .map(|d| self.coboundary_matrix(d))
            .collect();
        let degrees = cohomology(&spaces, |d, v| deltas[d].mul_vec(v))
            .expect("coboundary preserves the cochain subspaces");
        ClassicalCohomology {
            carrier: self.fingerprint,
            degrees,
        }
    }

    /// `Sq^i` of the class with coordinates `coords` in `H^k`, returned as
    /// coordinates in `H^{k+i}`.
    pub fn classical_sq(
        &self,
        h: &ClassicalCohomology,
        k: usize,
        coords: &BitVec,
        i: i64,
    ) -> Result<BitVec> {
        let src = h.degree(k).ok_or(Error::Degree { degree: k })?;
        if coords.len() != src.dim() {
            return Err(Error::ClassLength {
                expected: src.dim(),
                found: coords.len(),
            });
        }
        if i < 0 || i as usize > k {
            let t = (k as i64 + i).max(0) as usize;
            return Ok(BitVec::zeros(h.dim(t)));
        }
        let t = k + i as usize;
        let z = self.cochain(k, src.cocycle(coords))?;
        let w = self.cup_i(&z, &z, k as i64 - i)?;
        match h.degree(t) {
            None => {
                if w.coeffs.is_zero() {
                    Ok(BitVec::zeros(0))
                } else {
                    Err(Error::Internal("square lands above the top degree".into()))
                }
            }
            Some(q) => q
                .express(&w.coeffs)
                .ok_or_else(|| Error::Internal("square witness is not a cocycle".into())),
        }
    }
}

/// Cohomology of a plain face set: one quotient space per degree.
#[derive(Clone, Debug)]
pub struct ClassicalCohomology {
    carrier: u64,
    degrees: Vec<QuotientSpace>,
}

impl ClassicalCohomology {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(QuotientSpace::dim).collect()
    }

    /// Dimension in degree `k` (zero above the top degree).
    pub fn dim(&self, k: usize) -> usize {
        self.degrees.get(k).map_or(0, QuotientSpace::dim)
    }

    pub fn degree(&self, k: usize) -> Option<&QuotientSpace> {
        self.degrees.get(k)
    }

    pub fn carrier(&self) -> u64 {
        self.carrier
    }
}

/// A GF(2) cochain on a face set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    carrier: u64,
    pub degree: usize,
    pub coeffs: BitVec,
}

impl Cochain {
    pub fn carrier(&self) -> u64 {
        self.carrier
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// Sum of two cochains of the same degree on the same carrier.
    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        if self.carrier != other.carrier {
            return Err(Error::CarrierMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::Degree {
                degree: other.degree,
            });
        }
        Ok(Cochain {
            carrier: self.carrier,
            degree: self.degree,
            coeffs: self.coeffs.xor(&other.coeffs),
        })
    }
}

/// A decomposition of `{0,…,n}` into `i+2` consecutive closed intervals
/// `[0,b_1], [b_1,b_2], …, [b_{i+1},n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalCut {
    pub n: usize,
    pub cuts: Vec<usize>,
}

impl IntervalCut {
    /// All cuts with `i+1` cut points, lexicographic in the cut points.
    pub fn enumerate(n: usize, i: usize) -> impl Iterator<Item = IntervalCut> {
        let len = i + 1;
        let mut next = Some(vec![0usize; len]);
        std::iter::from_fn(move || {
            let cur = next.take()?;
            let mut succ = cur.clone();
            let mut k = len;
            while k > 0 {
                k -= 1;
                if succ[k] < n {
                    succ[k] += 1;
                    let v = succ[k];
                    for x in succ.iter_mut().skip(k + 1) {
                        *x = v;
                    }
                    next = Some(succ);
                    break;
                }
            }
            Some(IntervalCut { n, cuts: cur })
        })
    }

    /// The intervals as `(start, end)` pairs.
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        let mut bounds = Vec::with_capacity(self.cuts.len() + 2);
        bounds.push(0);
        bounds.extend(&self.cuts);
        bounds.push(self.n);
        bounds.windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// Merged vertex lists of the even and odd intervals, or `None` when
    /// either list repeats a vertex.
    pub fn split(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for (k, (a, b)) in self.intervals().into_iter().enumerate() {
            let dst = if k % 2 == 0 { &mut even } else { &mut odd };
            for x in a..=b {
                if dst.last() == Some(&x) {
                    return None;
                }
                dst.push(x);
            }
        }
        Some((even, odd))
    }
}

/// `F^∨ ∪_i G^∨` on a standard simplex with vertex sets given as bit masks.
/// The result is either zero or `(F ∪ G)^∨`; this returns whether it is
/// nonzero.
#[inline]
pub fn simplex_cup_coefficient(f: u64, g: u64, i: usize) -> bool {
    let overlap = f & g;
    if overlap.count_ones() as usize != i + 1 {
        return false;
    }
    let mut h = f | g;
    let mut segment = 0u32;
    while h != 0 {
        let bit = h & h.wrapping_neg();
        h ^= bit;
        if overlap & bit != 0 {
            segment += 1;
        } else {
            let owner = if segment.is_multiple_of(2) { f } else { g };
            if owner & bit == 0 {
                return false;
            }
        }
    }
    true
}

/// Reference `F^∨ ∪_i G^∨` on the standard simplex with `nv` vertices by
/// enumerating faces and interval cuts. Returns the set of faces (as masks)
/// carrying coefficient 1.
pub fn simplex_cup_enumerated(f: u64, g: u64, i: usize, nv: usize) -> Vec<u64> {
    let p = f.count_ones() as usize;
    let q = g.count_ones() as usize;
    let Some(size) = (p + q).checked_sub(i + 1) else {
        return Vec::new();
    };
    if size == 0 || size > nv || p == 0 || q == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for h in 1u64..(1u64 << nv) {
        if h.count_ones() as usize != size {
            continue;
        }
        let verts: Vec<usize> = (0..nv).filter(|b| h >> b & 1 == 1).collect();
        let mut acc = false;
        for cut in IntervalCut::enumerate(size - 1, i) {
            if let Some((even, odd)) = cut.split() {
                let em: u64 = even.iter().map(|&x| 1u64 << verts[x]).sum();
                let om: u64 = odd.iter().map(|&x| 1u64 << verts[x]).sum();
                acc ^= em == f && om == g;
            }
        }
        if acc {
            out.push(h);
        }
    }
    out
}
