//! The blow-up cochain complex of a filtered face set.
//!
//! For a regular simplex with blocks `(j_0,…,j_n)` the local complex is
//! `N*(cΔ^{j_0}) ⊗ ⋯ ⊗ N*(cΔ^{j_{n-1}}) ⊗ N*(Δ^{j_n})`. A tensor basis
//! element `(F_0,…,F_n)` is packed into one `u64`: factor `k` owns a run of
//! bits, one per vertex, with the cone apex as the last bit of its run, and
//! factor 0 sits in the highest run so that numeric order is lexicographic
//! order on `(F_0,…,F_n)`.
//!
//! Global sections are stored extensionally: one coordinate per pair of a
//! regular simplex and a tensor basis element of the given degree.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::complex::{Cochain, FaceSet};
use crate::error::{Error, Result};
use crate::filtered::{ExtendedInt, FilteredFaceSet, FiltrationVector, Perversity};
use crate::gf2::{
    cohomology, combine, dependencies, rank_and_kernel, BitMatrix, BitVec, QuotientSpace, Subspace,
};

/// Tensor basis of the local complex of one regular simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalComplex {
    blocks: Vec<i32>,
    offsets: Vec<u32>,
    widths: Vec<u32>,
    starts: Vec<usize>,
    basis: Vec<Vec<u64>>,
}

impl LocalComplex {
    /// # Errors
    /// Fails for non-regular filtrations and for simplices whose packed
    /// encoding would exceed 64 bits.
    pub fn new(filtration: &FiltrationVector, id: &str) -> Result<Self> {
        if !filtration.is_regular() {
            return Err(Error::NotRegular(id.to_string()));
        }
        let blocks = filtration.blocks().to_vec();
        let n = blocks.len() - 1;
        let widths: Vec<u32> = blocks
            .iter()
            .enumerate()
            .map(|(k, &j)| {
                if k < n {
                    (j + 2) as u32
                } else {
                    (j + 1) as u32
                }
            })
            .collect();
        let total: u32 = widths.iter().sum();
        if total > 63 {
            return Err(Error::TooLarge(id.to_string()));
        }
        let mut offsets = vec![0u32; n + 1];
        for k in (0..n).rev() {
            offsets[k] = offsets[k + 1] + widths[k + 1];
        }
        let mut starts = vec![0usize; n + 1];
        for k in 1..=n {
            starts[k] = starts[k - 1] + (blocks[k - 1] + 1) as usize;
        }
        let dim = filtration.dim();
        let mut basis = vec![Vec::new(); dim + 1];
        let mut stack = vec![(0usize, 0u64)];
        while let Some((k, acc)) = stack.pop() {
            if k == n + 1 {
                let deg = acc.count_ones() as usize - (n + 1);
                basis[deg].push(acc);
                continue;
            }
            for f in 1u64..(1u64 << widths[k]) {
                stack.push((k + 1, acc | (f << offsets[k])));
            }
        }
        for b in &mut basis {
            b.sort_unstable();
        }
        Ok(Self {
            blocks,
            offsets,
            widths,
            starts,
            basis,
        })
    }

    pub fn n(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn blocks(&self) -> &[i32] {
        &self.blocks
    }

    /// Simplex dimension, also the top local degree.
    pub fn dim(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn bit_count(&self) -> u32 {
        self.widths.iter().sum()
    }

    /// Basis elements of degree `k`, sorted.
    pub fn basis(&self, k: usize) -> &[u64] {
        self.basis.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, k: usize, term: u64) -> Option<usize> {
        self.basis(k).binary_search(&term).ok()
    }

    /// Degree `Σ (|F_m| − 1)`.
    pub fn degree(&self, term: u64) -> usize {
        term.count_ones() as usize - self.blocks.len()
    }

    /// Vertex mask of factor `k` (bit `a` = vertex `a`, apex last).
    pub fn factor(&self, term: u64, k: usize) -> u64 {
        (term >> self.offsets[k]) & ((1u64 << self.widths[k]) - 1)
    }

    pub fn factors(&self, term: u64) -> Vec<u64> {
        (0..self.blocks.len())
            .map(|k| self.factor(term, k))
            .collect()
    }

    /// Packs factor masks.
    pub fn term(&self, factors: &[u64]) -> u64 {
        factors
            .iter()
            .enumerate()
            .map(|(k, &f)| f << self.offsets[k])
            .fold(0, |a, b| a | b)
    }

    /// Number of vertices of factor `k` (the cone apex included).
    pub fn width(&self, k: usize) -> u32 {
        self.widths[k]
    }

    /// The apex bit of cone factor `k < n`, as a term-level mask.
    pub fn apex_mask(&self, k: usize) -> u64 {
        debug_assert!(k < self.n());
        1u64 << (self.offsets[k] + self.widths[k] - 1)
    }

    /// Terms of `δ(term)`.
    pub fn coboundary_terms(&self, term: u64) -> impl Iterator<Item = u64> + '_ {
        let full = (1u64 << self.bit_count()) - 1;
        let mut free = full & !term;
        std::iter::from_fn(move || {
            if free == 0 {
                None
            } else {
                let bit = free & free.wrapping_neg();
                free ^= bit;
                Some(term | bit)
            }
        })
    }

    /// Term-level bit of the vertex at global position `v`.
    pub fn position_bit(&self, v: usize) -> u64 {
        let k = (0..self.blocks.len())
            .rev()
            .find(|&k| self.starts[k] <= v && self.blocks[k] >= 0)
            .expect("position in range");
        let a = v - self.starts[k];
        debug_assert!(a <= self.blocks[k] as usize);
        1u64 << (self.offsets[k] + a as u32)
    }

    /// Pullback of `term^∨` along the face opposite global position `v`,
    /// expressed in the face's packing; `None` when it vanishes.
    pub fn restrict_term(&self, term: u64, v: usize) -> Option<u64> {
        let bit = self.position_bit(v);
        if term & bit != 0 {
            return None;
        }
        let low = term & (bit - 1);
        let high = term & !(bit | (bit - 1));
        Some(low | (high >> 1))
    }

    /// `‖term‖_ℓ`: `-∞` if block `n−ℓ` is empty or the term meets its apex,
    /// otherwise the degree of the factors after `n−ℓ`.
    pub fn term_perverse_degree(&self, term: u64, l: usize) -> ExtendedInt {
        let n = self.n();
        debug_assert!(l >= 1 && l <= n);
        let f = n - l;
        if self.blocks[f] < 0 || term & self.apex_mask(f) != 0 {
            return ExtendedInt::NegInf;
        }
        let tail: u32 = (f + 1..=n)
            .map(|m| self.factor(term, m).count_ones() - 1)
            .sum();
        ExtendedInt::Finite(i64::from(tail))
    }

    /// True when the term violates `‖·‖ ≤ p̄` at some depth.
    pub fn is_forbidden(&self, term: u64, p: &Perversity) -> bool {
        (1..=self.n()).any(|l| self.term_perverse_degree(term, l) > p.value(l))
    }

    /// Term with every bit set: the top-dimensional basis element.
    pub fn top_term(&self) -> u64 {
        (1u64 << self.bit_count()) - 1
    }
}

/// An element of the local complex of one regular simplex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalCochain {
    pub owner: usize,
    pub degree: usize,
    /// Sorted, duplicate-free tensor basis elements.
    pub terms: Vec<u64>,
}

impl LocalCochain {
    /// Normalizes a list of terms by cancelling pairs.
    pub fn from_terms(owner: usize, degree: usize, mut terms: Vec<u64>) -> Self {
        terms.sort_unstable();
        let mut out: Vec<u64> = Vec::with_capacity(terms.len());
        for t in terms {
            if out.last() == Some(&t) {
                out.pop();
            } else {
                out.push(t);
            }
        }
        Self {
            owner,
            degree,
            terms: out,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A vector of the extensional coordinate space in a fixed degree. It is a
/// global section when it lies in [`Blowup::global_sections`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GlobalSection {
    pub degree: usize,
    pub coords: BitVec,
}

impl GlobalSection {
    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    /// # Panics
    /// Panics if the degrees differ.
    pub fn add(&self, other: &GlobalSection) -> GlobalSection {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        GlobalSection {
            degree: self.degree,
            coords: self.coords.xor(&other.coords),
        }
    }
}

/// The `p̄`-intersection subcomplex and its cohomology.
#[derive(Debug)]
pub struct PerverseComplex {
    pub perversity: Perversity,
    pub spaces: Vec<Subspace>,
    pub cohomology: Vec<QuotientSpace>,
}

impl PerverseComplex {
    pub fn dims(&self) -> Vec<usize> {
        self.cohomology.iter().map(QuotientSpace::dim).collect()
    }

    pub fn dim(&self, k: usize) -> usize {
        self.cohomology.get(k).map_or(0, QuotientSpace::dim)
    }
}

/// The blow-up of a filtered face set with lazily computed global sections
/// and perverse cohomology.
#[derive(Debug)]
pub struct Blowup {
    k: FilteredFaceSet,
    regular: Vec<usize>,
    slot: Vec<Option<usize>>,
    local: Vec<LocalComplex>,
    offsets: Vec<Vec<usize>>,
    coords: Vec<Vec<(u32, u64)>>,
    sections: Vec<OnceLock<Subspace>>,
    perverse: Mutex<HashMap<Perversity, Arc<PerverseComplex>>>,
}

impl Blowup {
    pub fn new(k: FilteredFaceSet) -> Result<Self> {
        let regular = k.regular();
        let mut slot = vec![None; k.len()];
        let mut local = Vec::with_capacity(regular.len());
        for (r, &s) in regular.iter().enumerate() {
            slot[s] = Some(r);
            let simplex = k.simplex(s);
            local.push(LocalComplex::new(&simplex.filtration, &simplex.id)?);
        }
        let top = k.dim() + 1;
        let mut offsets = Vec::with_capacity(top);
        let mut coords = Vec::with_capacity(top);
        for d in 0..top {
            let mut off = Vec::with_capacity(regular.len() + 1);
            let mut table = Vec::new();
            for (r, l) in local.iter().enumerate() {
                off.push(table.len());
                table.extend(l.basis(d).iter().map(|&t| (r as u32, t)));
            }
            off.push(table.len());
            offsets.push(off);
            coords.push(table);
        }
        Ok(Self {
            k,
            regular,
            slot,
            local,
            offsets,
            coords,
            sections: (0..top).map(|_| OnceLock::new()).collect(),
            perverse: Mutex::new(HashMap::new()),
        })
    }

    pub fn complex(&self) -> &FilteredFaceSet {
        &self.k
    }

    pub fn n(&self) -> usize {
        self.k.n()
    }

    /// Number of degrees carried (`0..=dim K`).
    pub fn degree_count(&self) -> usize {
        self.coords.len()
    }

    /// Regular simplices, in id order.
    pub fn regular(&self) -> &[usize] {
        &self.regular
    }

    pub fn local(&self, s: usize) -> Option<&LocalComplex> {
        self.slot[s].map(|r| &self.local[r])
    }

    /// Local basis of a simplex in degree `k`.
    pub fn local_basis(&self, s: usize, k: usize) -> Result<&[u64]> {
        self.local(s)
            .map(|l| l.basis(k))
            .ok_or_else(|| Error::NotRegular(self.k.simplex(s).id.clone()))
    }

    pub fn ambient_dim(&self, d: usize) -> usize {
        self.coords.get(d).map_or(0, Vec::len)
    }

    /// Simplex index and term of a coordinate.
    pub fn coordinate_info(&self, d: usize, c: usize) -> (usize, u64) {
        let (r, t) = self.coords[d][c];
        (self.regular[r as usize], t)
    }

    pub fn coordinate(&self, d: usize, s: usize, term: u64) -> Option<usize> {
        let r = self.slot[s]?;
        let idx = self.local[r].index_of(d, term)?;
        Some(self.offsets[d][r] + idx)
    }

    pub fn zero(&self, d: usize) -> GlobalSection {
        GlobalSection {
            degree: d,
            coords: BitVec::zeros(self.ambient_dim(d)),
        }
    }

    pub fn section(&self, d: usize, coords: BitVec) -> Result<GlobalSection> {
        if coords.len() != self.ambient_dim(d) {
            return Err(Error::ClassLength {
                expected: self.ambient_dim(d),
                found: coords.len(),
            });
        }
        Ok(GlobalSection { degree: d, coords })
    }

    /// The component `c_σ`.
    pub fn local_cochain(&self, c: &GlobalSection, s: usize) -> Result<LocalCochain> {
        let r = self.slot[s].ok_or_else(|| Error::NotRegular(self.k.simplex(s).id.clone()))?;
        Ok(LocalCochain {
            owner: s,
            degree: c.degree,
            terms: self.local_terms(c.degree, &c.coords, r),
        })
    }

    fn local_terms(&self, d: usize, coords: &BitVec, r: usize) -> Vec<u64> {
        if d >= self.offsets.len() {
            return Vec::new();
        }
        let (a, b) = (self.offsets[d][r], self.offsets[d][r + 1]);
        let basis = self.local[r].basis(d);
        (a..b)
            .filter(|&c| coords.get(c))
            .map(|c| basis[c - a])
            .collect()
    }

    /// Assembles a coordinate vector from local cochains (summing repeats).
    pub fn assemble(&self, d: usize, parts: &[LocalCochain]) -> Result<GlobalSection> {
        let mut v = BitVec::zeros(self.ambient_dim(d));
        for p in parts {
            for &t in &p.terms {
                let c = self.coordinate(d, p.owner, t).ok_or_else(|| {
                    Error::Internal(format!("term {t:#x} not in degree {d} basis"))
                })?;
                v.flip(c);
            }
        }
        Ok(GlobalSection {
            degree: d,
            coords: v,
        })
    }

    /// Restriction of `c_σ` along the face opposite global position `v`.
    pub fn restrict_along_face(&self, c: &LocalCochain, v: usize) -> Result<LocalCochain> {
        let l = self
            .local(c.owner)
            .ok_or_else(|| Error::NotRegular(self.k.simplex(c.owner).id.clone()))?;
        let face = self.k.simplex(c.owner).faces[v];
        if self.slot[face].is_none() {
            return Err(Error::NotRegular(self.k.simplex(face).id.clone()));
        }
        Ok(LocalCochain::from_terms(
            face,
            c.degree,
            c.terms
                .iter()
                .filter_map(|&t| l.restrict_term(t, v))
                .collect(),
        ))
    }

    /// Local coboundary.
    pub fn local_coboundary(&self, c: &LocalCochain) -> LocalCochain {
        let l = self.local(c.owner).expect("regular owner");
        LocalCochain::from_terms(
            c.owner,
            c.degree + 1,
            c.terms
                .iter()
                .flat_map(|&t| l.coboundary_terms(t))
                .collect(),
        )
    }

    /// Ambient coboundary `degree d → d+1`.
    pub fn coboundary_vec(&self, d: usize, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.ambient_dim(d + 1));
        if out.is_empty() {
            return out;
        }
        for c in v.ones() {
            let (r, t) = self.coords[d][c];
            let r = r as usize;
            let l = &self.local[r];
            for u in l.coboundary_terms(t) {
                let idx = l.index_of(d + 1, u).expect("coboundary term in basis");
                out.flip(self.offsets[d + 1][r] + idx);
            }
        }
        out
    }

    pub fn coboundary(&self, c: &GlobalSection) -> GlobalSection {
        GlobalSection {
            degree: c.degree + 1,
            coords: self.coboundary_vec(c.degree, &c.coords),
        }
    }

    /// Equalizer constraints in degree `d`: one row per (regular σ, face
    /// position with regular face, face basis element).
    pub fn equalizer_matrix(&self, d: usize) -> BitMatrix {
        let cols = self.ambient_dim(d);
        let mut rows: Vec<BitVec> = Vec::new();
        for (r, &s) in self.regular.iter().enumerate() {
            let l = &self.local[r];
            let simplex = self.k.simplex(s);
            for (v, &face) in simplex.faces.iter().enumerate() {
                let Some(fr) = self.slot[face] else { continue };
                let fbase = self.offsets[d][fr];
                let first = rows.len();
                for i in 0..self.local[fr].basis(d).len() {
                    rows.push(BitVec::unit(cols, fbase + i));
                }
                for (i, &t) in l.basis(d).iter().enumerate() {
                    if let Some(g) = l.restrict_term(t, v) {
                        let gi = self.local[fr]
                            .index_of(d, g)
                            .expect("restricted term in basis");
                        rows[first + gi].flip(self.offsets[d][r] + i);
                    }
                }
            }
        }
        BitMatrix::from_rows(rows, cols)
    }

    /// The global sections of degree `d` as a subspace of the coordinate
    /// space.
    pub fn global_sections(&self, d: usize) -> &Subspace {
        static EMPTY: OnceLock<Subspace> = OnceLock::new();
        match self.sections.get(d) {
            None => EMPTY.get_or_init(|| Subspace::zero(0)),
            Some(cell) => cell.get_or_init(|| rank_and_kernel(&self.equalizer_matrix(d)).1),
        }
    }

    pub fn is_section(&self, c: &GlobalSection) -> bool {
        c.coords.len() == self.ambient_dim(c.degree)
            && self.global_sections(c.degree).contains(&c.coords)
    }

    /// `(‖c‖_1, …, ‖c‖_n)`, the sup over all regular simplices.
    pub fn perverse_degree(&self, c: &GlobalSection) -> Vec<ExtendedInt> {
        self.perverse_degree_over(c, self.regular.iter().copied())
    }

    /// Perverse degree with the sup restricted to the given simplices.
    pub fn perverse_degree_over(
        &self,
        c: &GlobalSection,
        simplices: impl IntoIterator<Item = usize>,
    ) -> Vec<ExtendedInt> {
        let n = self.n();
        let mut out = vec![ExtendedInt::NegInf; n];
        for s in simplices {
            let Some(r) = self.slot[s] else { continue };
            let l = &self.local[r];
            for t in self.local_terms(c.degree, &c.coords, r) {
                for (li, slot) in out.iter_mut().enumerate() {
                    let v = l.term_perverse_degree(t, li + 1);
                    if v > *slot {
                        *slot = v;
                    }
                }
            }
        }
        out
    }

    /// Regular simplices that are not a face of another regular simplex.
    pub fn maximal_regular(&self) -> Vec<usize> {
        let mut is_face = vec![false; self.k.len()];
        for &s in &self.regular {
            for &f in &self.k.simplex(s).faces {
                is_face[f] = true;
            }
        }
        self.regular
            .iter()
            .copied()
            .filter(|&s| !is_face[s])
            .collect()
    }

    /// `‖c‖ ≤ p̄` componentwise.
    pub fn is_admissible(&self, c: &GlobalSection, p: &Perversity) -> bool {
        self.perverse_degree(c)
            .iter()
            .enumerate()
            .all(|(l, &v)| v <= p.value(l + 1))
    }

    /// Coordinates that must vanish for `‖c‖ ≤ p̄` in degree `d`.
    pub fn forbidden(&self, p: &Perversity, d: usize) -> BitVec {
        let dim = self.ambient_dim(d);
        BitVec::from_indices(
            dim,
            (0..dim).filter(|&c| {
                let (r, t) = self.coords[d][c];
                self.local[r as usize].is_forbidden(t, p)
            }),
        )
    }

    fn check_perversity(&self, p: &Perversity) -> Result<()> {
        if p.n() == self.n() {
            Ok(())
        } else {
            Err(Error::FormalDimension {
                expected: self.n(),
                found: p.n(),
            })
        }
    }

    /// `Ñ^d_p̄ = { c ∈ Ñ^d : ‖c‖ ≤ p̄, ‖δc‖ ≤ p̄ }`.
    pub fn intersection_subcomplex(&self, p: &Perversity, d: usize) -> Result<Subspace> {
        self.check_perversity(p)?;
        let g = self.global_sections(d);
        let f0 = self.forbidden(p, d);
        let f1 = self.forbidden(p, d + 1);
        let constraints: Vec<BitVec> = g
            .basis()
            .iter()
            .map(|b| {
                let mut x = b.clone();
                for c in 0..x.len() {
                    if !f0.get(c) {
                        x.set(c, false);
                    }
                }
                let mut y = self.coboundary_vec(d, b);
                for c in 0..y.len() {
                    if !f1.get(c) {
                        y.set(c, false);
                    }
                }
                x.concat(&y)
            })
            .collect();
        let dim = self.ambient_dim(d);
        Ok(Subspace::span(
            dim,
            dependencies(&constraints)
                .iter()
                .map(|c| combine(g.basis(), c, dim)),
        ))
    }

    /// Intersection subcomplex and cohomology for `p̄`, cached.
    pub fn perverse(&self, p: &Perversity) -> Result<Arc<PerverseComplex>> {
        self.check_perversity(p)?;
        if let Some(hit) = self.perverse.lock().expect("cache lock").get(p) {
            return Ok(Arc::clone(hit));
        }
        let spaces = (0..self.degree_count())
            .map(|d| self.intersection_subcomplex(p, d))
            .collect::<Result<Vec<_>>>()?;
        let cohomology = cohomology(&spaces, |d, v| self.coboundary_vec(d, v))?;
        let pc = Arc::new(PerverseComplex {
            perversity: p.clone(),
            spaces,
            cohomology,
        });
        self.perverse
            .lock()
            .expect("cache lock")
            .entry(p.clone())
            .or_insert_with(|| Arc::clone(&pc));
        Ok(pc)
    }

    /// `dim H^k_p̄` for `k = 0..=dim K`.
    pub fn cohomology_dims(&self, p: &Perversity) -> Result<Vec<usize>> {
        Ok(self.perverse(p)?.dims())
    }

    /// Reads off the top-term coordinate of every simplex of `f` (matched by
    /// id) of dimension `c.degree`. On trivially filtered simplices this is
    /// the canonical identification with classical cochains.
    pub fn top_restriction(&self, f: &FaceSet, c: &GlobalSection) -> Result<Cochain> {
        let d = c.degree;
        let mut v = BitVec::zeros(f.count(d));
        for (pos, &t) in f.simplices_of_dim(d).iter().enumerate() {
            let s = self
                .k
                .lookup(f.id(t))
                .ok_or_else(|| Error::UnknownSimplex(f.id(t).to_string()))?;
            let l = self
                .local(s)
                .ok_or_else(|| Error::NotRegular(f.id(t).to_string()))?;
            let idx = self
                .coordinate(d, s, l.top_term())
                .ok_or_else(|| Error::Internal("top term outside its degree".into()))?;
            if c.coords.get(idx) {
                v.set(pos, true);
            }
        }
        f.cochain(d, v)
    }

    /// Extends a classical cochain `u` on `f` to the blow-up: on trivially
    /// filtered simplices with ids in `f` the component is `u` read through
    /// the last factor, elsewhere it is zero. This is a global section when
    /// `u` vanishes on every simplex of `f` that is a face of a simplex
    /// outside `f`.
    pub fn extend_classical(&self, f: &FaceSet, u: &Cochain) -> Result<GlobalSection> {
        let d = u.degree;
        let mut v = BitVec::zeros(self.ambient_dim(d));
        let n = self.n();
        for (r, &s) in self.regular.iter().enumerate() {
            let simplex = self.k.simplex(s);
            let Some(fs) = f.lookup(&simplex.id) else {
                continue;
            };
            if simplex.filtration.blocks()[..n].iter().any(|&j| j != -1) {
                return Err(Error::Component(format!(
                    "{} is not trivially filtered",
                    simplex.id
                )));
            }
            let l = &self.local[r];
            for (i, &t) in l.basis(d).iter().enumerate() {
                let last = l.factor(t, n);
                let keep: Vec<usize> = (0..l.width(n) as usize)
                    .filter(|b| last >> b & 1 == 1)
                    .collect();
                let face = f.face_with_vertices(fs, &keep);
                if f.eval(u, face) {
                    v.set(self.offsets[d][r] + i, true);
                }
            }
        }
        Ok(GlobalSection {
            degree: d,
            coords: v,
        })
    }
}
