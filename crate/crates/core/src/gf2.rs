//! Exact linear algebra over GF(2).
//!
//! Vectors are bit-packed into `u64` words and every reduction produces the
//! canonical reduced row echelon form, with the pivot of a vector being its
//! lowest set index. Kernels, solutions and quotient representatives are
//! therefore deterministic.

use std::fmt;

use crate::error::Gf2Error;

const WORD: usize = 64;

/// A vector over GF(2) of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    pub fn unit(len: usize, bit: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(bit, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector with the given indices set. Repeated indices cancel.
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest set index, the pivot convention used throughout.
    pub fn leading_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Iterates over the set indices in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * WORD + t)
                }
            })
        })
    }

    /// Copies `len` bits starting at `start` into a new vector.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        BitVec::from_indices(
            len,
            self.ones()
                .filter(|&i| i >= start && i < start + len)
                .map(|i| i - start),
        )
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec(")?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, "]")
    }
}

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    rows: Vec<BitVec>,
    cols: usize,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![BitVec::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
            cols: n,
        }
    }

    /// # Panics
    /// Panics if some row does not have length `cols`.
    pub fn from_rows(rows: Vec<BitVec>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        Self { rows, cols }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[BitVec], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for i in c.ones() {
                m.rows[i].set(j, true);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_indices(
            self.nrows(),
            (0..self.nrows()).filter(|&r| self.rows[r].get(c)),
        )
    }

    pub fn columns(&self) -> Vec<BitVec> {
        self.transpose().rows
    }

    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        BitVec::from_bools(&self.rows.iter().map(|r| r.dot(v)).collect::<Vec<_>>())
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.nrows(), "dimension mismatch in mul");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVec::zeros(other.cols);
                for k in r.ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        BitMatrix::from_rows(rows, other.cols)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    pub fn rank(&self) -> usize {
        rref(self.rows.clone()).len()
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<BitMatrix> {
        let n = self.nrows();
        if n != self.cols {
            return None;
        }
        let augmented: Vec<BitVec> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.concat(&BitVec::unit(n, i)))
            .collect();
        let reduced = rref(augmented);
        if reduced.len() != n
            || reduced
                .iter()
                .any(|r| r.leading_one().is_none_or(|p| p >= n))
        {
            return None;
        }
        Some(BitMatrix::from_rows(
            reduced.iter().map(|r| r.slice(n, n)).collect(),
            n,
        ))
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Reduced row echelon form of the given rows. Zero rows are dropped and the
/// result is sorted by pivot.
pub fn rref(mut rows: Vec<BitVec>) -> Vec<BitVec> {
    let mut pivots: Vec<(usize, BitVec)> = Vec::new();
    for mut v in rows.drain(..) {
        for (p, row) in &pivots {
            if v.get(*p) {
                v.xor_assign(row);
            }
        }
        if let Some(p) = v.leading_one() {
            for (_, row) in pivots.iter_mut() {
                if row.get(p) {
                    row.xor_assign(&v);
                }
            }
            pivots.push((p, v));
        }
    }
    pivots.sort_by_key(|(p, _)| *p);
    pivots.into_iter().map(|(_, v)| v).collect()
}

/// A linear subspace of GF(2)^ambient_dim held by its reduced echelon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<BitVec>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: (0..ambient_dim)
                .map(|i| BitVec::unit(ambient_dim, i))
                .collect(),
        }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient_dim: usize, vectors: impl IntoIterator<Item = BitVec>) -> Self {
        let vs: Vec<BitVec> = vectors.into_iter().collect();
        assert!(
            vs.iter().all(|v| v.len() == ambient_dim),
            "vector length does not match ambient dimension"
        );
        Self {
            ambient_dim,
            basis: rref(vs),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|b| b.leading_one().expect("basis vectors are nonzero"))
            .collect()
    }

    /// Reduces `v` modulo the subspace: the result has zeros at all pivots.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut out = v.clone();
        for b in &self.basis {
            let p = b.leading_one().expect("basis vectors are nonzero");
            if out.get(p) {
                out.xor_assign(b);
            }
        }
        out
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        v.len() == self.ambient_dim && self.reduce(v).is_zero()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        // x in self with x also in other: combinations of self.basis whose
        // reduction modulo `other` vanishes.
        let reduced: Vec<BitVec> = self.basis.iter().map(|b| other.reduce(b)).collect();
        let combos = dependencies(&reduced);
        Subspace::span(
            self.ambient_dim,
            combos
                .iter()
                .map(|c| combine(&self.basis, c, self.ambient_dim)),
        )
    }
}

/// `Σ_j coeffs[j] · vectors[j]`.
pub fn combine(vectors: &[BitVec], coeffs: &BitVec, len: usize) -> BitVec {
    let mut acc = BitVec::zeros(len);
    for j in coeffs.ones() {
        acc.xor_assign(&vectors[j]);
    }
    acc
}

/// Basis of the relation space `{ x : Σ_j x_j v_j = 0 }`, reduced echelon.
pub fn dependencies(vectors: &[BitVec]) -> Vec<BitVec> {
    let m = vectors.len();
    let mut pivots: Vec<(usize, BitVec, BitVec)> = Vec::new();
    let mut relations = Vec::new();
    for (j, v) in vectors.iter().enumerate() {
        let mut v = v.clone();
        let mut combo = BitVec::unit(m, j);
        for (p, row, rc) in &pivots {
            if v.get(*p) {
                v.xor_assign(row);
                combo.xor_assign(rc);
            }
        }
        match v.leading_one() {
            Some(p) => pivots.push((p, v, combo)),
            None => relations.push(combo),
        }
    }
    rref(relations)
}

/// Rank and kernel of `m`. The kernel basis is in reduced echelon form.
pub fn rank_and_kernel(m: &BitMatrix) -> (usize, Subspace) {
    let reduced = rref(m.rows.clone());
    let rank = reduced.len();
    let pivots: Vec<usize> = reduced
        .iter()
        .map(|r| r.leading_one().expect("nonzero"))
        .collect();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let kernel = (0..m.cols).filter(|&c| !is_pivot[c]).map(|free| {
        let mut v = BitVec::unit(m.cols, free);
        for (row, &p) in reduced.iter().zip(&pivots) {
            if row.get(free) {
                v.set(p, true);
            }
        }
        v
    });
    (rank, Subspace::span(m.cols, kernel))
}

/// Solves `m · x = b`, returning the echelon-canonical solution (free
/// variables zero), or `None` when the system is inconsistent.
pub fn solve(m: &BitMatrix, b: &BitVec) -> Result<Option<BitVec>, Gf2Error> {
    if b.len() != m.nrows() {
        return Err(Gf2Error::DimensionMismatch {
            expected: m.nrows(),
            found: b.len(),
        });
    }
    let augmented: Vec<BitVec> = m
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.concat(&BitVec::zeros(1));
            if b.get(i) {
                row.set(m.cols, true);
            }
            row
        })
        .collect();
    let reduced = rref(augmented);
    let mut x = BitVec::zeros(m.cols);
    for row in &reduced {
        let p = row.leading_one().expect("nonzero");
        if p == m.cols {
            return Ok(None);
        }
        if row.get(m.cols) {
            x.set(p, true);
        }
    }
    Ok(Some(x))
}

/// Coset representatives of `amb / sub`. The representatives are the
/// reduced echelon basis of the complement of `sub` in `amb` consisting of
/// vectors that vanish at every pivot of `sub`.
pub fn quotient_basis(sub: &Subspace, amb: &Subspace) -> Result<Vec<BitVec>, Gf2Error> {
    if sub.ambient_dim != amb.ambient_dim {
        return Err(Gf2Error::DimensionMismatch {
            expected: amb.ambient_dim,
            found: sub.ambient_dim,
        });
    }
    if let Some(i) = sub.basis.iter().position(|b| !amb.contains(b)) {
        return Err(Gf2Error::NotContained { index: i });
    }
    let reps = rref(amb.basis.iter().map(|b| sub.reduce(b)).collect());
    debug_assert_eq!(reps.len(), amb.dim() - sub.dim());
    Ok(reps)
}

/// Expresses vectors as combinations of a fixed generating list.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    generators: usize,
    len: usize,
    rows: Vec<(usize, BitVec, BitVec)>,
}

impl SpanSolver {
    pub fn new(generators: &[BitVec], len: usize) -> Self {
        let m = generators.len();
        let mut rows: Vec<(usize, BitVec, BitVec)> = Vec::new();
        for (j, g) in generators.iter().enumerate() {
            assert_eq!(g.len(), len, "generator length mismatch");
            let mut v = g.clone();
            let mut combo = BitVec::unit(m, j);
            for (p, row, rc) in &rows {
                if v.get(*p) {
                    v.xor_assign(row);
                    combo.xor_assign(rc);
                }
            }
            if let Some(p) = v.leading_one() {
                rows.push((p, v, combo));
            }
        }
        Self {
            generators: m,
            len,
            rows,
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Coefficients `x` with `Σ x_j g_j = v`, or `None` if `v` is outside the
    /// span.
    pub fn express(&self, v: &BitVec) -> Option<BitVec> {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut v = v.clone();
        let mut combo = BitVec::zeros(self.generators);
        for (p, row, rc) in &self.rows {
            if v.get(*p) {
                v.xor_assign(row);
                combo.xor_assign(rc);
            }
        }
        v.is_zero().then_some(combo)
    }
}

/// `Z / B` for a cochain complex presented by subspaces of a common ambient
/// coordinate space, with canonical representatives.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    cocycles: Subspace,
    boundaries: Subspace,
    representatives: Vec<BitVec>,
    solver: SpanSolver,
}

impl QuotientSpace {
    pub fn new(cocycles: Subspace, boundaries: Subspace) -> Result<Self, Gf2Error> {
        let representatives = quotient_basis(&boundaries, &cocycles)?;
        let generators: Vec<BitVec> = representatives
            .iter()
            .chain(boundaries.basis())
            .cloned()
            .collect();
        let solver = SpanSolver::new(&generators, cocycles.ambient_dim());
        Ok(Self {
            cocycles,
            boundaries,
            representatives,
            solver,
        })
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[BitVec] {
        &self.representatives
    }

    pub fn cocycles(&self) -> &Subspace {
        &self.cocycles
    }

    pub fn boundaries(&self) -> &Subspace {
        &self.boundaries
    }

    /// Class coordinates of a cocycle, `None` if `z` is not a cocycle.
    pub fn express(&self, z: &BitVec) -> Option<BitVec> {
        self.solver.express(z).map(|c| c.slice(0, self.dim()))
    }

    /// Cocycle representing the class with the given coordinates.
    pub fn cocycle(&self, coords: &BitVec) -> BitVec {
        combine(&self.representatives, coords, self.cocycles.ambient_dim())
    }
}

/// Cohomology of a cochain complex given by δ-stable subspaces
/// `spaces[d] ⊆ GF(2)^{a_d}` and the ambient coboundary `delta(d, v)`.
pub fn cohomology(
    spaces: &[Subspace],
    delta: impl Fn(usize, &BitVec) -> BitVec,
) -> Result<Vec<QuotientSpace>, Gf2Error> {
    let images: Vec<Vec<BitVec>> = spaces
        .iter()
        .enumerate()
        .map(|(d, s)| s.basis().iter().map(|b| delta(d, b)).collect())
        .collect();
    (0..spaces.len())
        .map(|d| {
            let space = &spaces[d];
            let cocycles = Subspace::span(
                space.ambient_dim(),
                dependencies(&images[d])
                    .iter()
                    .map(|c| combine(space.basis(), c, space.ambient_dim())),
            );
            let boundaries = if d == 0 {
                Subspace::zero(space.ambient_dim())
            } else {
                Subspace::span(space.ambient_dim(), images[d - 1].iter().cloned())
            };
            QuotientSpace::new(cocycles, boundaries)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[u8]]) -> BitMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        BitMatrix::from_rows(
            rows.iter()
                .map(|r| BitVec::from_bools(&r.iter().map(|&b| b == 1).collect::<Vec<_>>()))
                .collect(),
            cols,
        )
    }

    fn v(bits: &[u8]) -> BitVec {
        BitVec::from_bools(&bits.iter().map(|&b| b == 1).collect::<Vec<_>>())
    }

    #[test]
    fn identity_has_full_rank() {
        let (r, k) = rank_and_kernel(&BitMatrix::identity(3));
        assert_eq!(r, 3);
        assert_eq!(k.dim(), 0);
    }

    #[test]
    fn all_ones_two_by_two() {
        let (r, k) = rank_and_kernel(&m(&[&[1, 1], &[1, 1]]));
        assert_eq!(r, 1);
        assert_eq!(k.basis(), &[v(&[1, 1])]);
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let (r, k) = rank_and_kernel(&BitMatrix::zeros(4, 5));
        assert_eq!(r, 0);
        assert_eq!(k.dim(), 5);
    }

    #[test]
    fn solve_examples() {
        let id = BitMatrix::identity(3);
        assert_eq!(solve(&id, &v(&[1, 0, 1])).unwrap(), Some(v(&[1, 0, 1])));
        let z = BitMatrix::zeros(3, 2);
        assert_eq!(solve(&z, &v(&[0, 0, 0])).unwrap(), Some(v(&[0, 0])));
        assert_eq!(solve(&z, &v(&[0, 1, 0])).unwrap(), None);
        assert!(matches!(
            solve(&z, &v(&[0, 1])),
            Err(Gf2Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn solve_sets_free_variables_to_zero() {
        // x0 + x1 = 1 has canonical solution (1, 0).
        let a = m(&[&[1, 1]]);
        assert_eq!(solve(&a, &v(&[1])).unwrap(), Some(v(&[1, 0])));
    }

    #[test]
    fn quotient_examples() {
        let amb = Subspace::full(2);
        assert!(quotient_basis(&amb, &amb).unwrap().is_empty());
        let reps = quotient_basis(&Subspace::zero(2), &amb).unwrap();
        assert_eq!(reps, vec![v(&[1, 0]), v(&[0, 1])]);

        let amb = Subspace::span(2, [v(&[1, 0]), v(&[1, 1])]);
        let sub = Subspace::span(2, [v(&[1, 1])]);
        let reps = quotient_basis(&sub, &amb).unwrap();
        assert_eq!(reps.len(), 1);
        // exhaustive over GF(2)^2: the rep together with (1,1) spans all 4 vectors
        let mut seen = std::collections::BTreeSet::new();
        for a in [false, true] {
            for b in [false, true] {
                let mut x = BitVec::zeros(2);
                if a {
                    x.xor_assign(&reps[0]);
                }
                if b {
                    x.xor_assign(&v(&[1, 1]));
                }
                seen.insert(x);
            }
        }
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn quotient_rejects_non_subspace() {
        let amb = Subspace::span(2, [v(&[1, 0])]);
        let sub = Subspace::span(2, [v(&[0, 1])]);
        assert!(matches!(
            quotient_basis(&sub, &amb),
            Err(Gf2Error::NotContained { .. })
        ));
    }

    #[test]
    fn span_solver_and_intersection() {
        let gens = [v(&[1, 1, 0]), v(&[0, 1, 1])];
        let s = SpanSolver::new(&gens, 3);
        assert_eq!(s.express(&v(&[1, 0, 1])), Some(v(&[1, 1])));
        assert_eq!(s.express(&v(&[1, 0, 0])), None);
        let a = Subspace::span(3, gens.clone());
        let b = Subspace::span(3, [v(&[1, 0, 1]), v(&[0, 0, 1])]);
        let i = a.intersection(&b);
        assert_eq!(i.basis(), &[v(&[1, 0, 1])]);
    }

    fn arb_matrix() -> impl Strategy<Value = BitMatrix> {
        (1usize..9, 1usize..9).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(
                move |rows| {
                    BitMatrix::from_rows(rows.iter().map(|x| BitVec::from_bools(x)).collect(), c)
                },
            )
        })
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(mat in arb_matrix()) {
            let (rank, ker) = rank_and_kernel(&mat);
            prop_assert_eq!(rank + ker.dim(), mat.ncols());
            for k in ker.basis() {
                prop_assert!(mat.mul_vec(k).is_zero());
            }
            prop_assert_eq!(rref(ker.basis().to_vec()), ker.basis().to_vec());
        }

        #[test]
        fn rank_is_transpose_invariant(mat in arb_matrix()) {
            prop_assert_eq!(mat.rank(), mat.transpose().rank());
        }

        #[test]
        fn solve_round_trips(mat in arb_matrix(), seed in any::<u64>()) {
            let b = BitVec::from_indices(
                mat.nrows(),
                (0..mat.nrows()).filter(|i| (seed >> (i % 64)) & 1 == 1),
            );
            if let Some(x) = solve(&mat, &b).unwrap() {
                prop_assert_eq!(mat.mul_vec(&x), b);
            } else {
                // inconsistent: b must lie outside the column space
                let cs = Subspace::span(mat.nrows(), mat.columns());
                prop_assert!(!cs.contains(&b));
            }
        }
    }
}
