//! Perverse cup_i products on the blow-up via the iterated E(2) diagonal.
//!
//! On a tensor basis pair `(x, y)` the factor-wise cups are forced: factor
//! `k` can only contribute through `∪_{i_k}` with `i_k = |x_k ∩ y_k| − 1`,
//! so exactly one diagonal partition is relevant and the product of two
//! basis elements is either zero or `x ∪ y` (union of vertex sets in every
//! factor).

use crate::blowup::{Blowup, GlobalSection, LocalCochain, LocalComplex};
use crate::complex::{simplex_cup_coefficient, simplex_cup_enumerated};
use crate::error::{Error, Result};
use crate::gf2::BitVec;

/// Generators `e_i`, `τ_i` of the bar resolution of the order-two group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum E2Generator {
    E(usize),
    Tau(usize),
}

impl E2Generator {
    pub fn index(self) -> usize {
        match self {
            Self::E(i) | Self::Tau(i) => i,
        }
    }

    /// `d e_i = d τ_i = e_{i−1} + τ_{i−1}`.
    pub fn boundary(self) -> Vec<E2Generator> {
        match self.index() {
            0 => Vec::new(),
            i => vec![Self::E(i - 1), Self::Tau(i - 1)],
        }
    }

    /// Left multiplication by `τ`.
    pub fn act(self) -> Self {
        match self {
            Self::E(i) => Self::Tau(i),
            Self::Tau(i) => Self::E(i),
        }
    }

    fn twisted(self) -> bool {
        matches!(self, Self::Tau(_))
    }
}

/// A summand `e_{i_1} ⊗ τ^{i_1} e_{i_2} ⊗ ⋯` of the iterated diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupPartition {
    pub parts: Vec<usize>,
    /// `twists[k]` is the parity of `i_1 + ⋯ + i_{k−1}`.
    pub twists: Vec<bool>,
}

/// All weak compositions of `i` into `m` parts, in decreasing lexicographic
/// order of the parts.
pub fn diagonal_partitions(i: usize, m: usize) -> Vec<CupPartition> {
    fn rec(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=rest).rev() {
            cur.push(a);
            rec(rest - a, slots - 1, cur, out);
            cur.pop();
        }
    }
    assert!(m >= 1, "at least one factor");
    let mut parts = Vec::new();
    rec(i, m, &mut Vec::new(), &mut parts);
    parts
        .into_iter()
        .map(|p| {
            let mut acc = 0;
            let twists = p
                .iter()
                .map(|&x| {
                    let t = acc % 2 == 1;
                    acc += x;
                    t
                })
                .collect();
            CupPartition { parts: p, twists }
        })
        .collect()
}

/// Which factor-wise cup to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CupEngine {
    #[default]
    Standard,
    /// Deliberately wrong `∪_0` (ignores the order of the cut), used to
    /// check that the verification suite detects broken products.
    Corrupted,
}

impl CupEngine {
    fn factor_cup(self, f: u64, g: u64, i: usize) -> bool {
        match self {
            Self::Standard => simplex_cup_coefficient(f, g, i),
            Self::Corrupted if i == 0 => (f & g).count_ones() == 1,
            Self::Corrupted => simplex_cup_coefficient(f, g, i),
        }
    }

    /// Coefficient of `x|y` in `gen · (x ⊗ y)` for basis terms.
    fn term_cup(self, l: &LocalComplex, x: u64, y: u64, gen: E2Generator) -> Option<u64> {
        let i = gen.index();
        let mut used = 0usize;
        for k in 0..=l.n() {
            let (a, b) = (l.factor(x, k), l.factor(y, k));
            let overlap = (a & b).count_ones() as usize;
            if overlap == 0 {
                return None;
            }
            let ik = overlap - 1;
            let swap = (used % 2 == 1) != gen.twisted();
            let (f, g) = if swap { (b, a) } else { (a, b) };
            if !self.factor_cup(f, g, ik) {
                return None;
            }
            used += ik;
            if used > i {
                return None;
            }
        }
        (used == i).then_some(x | y)
    }

    /// `gen · (c ⊗ c')` on one simplex.
    pub fn cup_local_generator(
        self,
        l: &LocalComplex,
        c: &LocalCochain,
        c2: &LocalCochain,
        gen: E2Generator,
    ) -> Result<LocalCochain> {
        if c.owner != c2.owner {
            return Err(Error::CarrierMismatch);
        }
        let degree = (c.degree + c2.degree).saturating_sub(gen.index());
        if gen.index() > c.degree.min(c2.degree) {
            return Ok(LocalCochain::from_terms(c.owner, degree, Vec::new()));
        }
        let mut terms = Vec::new();
        for &x in &c.terms {
            for &y in &c2.terms {
                if let Some(t) = self.term_cup(l, x, y, gen) {
                    terms.push(t);
                }
            }
        }
        Ok(LocalCochain::from_terms(c.owner, degree, terms))
    }

    /// `c ∪_i c'` on one simplex; zero for `i < 0`.
    pub fn cup_i_local(
        self,
        l: &LocalComplex,
        c: &LocalCochain,
        c2: &LocalCochain,
        i: i64,
    ) -> Result<LocalCochain> {
        if i < 0 {
            if c.owner != c2.owner {
                return Err(Error::CarrierMismatch);
            }
            return Ok(LocalCochain::from_terms(
                c.owner,
                (c.degree + c2.degree) + (-i) as usize,
                Vec::new(),
            ));
        }
        self.cup_local_generator(l, c, c2, E2Generator::E(i as usize))
    }

    /// `gen · (c ⊗ c')` simplex by simplex.
    pub fn cup_generator(
        self,
        b: &Blowup,
        c: &GlobalSection,
        c2: &GlobalSection,
        gen: E2Generator,
    ) -> Result<GlobalSection> {
        let i = gen.index();
        let degree = (c.degree + c2.degree).saturating_sub(i);
        if i > c.degree.min(c2.degree) {
            return Ok(b.zero(degree));
        }
        let mut v = BitVec::zeros(b.ambient_dim(degree));
        if v.is_empty() {
            return Ok(b.zero(degree));
        }
        for &s in b.regular() {
            let l = b.local(s).expect("regular");
            let x = b.local_cochain(c, s)?;
            let y = b.local_cochain(c2, s)?;
            if x.is_zero() || y.is_zero() {
                continue;
            }
            for t in self.cup_local_generator(l, &x, &y, gen)?.terms {
                let idx = b
                    .coordinate(degree, s, t)
                    .ok_or_else(|| Error::Internal("cup term outside basis".into()))?;
                v.flip(idx);
            }
        }
        Ok(GlobalSection { degree, coords: v })
    }

    /// `c ∪_i c'`, zero when `i < 0` or `i > min(|c|, |c'|)`.
    pub fn cup_i(
        self,
        b: &Blowup,
        c: &GlobalSection,
        c2: &GlobalSection,
        i: i64,
    ) -> Result<GlobalSection> {
        if i < 0 {
            return Ok(b.zero(c.degree + c2.degree + (-i) as usize));
        }
        self.cup_generator(b, c, c2, E2Generator::E(i as usize))
    }
}

/// `c ∪_i c'` on one simplex with the standard engine.
pub fn cup_i_local(
    l: &LocalComplex,
    c: &LocalCochain,
    c2: &LocalCochain,
    i: i64,
) -> Result<LocalCochain> {
    CupEngine::Standard.cup_i_local(l, c, c2, i)
}

/// `c ∪_i c'` on global sections with the standard engine.
pub fn cup_i_global(
    b: &Blowup,
    c: &GlobalSection,
    c2: &GlobalSection,
    i: i64,
) -> Result<GlobalSection> {
    CupEngine::Standard.cup_i(b, c, c2, i)
}

/// Reference `c ∪_i c'` on one simplex: sums over every diagonal partition
/// and evaluates each factor cup by interval-cut enumeration.
pub fn cup_i_local_reference(
    l: &LocalComplex,
    c: &LocalCochain,
    c2: &LocalCochain,
    i: usize,
) -> LocalCochain {
    let m = l.n() + 1;
    let degree = (c.degree + c2.degree).saturating_sub(i);
    let mut terms = Vec::new();
    for part in diagonal_partitions(i, m) {
        for &x in &c.terms {
            for &y in &c2.terms {
                let mut partial: Vec<Vec<u64>> = vec![Vec::new()];
                for k in 0..m {
                    let (a, b) = (l.factor(x, k), l.factor(y, k));
                    let (f, g) = if part.twists[k] { (b, a) } else { (a, b) };
                    let faces = simplex_cup_enumerated(f, g, part.parts[k], l.width(k) as usize);
                    partial = partial
                        .iter()
                        .flat_map(|p| {
                            faces.iter().map(move |&h| {
                                let mut q = p.clone();
                                q.push(h);
                                q
                            })
                        })
                        .collect();
                }
                terms.extend(partial.iter().map(|fs| l.term(fs)));
            }
        }
    }
    LocalCochain::from_terms(c.owner, degree, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtered::FiltrationVector;

    #[test]
    fn partition_examples() {
        let p = diagonal_partitions(0, 4);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].parts, vec![0; 4]);
        assert!(p[0].twists.iter().all(|t| !t));
        let p = diagonal_partitions(1, 2);
        assert_eq!(p[0].parts, vec![1, 0]);
        assert_eq!(p[0].twists, vec![false, true]);
        assert_eq!(p[1].parts, vec![0, 1]);
        assert_eq!(p[1].twists, vec![false, false]);
        assert_eq!(diagonal_partitions(2, 3).len(), 6);
    }

    #[test]
    fn generator_boundary() {
        assert_eq!(
            E2Generator::E(3).boundary(),
            vec![E2Generator::E(2), E2Generator::Tau(2)]
        );
        assert!(E2Generator::Tau(0).boundary().is_empty());
        assert_eq!(E2Generator::Tau(1).act(), E2Generator::E(1));
    }

    #[test]
    fn closed_form_matches_reference_on_small_simplices() {
        for blocks in [
            vec![0, 0],
            vec![1, 0],
            vec![0, 1],
            vec![-1, 2],
            vec![0, -1, 1],
            vec![1, 1],
        ] {
            let l = LocalComplex::new(&FiltrationVector(blocks.clone()), "s").unwrap();
            for d1 in 0..=l.dim() {
                for d2 in 0..=l.dim() {
                    for &x in l.basis(d1) {
                        for &y in l.basis(d2) {
                            for i in 0..=d1.min(d2) {
                                let a = LocalCochain::from_terms(0, d1, vec![x]);
                                let b = LocalCochain::from_terms(0, d2, vec![y]);
                                let fast = cup_i_local(&l, &a, &b, i as i64).unwrap();
                                let slow = cup_i_local_reference(&l, &a, &b, i);
                                assert_eq!(
                                    fast.terms, slow.terms,
                                    "{blocks:?} {x:#b} {y:#b} i={i}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn single_factor_reduces_to_classical() {
        let l = LocalComplex::new(&FiltrationVector(vec![-1, 1]), "s").unwrap();
        let u0 = l.term(&[1, 0b01]);
        let u1 = l.term(&[1, 0b10]);
        let e = l.term(&[1, 0b11]);
        let a = LocalCochain::from_terms(0, 0, vec![u0]);
        let b = LocalCochain::from_terms(0, 1, vec![e]);
        assert_eq!(cup_i_local(&l, &a, &b, 0).unwrap().terms, vec![e]);
        let c = LocalCochain::from_terms(0, 0, vec![u1]);
        assert!(cup_i_local(&l, &c, &b, 0).unwrap().is_zero());
        assert_eq!(cup_i_local(&l, &b, &c, 0).unwrap().terms, vec![e]);
    }
}
