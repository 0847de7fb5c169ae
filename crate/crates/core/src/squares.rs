//! Perverse cohomology presentations, comparison maps and Steenrod squares.

use std::sync::Arc;

use crate::blowup::{Blowup, GlobalSection, PerverseComplex};
use crate::cupi::CupEngine;
use crate::error::{Error, Result};
use crate::filtered::{ExtendedInt, Perversity};
use crate::gf2::{BitMatrix, BitVec, QuotientSpace};

/// A basis of `H^k_p̄` with cocycle representatives and a solver expressing
/// cocycles in that basis.
#[derive(Clone, Debug)]
pub struct CohomologyPresentation {
    pub perversity: Perversity,
    pub degree: usize,
    complex: Arc<PerverseComplex>,
}

impl CohomologyPresentation {
    fn space(&self) -> Option<&QuotientSpace> {
        self.complex.cohomology.get(self.degree)
    }

    pub fn dim(&self) -> usize {
        self.space().map_or(0, QuotientSpace::dim)
    }

    pub fn representatives(&self) -> Vec<GlobalSection> {
        self.space().map_or_else(Vec::new, |q| {
            q.representatives()
                .iter()
                .map(|r| GlobalSection {
                    degree: self.degree,
                    coords: r.clone(),
                })
                .collect()
        })
    }

    /// Canonical cocycle of the class with the given coordinates.
    pub fn cocycle(&self, coords: &BitVec) -> Result<GlobalSection> {
        if coords.len() != self.dim() {
            return Err(Error::ClassLength {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        Ok(match self.space() {
            Some(q) => GlobalSection {
                degree: self.degree,
                coords: q.cocycle(coords),
            },
            None => GlobalSection {
                degree: self.degree,
                coords: BitVec::zeros(0),
            },
        })
    }

    /// Class coordinates of a `p̄`-intersection cocycle, `None` otherwise.
    pub fn express(&self, c: &GlobalSection) -> Option<BitVec> {
        if c.degree != self.degree {
            return None;
        }
        match self.space() {
            Some(q) => {
                if c.coords.len() != q.cocycles().ambient_dim() {
                    return None;
                }
                q.express(&c.coords)
            }
            None => c.coords.is_zero().then(|| BitVec::zeros(0)),
        }
    }

    /// True when `c` is a cocycle of the `p̄`-intersection complex.
    pub fn is_cocycle(&self, c: &GlobalSection) -> bool {
        self.express(c).is_some()
    }

    /// Boundaries `δ(Ñ^{k−1}_p̄)` spanning set.
    pub fn boundary_basis(&self) -> Vec<BitVec> {
        self.space()
            .map_or_else(Vec::new, |q| q.boundaries().basis().to_vec())
    }
}

/// `H^k_p̄(K)`.
pub fn perverse_cohomology(b: &Blowup, p: &Perversity, k: usize) -> Result<CohomologyPresentation> {
    Ok(CohomologyPresentation {
        perversity: p.clone(),
        degree: k,
        complex: b.perverse(p)?,
    })
}

/// Matrix of `H^k_p̄ → H^k_q̄` for `p̄ ≤ q̄`; column `j` is the image of
/// basis class `j`.
pub fn induced_map(b: &Blowup, p: &Perversity, q: &Perversity, k: usize) -> Result<BitMatrix> {
    if !p.le(q) {
        return Err(Error::NotBelow {
            p: p.to_string(),
            q: q.to_string(),
        });
    }
    let hp = perverse_cohomology(b, p, k)?;
    let hq = perverse_cohomology(b, q, k)?;
    let cols = hp
        .representatives()
        .iter()
        .map(|r| {
            hq.express(r).ok_or_else(|| {
                Error::Internal("representative not a cocycle for larger perversity".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BitMatrix::from_columns(&cols, hq.dim()))
}

/// One evaluated square `Sq^i[z]`.
#[derive(Clone, Debug)]
pub struct SquareResult {
    pub degree: usize,
    pub source: BitVec,
    pub i: i64,
    pub target_degree: usize,
    pub target_perversity: Perversity,
    /// Coordinates in `H^{k+i}_{L(p̄,i)}`.
    pub coords: BitVec,
    pub witness: GlobalSection,
    pub witness_degree: Vec<ExtendedInt>,
    /// Coordinates of the image in `H^{k+i}_{2p̄}`.
    pub image_in_2p: BitVec,
}

/// `Sq^i` of the class `class ∈ H^k_p̄`, landing in `H^{k+i}_{L(p̄,i)}`.
///
/// # Errors
/// Input errors for mismatched dimensions; [`Error::Internal`] if the
/// witness fails to be a cocycle or exceeds the perversity bound.
pub fn steenrod_square(
    b: &Blowup,
    p: &Perversity,
    k: usize,
    class: &BitVec,
    i: i64,
) -> Result<SquareResult> {
    steenrod_square_with(CupEngine::Standard, b, p, k, class, i)
}

pub fn steenrod_square_with(
    engine: CupEngine,
    b: &Blowup,
    p: &Perversity,
    k: usize,
    class: &BitVec,
    i: i64,
) -> Result<SquareResult> {
    let src = perverse_cohomology(b, p, k)?;
    let z = src.cocycle(class)?;
    let target_perversity = p.lifting(i);
    let target_degree = (k as i64 + i).max(0) as usize;
    let tgt = perverse_cohomology(b, &target_perversity, target_degree)?;
    let two_p = perverse_cohomology(b, &p.double(), target_degree)?;
    let zero = || SquareResult {
        degree: k,
        source: class.clone(),
        i,
        target_degree,
        target_perversity: target_perversity.clone(),
        coords: BitVec::zeros(tgt.dim()),
        witness: b.zero(target_degree),
        witness_degree: vec![ExtendedInt::NegInf; b.n()],
        image_in_2p: BitVec::zeros(two_p.dim()),
    };
    if i < 0 || i as usize > k || class.is_zero() {
        return Ok(zero());
    }
    let witness = engine.cup_i(b, &z, &z, k as i64 - i)?;
    if !b.coboundary(&witness).is_zero() {
        return Err(Error::Internal(format!(
            "Sq^{i} witness on a degree {k} class is not a cocycle"
        )));
    }
    let witness_degree = b.perverse_degree(&witness);
    if let Some(l) = witness_degree
        .iter()
        .enumerate()
        .find(|(l, &v)| v > target_perversity.value(l + 1))
        .map(|(l, _)| l + 1)
    {
        return Err(Error::Internal(format!(
            "Sq^{i} witness has perverse degree {} > {} at depth {l}",
            witness_degree[l - 1],
            target_perversity.value(l)
        )));
    }
    let coords = tgt
        .express(&witness)
        .ok_or_else(|| Error::Internal("witness is not an intersection cocycle".into()))?;
    let image_in_2p =
        induced_map(b, &target_perversity, &p.double(), target_degree)?.mul_vec(&coords);
    Ok(SquareResult {
        degree: k,
        source: class.clone(),
        i,
        target_degree,
        target_perversity,
        coords,
        witness,
        witness_degree,
        image_in_2p,
    })
}

/// Matrix of `Sq^i: H^k_p̄ → H^{k+i}_{L(p̄,i)}`; column `j` is the image of
/// basis class `j`.
pub fn square_matrix(b: &Blowup, p: &Perversity, k: usize, i: i64) -> Result<BitMatrix> {
    let src = perverse_cohomology(b, p, k)?;
    let target_degree = (k as i64 + i).max(0) as usize;
    let rows = perverse_cohomology(b, &p.lifting(i), target_degree)?.dim();
    let cols = (0..src.dim())
        .map(|j| steenrod_square(b, p, k, &BitVec::unit(src.dim(), j), i).map(|r| r.coords))
        .collect::<Result<Vec<_>>>()?;
    Ok(BitMatrix::from_columns(&cols, rows))
}
