//! Isolated singularities: the truncated pullback model
//! `N*(W) ⊕_{N*(∂W)} τ_{≤p} N*(∂W)` and its comparison with the blow-up of
//! the coned-off manifold.

use crate::blowup::{Blowup, GlobalSection};
use crate::complex::{ClassicalCohomology, FaceSet};
use crate::error::{Error, Result};
use crate::filtered::{
    boundary_components, cone_off_boundary, ExtendedInt, FilteredFaceSet, Perversity,
};
use crate::gf2::{combine, dependencies, BitMatrix, BitVec, SpanSolver, Subspace};
use crate::squares::{perverse_cohomology, square_matrix};

/// A manifold with boundary `W` and the boundary subcomplex `∂W`.
#[derive(Clone, Debug)]
pub struct IsolatedModel {
    w: FaceSet,
    components: Vec<Vec<usize>>,
    in_boundary: Vec<bool>,
    boundary: FaceSet,
}

impl IsolatedModel {
    pub fn new(w: FaceSet, components: Vec<Vec<usize>>) -> Result<Self> {
        let mut in_boundary = vec![false; w.len()];
        for c in &components {
            for &s in c {
                in_boundary[s] = true;
            }
        }
        let members: Vec<usize> = (0..w.len()).filter(|&s| in_boundary[s]).collect();
        let boundary = w.subcomplex(&members)?;
        Ok(Self {
            w,
            components,
            in_boundary,
            boundary,
        })
    }

    /// Uses the detected boundary components.
    pub fn with_detected_boundary(w: FaceSet) -> Result<Self> {
        let comps = boundary_components(&w);
        Self::new(w, comps)
    }

    pub fn w(&self) -> &FaceSet {
        &self.w
    }

    pub fn boundary(&self) -> &FaceSet {
        &self.boundary
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// The pseudomanifold `M` obtained by coning off every component.
    pub fn coned(&self, n: usize) -> Result<FilteredFaceSet> {
        cone_off_boundary(&self.w, &self.components, n)
    }

    fn boundary_coords(&self, d: usize) -> Vec<usize> {
        self.w
            .simplices_of_dim(d)
            .iter()
            .enumerate()
            .filter(|(_, &s)| self.in_boundary[s])
            .map(|(i, _)| i)
            .collect()
    }

    /// `P^k_p = { α ∈ N^k(W) : ι*α ∈ τ_{≤p} N*(∂W) }`.
    pub fn spaces(&self, p: ExtendedInt) -> Vec<Subspace> {
        let top = self.w.dim().map_or(0, |d| d + 1);
        (0..top)
            .map(|d| {
                let n = self.w.count(d);
                let level = ExtendedInt::Finite(d as i64);
                if level < p {
                    Subspace::full(n)
                } else if level == p {
                    let delta = self.w.coboundary_matrix(d);
                    let rows = self.boundary_coords(d + 1);
                    let images: Vec<BitVec> = (0..n)
                        .map(|c| {
                            let col = delta.column(c);
                            BitVec::from_bools(
                                &rows.iter().map(|&r| col.get(r)).collect::<Vec<_>>(),
                            )
                        })
                        .collect();
                    let units: Vec<BitVec> = (0..n).map(|c| BitVec::unit(n, c)).collect();
                    Subspace::span(
                        n,
                        dependencies(&images).iter().map(|x| combine(&units, x, n)),
                    )
                } else {
                    let on_boundary = self.boundary_coords(d);
                    Subspace::span(
                        n,
                        (0..n)
                            .filter(|c| on_boundary.binary_search(c).is_err())
                            .map(|c| BitVec::unit(n, c)),
                    )
                }
            })
            .collect()
    }

    /// Cohomology of the pullback model for the cone-point perversity `p`.
    pub fn cohomology(&self, p: ExtendedInt) -> ClassicalCohomology {
        self.w.cohomology_of(self.spaces(p))
    }

    /// `Sq^i` in the pullback model, as a matrix `H^k(P_p) → H^{k+i}(P_{L(p,i)})`.
    pub fn square_matrix(&self, p: ExtendedInt, k: usize, i: i64) -> Result<BitMatrix> {
        let src = self.cohomology(p);
        let lifted = lifting(p, i);
        let tgt = self.cohomology(lifted);
        let t = (k as i64 + i).max(0) as usize;
        let cols = (0..src.dim(k))
            .map(|j| {
                let coords = BitVec::unit(src.dim(k), j);
                if i < 0 || i as usize > k {
                    return Ok(BitVec::zeros(tgt.dim(t)));
                }
                let z = self
                    .w
                    .cochain(k, src.degree(k).expect("degree").cocycle(&coords))?;
                let w = self.w.cup_i(&z, &z, k as i64 - i)?;
                match tgt.degree(t) {
                    None if w.is_zero() => Ok(BitVec::zeros(0)),
                    None => Err(Error::Internal("square above the top degree".into())),
                    Some(q) => q
                        .express(&w.coeffs)
                        .ok_or_else(|| Error::Internal("pullback square is not a cocycle".into())),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BitMatrix::from_columns(&cols, tgt.dim(t)))
    }

    /// Dimensions predicted by the three-case formula: `H^k(W)` for
    /// `k ≤ p`, `ker(H^k(W) → H^k(∂W))` for `k = p + 1`, `H^k(W, ∂W)` above.
    pub fn formula_dims(&self, p: ExtendedInt) -> Result<Vec<usize>> {
        let hw = self.w.cohomology();
        let hb = self.boundary.cohomology();
        let members: Vec<usize> = (0..self.w.len()).filter(|&s| self.in_boundary[s]).collect();
        let rel = self.w.relative_cohomology(&members);
        let incl = self
            .w
            .inclusion_from(&self.boundary)
            .ok_or_else(|| Error::Internal("boundary ids missing".into()))?;
        let top = self.w.dim().map_or(0, |d| d + 1);
        (0..top)
            .map(|k| {
                let level = ExtendedInt::Finite(k as i64);
                if level <= p {
                    Ok(hw.dim(k))
                } else if level == p.add_int(1) {
                    let reps = hw.degree(k).expect("degree").representatives();
                    let images = reps
                        .iter()
                        .map(|r| {
                            let z = self.w.cochain(k, r.clone())?;
                            let pulled = self.boundary.pullback(&self.w, &incl, &z)?;
                            Ok(match hb.degree(k) {
                                Some(q) => q.express(&pulled.coeffs).ok_or_else(|| {
                                    Error::Internal("restriction is not a cocycle".into())
                                })?,
                                None => BitVec::zeros(0),
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let rank = Subspace::span(hb.dim(k), images).dim();
                    Ok(hw.dim(k) - rank)
                } else {
                    Ok(rel.dim(k))
                }
            })
            .collect()
    }

    /// An isomorphism `H^k(P_s) → H^k_p̄(M)` where `s = p̄(n)`, built from
    /// restriction to `W` when `k ≤ s + 1` and from extension by zero of
    /// relative cochains when `k > s + 1`.
    pub fn identification(&self, b: &Blowup, p: &Perversity, k: usize) -> Result<BitMatrix> {
        let s = p.value(p.n());
        let hm = perverse_cohomology(b, p, k)?;
        let hp = self.cohomology(s);
        let dim_p = hp.dim(k);
        if hm.dim() != dim_p {
            return Err(Error::Internal(format!(
                "H^{k} has dimension {} in the blow-up but {dim_p} in the pullback model",
                hm.dim()
            )));
        }
        if dim_p == 0 {
            return Ok(BitMatrix::zeros(0, 0));
        }
        let level = ExtendedInt::Finite(k as i64);
        if level <= s.add_int(1) {
            let hw = self.w.cohomology();
            let qw = hw.degree(k).expect("degree");
            let to_w = |v: &BitVec| {
                qw.express(v)
                    .ok_or_else(|| Error::Internal("restriction to W is not a cocycle".into()))
            };
            let blow = hm
                .representatives()
                .iter()
                .map(|r| to_w(&b.top_restriction(&self.w, r)?.coeffs))
                .collect::<Result<Vec<_>>>()?;
            let model = hp
                .degree(k)
                .expect("degree")
                .representatives()
                .iter()
                .map(to_w)
                .collect::<Result<Vec<_>>>()?;
            let solver = SpanSolver::new(&blow, hw.dim(k));
            if Subspace::span(hw.dim(k), blow.iter().cloned()).dim() != dim_p {
                return Err(Error::Internal("restriction to W is not injective".into()));
            }
            let cols = model
                .iter()
                .map(|m| {
                    solver
                        .express(m)
                        .ok_or_else(|| Error::Internal("images in H(W) differ".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(BitMatrix::from_columns(&cols, dim_p))
        } else {
            let members: Vec<usize> = (0..self.w.len()).filter(|&x| self.in_boundary[x]).collect();
            let rel = self.w.relative_cohomology(&members);
            let qr = rel.degree(k).expect("degree");
            let qp = hp.degree(k).expect("degree");
            let mut to_model = Vec::new();
            let mut to_blow = Vec::new();
            for r in qr.representatives() {
                to_model.push(
                    qp.express(r).ok_or_else(|| {
                        Error::Internal("relative class outside the model".into())
                    })?,
                );
                let u = self.w.cochain(k, r.clone())?;
                let ext: GlobalSection = b.extend_classical(&self.w, &u)?;
                to_blow.push(hm.express(&ext).ok_or_else(|| {
                    Error::Internal("extension by zero is not an intersection cocycle".into())
                })?);
            }
            let e_model = BitMatrix::from_columns(&to_model, dim_p);
            let e_blow = BitMatrix::from_columns(&to_blow, dim_p);
            let inv = e_model.inverse().ok_or_else(|| {
                Error::Internal("relative classes do not map isomorphically".into())
            })?;
            if e_blow.rank() != dim_p {
                return Err(Error::Internal(
                    "extension by zero is not an isomorphism".into(),
                ));
            }
            Ok(e_blow.mul(&inv))
        }
    }

    /// Checks `Θ_{k+i} ∘ Sq^i_P = Sq^i_M ∘ Θ_k` for every degree and every
    /// `i` in `is`; returns the number of squares compared.
    pub fn compare_squares(&self, b: &Blowup, p: &Perversity, is: &[i64]) -> Result<usize> {
        let s = p.value(p.n());
        let top = self.w.dim().map_or(0, |d| d + 1);
        let mut count = 0;
        for k in 0..top {
            let theta_k = self.identification(b, p, k)?;
            for &i in is {
                let t = (k as i64 + i).max(0) as usize;
                if t >= top {
                    continue;
                }
                let lifted = p.lifting(i);
                let theta_t = self.identification(b, &lifted, t)?;
                let sq_model = self.square_matrix(s, k, i)?;
                let sq_blow = square_matrix(b, p, k, i)?;
                if sq_model.ncols() != theta_k.ncols() || theta_t.ncols() != sq_model.nrows() {
                    return Err(Error::Internal("dimension mismatch in comparison".into()));
                }
                if theta_t.mul(&sq_model) != sq_blow.mul(&theta_k) {
                    return Err(Error::Internal(format!(
                        "Sq^{i} on H^{k} differs between the blow-up and the pullback model at perversity {p}"
                    )));
                }
                count += 1;
            }
        }
        Ok(count)
    }
}

/// `L(p, i) = min(2p, p + i)` for a single value.
pub fn lifting(p: ExtendedInt, i: i64) -> ExtendedInt {
    std::cmp::min(p.add(p), p.add_int(i))
}
