//! Randomized and exhaustive checks of the perverse cup_i structure and of
//! the Steenrod squares built from it.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blowup::{Blowup, GlobalSection};
use crate::cupi::{cup_i_local_reference, CupEngine, E2Generator};
use crate::error::{Error, Result};
use crate::filtered::{ExtendedInt, Perversity};
use crate::gf2::BitVec;
use crate::squares::{induced_map, perverse_cohomology, steenrod_square_with, SquareResult};

pub const CHECK_NAMES: [&str; 16] = [
    "Leibniz",
    "niceness",
    "top-commutativity",
    "equivariance",
    "subadditivity",
    "perversity contract",
    "coboundary squared",
    "monotonicity",
    "bound",
    "factorization",
    "Sq^0 identity",
    "top square",
    "representative independence",
    "Cartan",
    "Adem Sq^1Sq^1",
    "Adem Sq^1Sq^2",
];

/// Knobs for [`verify_suite`].
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random section pairs for the cochain-level identities.
    pub pairs: usize,
    /// Inclusive range of class degrees for the cohomological checks.
    pub degrees: Option<(usize, usize)>,
    /// Perversities to use; constants `-1..n` when absent.
    pub perversities: Option<Vec<Perversity>>,
    pub engine: CupEngine,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            pairs: 200,
            degrees: None,
            perversities: None,
            engine: CupEngine::Standard,
        }
    }
}

/// Outcome of one named property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// The smallest failing case found.
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// All checks run on one complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub label: String,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.label)?;
        for c in &self.checks {
            if c.passed() {
                writeln!(f, "  PASS {} ({} cases)", c.name, c.cases)?;
            } else {
                writeln!(
                    f,
                    "  FAIL {} ({} of {} cases): {}",
                    c.name,
                    c.failures,
                    c.cases,
                    c.witness.as_deref().unwrap_or("")
                )?;
            }
        }
        Ok(())
    }
}

struct Tally {
    name: &'static str,
    cases: usize,
    failures: usize,
    best: Option<(usize, String)>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            failures: 0,
            best: None,
        }
    }

    /// Records one case; `size` orders failing witnesses.
    fn record(&mut self, size: usize, outcome: std::result::Result<(), String>) {
        self.cases += 1;
        if let Err(msg) = outcome {
            self.failures += 1;
            if self.best.as_ref().is_none_or(|(s, _)| size < *s) {
                self.best = Some((size, msg));
            }
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            witness: self.best.map(|(_, m)| m),
        }
    }
}

/// Constant perversities `-1, 0, …, n-1`.
pub fn default_perversities(n: usize) -> Vec<Perversity> {
    (-1..n as i64)
        .map(|v| Perversity::constant(n, ExtendedInt::Finite(v)))
        .collect()
}

fn label_seed(seed: u64, label: &str) -> u64 {
    label.bytes().fold(seed ^ 0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3)
    })
}

fn describe(b: &Blowup, c: &GlobalSection) -> String {
    let terms: Vec<String> = c
        .coords
        .ones()
        .map(|x| {
            let (s, t) = b.coordinate_info(c.degree, x);
            format!("{}:{:#b}", b.complex().simplex(s).id, t)
        })
        .collect();
    format!("deg {} [{}]", c.degree, terms.join(" "))
}

fn random_in(rng: &mut ChaCha8Rng, basis: &[BitVec], len: usize) -> BitVec {
    let mut v = BitVec::zeros(len);
    for x in basis {
        if rng.gen::<bool>() {
            v.xor_assign(x);
        }
    }
    v
}

fn random_section(b: &Blowup, rng: &mut ChaCha8Rng, d: usize) -> GlobalSection {
    let g = b.global_sections(d);
    GlobalSection {
        degree: d,
        coords: random_in(rng, g.basis(), b.ambient_dim(d)),
    }
}

fn random_admissible(
    b: &Blowup,
    p: &Perversity,
    rng: &mut ChaCha8Rng,
    d: usize,
) -> Result<GlobalSection> {
    let sub = b.intersection_subcomplex(p, d)?;
    Ok(GlobalSection {
        degree: d,
        coords: random_in(rng, sub.basis(), b.ambient_dim(d)),
    })
}

/// Sum of the nonzero parts; `None` when every part vanishes. Parts of
/// formally negative degree come back from the cup as zero and are skipped.
fn sum_nonzero(parts: &[&GlobalSection]) -> Option<GlobalSection> {
    let mut out: Option<GlobalSection> = None;
    for p in parts.iter().filter(|p| !p.is_zero()) {
        out = Some(match out {
            None => (*p).clone(),
            Some(o) => o.add(p),
        });
    }
    out.filter(|o| !o.is_zero())
}

fn err_string(e: Error) -> String {
    e.to_string()
}

/// Nonzero class coordinates: every class when `dim ≤ 5`, basis classes
/// otherwise.
fn classes(dim: usize) -> Vec<BitVec> {
    if dim == 0 {
        Vec::new()
    } else if dim <= 5 {
        (1u64..1 << dim)
            .map(|m| BitVec::from_indices(dim, (0..dim).filter(|b| m >> b & 1 == 1)))
            .collect()
    } else {
        (0..dim).map(|j| BitVec::unit(dim, j)).collect()
    }
}

struct Suite<'a> {
    b: &'a Blowup,
    cfg: &'a VerifyConfig,
    perversities: Vec<Perversity>,
    degrees: Vec<usize>,
    rng: ChaCha8Rng,
}

impl Suite<'_> {
    fn cup(&self, u: &GlobalSection, v: &GlobalSection, i: i64) -> Result<GlobalSection> {
        self.cfg.engine.cup_i(self.b, u, v, i)
    }

    fn top_degree(&self) -> usize {
        self.b.degree_count().saturating_sub(1)
    }

    fn cochain_identities(&mut self) -> Vec<CheckResult> {
        let b = self.b;
        let mut leibniz = Tally::new("Leibniz");
        let mut nice = Tally::new("niceness");
        let mut topc = Tally::new("top-commutativity");
        let mut equiv = Tally::new("equivariance");
        let mut sub = Tally::new("subadditivity");
        let mut dd = Tally::new("coboundary squared");
        let degs = b.degree_count();
        if degs == 0 {
            return [leibniz, nice, topc, equiv, sub, dd]
                .into_iter()
                .map(Tally::finish)
                .collect();
        }
        for _ in 0..self.cfg.pairs {
            let du = self.rng.gen_range(0..degs);
            let dv = self.rng.gen_range(0..degs);
            let u = random_section(b, &mut self.rng, du);
            let v = random_section(b, &mut self.rng, dv);
            let size = u.coords.count_ones() + v.coords.count_ones();
            let (delta_u, delta_v) = (b.coboundary(&u), b.coboundary(&v));
            dd.record(u.coords.count_ones(), {
                let ddu = b.coboundary(&delta_u);
                if ddu.is_zero() {
                    Ok(())
                } else {
                    Err(format!("δδu ≠ 0 for u = {}", describe(b, &u)))
                }
            });
            let ambient = BitVec::from_indices(
                b.ambient_dim(du),
                (0..b.ambient_dim(du)).filter(|_| self.rng.gen::<bool>()),
            );
            dd.record(ambient.count_ones(), {
                let x = GlobalSection {
                    degree: du,
                    coords: ambient,
                };
                if b.coboundary(&b.coboundary(&x)).is_zero() {
                    Ok(())
                } else {
                    Err(format!("δδx ≠ 0 for x = {}", describe(b, &x)))
                }
            });
            for i in 0..=(du.min(dv) as i64 + 1) {
                leibniz.record(size, self.leibniz_case(&u, &v, &delta_u, &delta_v, i));
                sub.record(size, self.subadditivity_case(&u, &v, i));
                equiv.record(size, self.equivariance_case(&u, &v, i as usize));
            }
            nice.record(u.coords.count_ones(), {
                self.cup(&u, &u, du as i64)
                    .map_err(err_string)
                    .and_then(|w| {
                        if w == u {
                            Ok(())
                        } else {
                            Err(format!("u ∪_{du} u ≠ u for u = {}", describe(b, &u)))
                        }
                    })
            });
            nice.record(size, self.vanishing_case(&u, &v));
            if du == dv {
                topc.record(size, {
                    let (a, c) = (self.cup(&u, &v, du as i64), self.cup(&v, &u, du as i64));
                    match (a, c) {
                        (Ok(a), Ok(c)) if a == c => Ok(()),
                        (Ok(_), Ok(_)) => Err(format!(
                            "u ∪_{du} v ≠ v ∪_{du} u for u = {}, v = {}",
                            describe(b, &u),
                            describe(b, &v)
                        )),
                        (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
                    }
                });
            }
        }
        [leibniz, nice, topc, equiv, sub, dd]
            .into_iter()
            .map(Tally::finish)
            .collect()
    }

    fn leibniz_case(
        &self,
        u: &GlobalSection,
        v: &GlobalSection,
        du: &GlobalSection,
        dv: &GlobalSection,
        i: i64,
    ) -> std::result::Result<(), String> {
        let run = || -> Result<bool> {
            let lhs = self.b.coboundary(&self.cup(u, v, i)?);
            let rhs = sum_nonzero(&[
                &self.cup(u, v, i - 1)?,
                &self.cup(v, u, i - 1)?,
                &self.cup(du, v, i)?,
                &self.cup(u, dv, i)?,
            ]);
            Ok(match rhs {
                None => lhs.is_zero(),
                Some(r) => r == lhs,
            })
        };
        match run() {
            Ok(true) => Ok(()),
            Ok(false) => Err(format!(
                "δ(u ∪_{i} v) differs from the Leibniz sum for u = {}, v = {}",
                describe(self.b, u),
                describe(self.b, v)
            )),
            Err(e) => Err(e.to_string()),
        }
    }

    fn subadditivity_case(
        &self,
        u: &GlobalSection,
        v: &GlobalSection,
        i: i64,
    ) -> std::result::Result<(), String> {
        let w = self.cup(u, v, i).map_err(err_string)?;
        let (pu, pv, pw) = (
            self.b.perverse_degree(u),
            self.b.perverse_degree(v),
            self.b.perverse_degree(&w),
        );
        match (0..pw.len()).find(|&l| pw[l] > pu[l].add(pv[l])) {
            None => Ok(()),
            Some(l) => Err(format!(
                "‖u ∪_{i} v‖_{} = {} exceeds {} + {} for u = {}, v = {}",
                l + 1,
                pw[l],
                pu[l],
                pv[l],
                describe(self.b, u),
                describe(self.b, v)
            )),
        }
    }

    fn equivariance_case(
        &self,
        u: &GlobalSection,
        v: &GlobalSection,
        i: usize,
    ) -> std::result::Result<(), String> {
        let e = self.cfg.engine;
        let twisted = e
            .cup_generator(self.b, u, v, E2Generator::Tau(i))
            .map_err(err_string)?;
        let swapped = e
            .cup_generator(self.b, v, u, E2Generator::E(i))
            .map_err(err_string)?;
        if twisted == swapped {
            Ok(())
        } else {
            Err(format!(
                "τ_{i}(u ⊗ v) ≠ e_{i}(v ⊗ u) for u = {}, v = {}",
                describe(self.b, u),
                describe(self.b, v)
            ))
        }
    }

    /// `u ∪_i v = 0` for `i > min(|u|, |v|)`, evaluated through the full
    /// partition sum so the vanishing is not short-circuited.
    fn vanishing_case(
        &self,
        u: &GlobalSection,
        v: &GlobalSection,
    ) -> std::result::Result<(), String> {
        let b = self.b;
        let i = u.degree.min(v.degree) + 1;
        for &s in b.regular() {
            let l = b.local(s).expect("regular");
            let x = b.local_cochain(u, s).map_err(err_string)?;
            let y = b.local_cochain(v, s).map_err(err_string)?;
            if !cup_i_local_reference(l, &x, &y, i).is_zero() {
                return Err(format!(
                    "u ∪_{i} v ≠ 0 on {} for u = {}, v = {}",
                    b.complex().simplex(s).id,
                    describe(b, u),
                    describe(b, v)
                ));
            }
        }
        Ok(())
    }

    fn perversity_checks(&mut self) -> Vec<CheckResult> {
        let b = self.b;
        let mut contract = Tally::new("perversity contract");
        let mut mono = Tally::new("monotonicity");
        let degs = b.degree_count();
        let ps = self.perversities.clone();
        for p in &ps {
            for q in &ps {
                if p.le(q) {
                    for d in 0..degs {
                        mono.record(d, {
                            match (b.perverse(p), b.perverse(q)) {
                                (Ok(a), Ok(c)) if a.spaces[d].is_subspace_of(&c.spaces[d]) => {
                                    Ok(())
                                }
                                (Ok(_), Ok(_)) => Err(format!("Ñ^{d}_{{{p}}} ⊄ Ñ^{d}_{{{q}}}")),
                                (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
                            }
                        });
                    }
                }
                if degs == 0 {
                    continue;
                }
                let Ok(pq) = p.sum(q) else { continue };
                for _ in 0..4 {
                    let da = self.rng.gen_range(0..degs);
                    let db = self.rng.gen_range(0..degs);
                    let i = self.rng.gen_range(0..=da.min(db)) as i64;
                    let case = (|| -> Result<std::result::Result<(), String>> {
                        let c = random_admissible(b, p, &mut self.rng, da)?;
                        let c2 = random_admissible(b, q, &mut self.rng, db)?;
                        let w = self.cup(&c, &c2, i)?;
                        if w.degree >= degs
                            || b.intersection_subcomplex(&pq, w.degree)?
                                .contains(&w.coords)
                        {
                            Ok(Ok(()))
                        } else {
                            Ok(Err(format!(
                                "c ∪_{i} c' ∉ Ñ_{{{pq}}} for c = {} in Ñ_{{{p}}}, c' = {} in Ñ_{{{q}}}",
                                describe(b, &c),
                                describe(b, &c2)
                            )))
                        }
                    })();
                    contract.record(da + db, case.unwrap_or_else(|e| Err(e.to_string())));
                }
            }
        }
        vec![contract.finish(), mono.finish()]
    }

    fn square(&self, p: &Perversity, k: usize, x: &BitVec, i: i64) -> Result<SquareResult> {
        steenrod_square_with(self.cfg.engine, self.b, p, k, x, i)
    }

    /// `z ∪_{k−i} z` for an arbitrary cocycle `z` of degree `k`.
    fn witness_of(&self, z: &GlobalSection, i: i64) -> Result<GlobalSection> {
        let k = z.degree as i64;
        if i < 0 || i > k {
            return Ok(self.b.zero((k + i).max(0) as usize));
        }
        self.cup(z, z, k - i)
    }

    fn square_checks(&mut self) -> Vec<CheckResult> {
        let b = self.b;
        let mut bound = Tally::new("bound");
        let mut fact = Tally::new("factorization");
        let mut sq0 = Tally::new("Sq^0 identity");
        let mut topsq = Tally::new("top square");
        let mut rep = Tally::new("representative independence");
        let top = self.top_degree();
        for p in self.perversities.clone() {
            for &k in &self.degrees.clone() {
                let Ok(h) = perverse_cohomology(b, &p, k) else {
                    continue;
                };
                for x in classes(h.dim()) {
                    let size = x.count_ones();
                    for i in 0..=(top.saturating_sub(k) as i64).min(k as i64) {
                        let res = self.square(&p, k, &x, i);
                        let res = match res {
                            Ok(r) => r,
                            Err(e) => {
                                bound.record(
                                    size,
                                    Err(format!("Sq^{i} on H^{k}_{{{p}}} class {x}: {e}")),
                                );
                                continue;
                            }
                        };
                        let lift = p.lifting(i);
                        bound.record(size, {
                            match res
                                .witness_degree
                                .iter()
                                .enumerate()
                                .find(|(l, &v)| v > lift.value(l + 1))
                            {
                                None => Ok(()),
                                Some((l, v)) => Err(format!(
                                    "Sq^{i} on H^{k}_{{{p}}} class {x}: ‖witness‖_{} = {v} > {}",
                                    l + 1,
                                    lift.value(l + 1)
                                )),
                            }
                        });
                        fact.record(size, {
                            perverse_cohomology(b, &p.double(), res.target_degree)
                                .map_err(err_string)
                                .and_then(|h2| match h2.express(&res.witness) {
                                    Some(c) if c == res.image_in_2p => Ok(()),
                                    Some(c) => Err(format!(
                                        "Sq^{i} on H^{k}_{{{p}}} class {x}: direct class {c} in H_2p̄ differs from {}",
                                        res.image_in_2p
                                    )),
                                    None => Err(format!(
                                        "Sq^{i} on H^{k}_{{{p}}} class {x}: witness is not a 2p̄-cocycle"
                                    )),
                                })
                        });
                        if i == 0 {
                            sq0.record(size, self.sq0_case(&p, k, &x, &res));
                        }
                        if i == k as i64 {
                            topsq.record(size, self.top_square_case(&p, k, &x, &res));
                        }
                        rep.record(size, self.representative_case(&p, k, &x, i, &res));
                    }
                }
            }
        }
        [bound, fact, sq0, topsq, rep]
            .into_iter()
            .map(Tally::finish)
            .collect()
    }

    /// The canonical cocycle of `x`, read in `H_{L(p̄,0)}`, has the same
    /// class as `Sq^0 x`.
    fn sq0_case(
        &self,
        p: &Perversity,
        k: usize,
        x: &BitVec,
        res: &SquareResult,
    ) -> std::result::Result<(), String> {
        let run = || -> Result<Option<BitVec>> {
            let z = perverse_cohomology(self.b, p, k)?.cocycle(x)?;
            Ok(perverse_cohomology(self.b, &res.target_perversity, k)?.express(&z))
        };
        match run() {
            Ok(Some(c)) if c == res.coords => Ok(()),
            Ok(Some(c)) => Err(format!(
                "Sq^0 on H^{k}_{{{p}}} sends class {x} to {} instead of {c}",
                res.coords
            )),
            Ok(None) => Err(format!(
                "class {x} of H^{k}_{{{p}}} has no image in the Sq^0 target"
            )),
            Err(e) => Err(e.to_string()),
        }
    }

    fn top_square_case(
        &self,
        p: &Perversity,
        k: usize,
        x: &BitVec,
        res: &SquareResult,
    ) -> std::result::Result<(), String> {
        let run = || -> Result<bool> {
            let z = perverse_cohomology(self.b, p, k)?.cocycle(x)?;
            let prod = self.cup(&z, &z, 0)?;
            let tgt = perverse_cohomology(self.b, &res.target_perversity, res.target_degree)?;
            Ok(tgt.express(&prod).as_ref() == Some(&res.coords))
        };
        match run() {
            Ok(true) => Ok(()),
            Ok(false) => Err(format!("Sq^{k} on H^{k}_{{{p}}} class {x} is not x ∪ x")),
            Err(e) => Err(e.to_string()),
        }
    }

    fn representative_case(
        &mut self,
        p: &Perversity,
        k: usize,
        x: &BitVec,
        i: i64,
        res: &SquareResult,
    ) -> std::result::Result<(), String> {
        let run = |s: &mut Self| -> Result<std::result::Result<(), String>> {
            let h = perverse_cohomology(s.b, p, k)?;
            let z = h.cocycle(x)?;
            let shift = random_in(&mut s.rng, &h.boundary_basis(), s.b.ambient_dim(k));
            if shift.is_zero() {
                return Ok(Ok(()));
            }
            let z2 = GlobalSection {
                degree: k,
                coords: z.coords.xor(&shift),
            };
            let w = s.witness_of(&z2, i)?;
            let tgt = perverse_cohomology(s.b, &res.target_perversity, res.target_degree)?;
            Ok(match tgt.express(&w) {
                Some(c) if c == res.coords => Ok(()),
                Some(c) => Err(format!(
                    "Sq^{i} on H^{k}_{{{p}}} class {x}: representative {} gives {c}, canonical gives {}",
                    describe(s.b, &z2),
                    res.coords
                )),
                None => Err(format!(
                    "Sq^{i} on H^{k}_{{{p}}} class {x}: witness of {} is not an intersection cocycle",
                    describe(s.b, &z2)
                )),
            })
        };
        run(self).unwrap_or_else(|e| Err(e.to_string()))
    }

    fn cartan(&mut self) -> CheckResult {
        let b = self.b;
        let mut t = Tally::new("Cartan");
        let top = self.top_degree();
        let ps = self.perversities.clone();
        let degrees = self.degrees.clone();
        for p in &ps {
            for q in &ps {
                let Ok(pq) = p.sum(q) else { continue };
                for &a in &degrees {
                    for &c in &degrees {
                        if a + c > top {
                            continue;
                        }
                        let (Ok(hp), Ok(hq)) =
                            (perverse_cohomology(b, p, a), perverse_cohomology(b, q, c))
                        else {
                            continue;
                        };
                        for xj in 0..hp.dim() {
                            for yj in 0..hq.dim() {
                                let x = BitVec::unit(hp.dim(), xj);
                                let y = BitVec::unit(hq.dim(), yj);
                                for i in 0..=(top - (a + c)).min(a + c) as i64 {
                                    let case = self.cartan_case(p, q, &pq, a, c, &x, &y, i);
                                    t.record(a + c, case.unwrap_or_else(|e| Err(e.to_string())));
                                }
                            }
                        }
                    }
                }
            }
        }
        t.finish()
    }

    #[allow(clippy::too_many_arguments)]
    fn cartan_case(
        &self,
        p: &Perversity,
        q: &Perversity,
        pq: &Perversity,
        a: usize,
        c: usize,
        x: &BitVec,
        y: &BitVec,
        i: i64,
    ) -> Result<std::result::Result<(), String>> {
        let b = self.b;
        let zx = perverse_cohomology(b, p, a)?.cocycle(x)?;
        let zy = perverse_cohomology(b, q, c)?.cocycle(y)?;
        let prod = self.cup(&zx, &zy, 0)?;
        let lhs = self.witness_of(&prod, i)?;
        let mut rhs = b.zero(lhs.degree);
        for s in 0..=i {
            let wx = self.witness_of(&zx, s)?;
            let wy = self.witness_of(&zy, i - s)?;
            rhs = rhs.add(&self.cup(&wx, &wy, 0)?);
        }
        let r = pq.lifting(i);
        let h = perverse_cohomology(b, &r, lhs.degree)?;
        Ok(match h.express(&lhs.add(&rhs)) {
            Some(d) if d.is_zero() => Ok(()),
            Some(d) => Err(format!(
                "Sq^{i}(xy) − Σ Sq^s x Sq^{{i−s}} y = {d} in H^{}_{{{r}}} for x = {x} in H^{a}_{{{p}}}, y = {y} in H^{c}_{{{q}}}",
                lhs.degree
            )),
            None => Err(format!(
                "Cartan difference is not a cocycle of Ñ_{{{r}}} for x = {x} in H^{a}_{{{p}}}, y = {y} in H^{c}_{{{q}}}"
            )),
        })
    }

    fn adem(&mut self) -> Vec<CheckResult> {
        let b = self.b;
        let mut a11 = Tally::new("Adem Sq^1Sq^1");
        let mut a12 = Tally::new("Adem Sq^1Sq^2");
        let top = self.top_degree();
        for p in self.perversities.clone() {
            for &k in &self.degrees.clone() {
                let Ok(h) = perverse_cohomology(b, &p, k) else {
                    continue;
                };
                for x in classes(h.dim()) {
                    if k + 2 <= top {
                        let case = (|| -> Result<std::result::Result<(), String>> {
                            let y = self.square(&p, k, &x, 1)?;
                            let z = self.square(&y.target_perversity, k + 1, &y.coords, 1)?;
                            Ok(if z.coords.is_zero() {
                                Ok(())
                            } else {
                                Err(format!(
                                    "Sq^1Sq^1 of class {x} in H^{k}_{{{p}}} is {}",
                                    z.coords
                                ))
                            })
                        })();
                        a11.record(x.count_ones(), case.unwrap_or_else(|e| Err(e.to_string())));
                    }
                    if k + 3 <= top && k >= 1 {
                        let case = self.adem_12(&p, k, &x);
                        a12.record(x.count_ones(), case.unwrap_or_else(|e| Err(e.to_string())));
                    }
                }
            }
        }
        vec![a11.finish(), a12.finish()]
    }

    /// `Sq^1Sq^2 x = Sq^3 x`, compared in `max(r̄, L(p̄,3))` with
    /// `r̄ = min(4p̄, 2p̄+1, p̄+3)`.
    fn adem_12(
        &self,
        p: &Perversity,
        k: usize,
        x: &BitVec,
    ) -> Result<std::result::Result<(), String>> {
        let b = self.b;
        let y = self.square(p, k, x, 2)?;
        let lhs = self.square(&y.target_perversity, k + 2, &y.coords, 1)?;
        let rhs = self.square(p, k, x, 3)?;
        let r = p
            .double()
            .double()
            .meet(&p.double().shift(1))?
            .meet(&p.shift(3))?;
        let target = r.join(&rhs.target_perversity)?;
        let to_r = induced_map(b, &lhs.target_perversity, &r, k + 3)?;
        let to_t = induced_map(b, &r, &target, k + 3)?;
        let from_rhs = induced_map(b, &rhs.target_perversity, &target, k + 3)?;
        let l = to_t.mul_vec(&to_r.mul_vec(&lhs.coords));
        let rr = from_rhs.mul_vec(&rhs.coords);
        Ok(if l == rr {
            Ok(())
        } else {
            Err(format!(
                "Sq^1Sq^2 x = {l} but Sq^3 x = {rr} in H^{}_{{{target}}} for x = {x} in H^{k}_{{{p}}}",
                k + 3
            ))
        })
    }
}

/// Runs every check on one complex.
pub fn verify_suite(label: &str, b: &Blowup, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let perversities = match &cfg.perversities {
        Some(ps) => {
            for p in ps {
                if p.n() != b.n() {
                    return Err(Error::FormalDimension {
                        expected: b.n(),
                        found: p.n(),
                    });
                }
            }
            ps.clone()
        }
        None => default_perversities(b.n()),
    };
    let top = b.degree_count();
    let degrees = match cfg.degrees {
        Some((lo, hi)) => (lo..=hi).filter(|&d| d < top).collect(),
        None => (0..top).collect(),
    };
    let mut suite = Suite {
        b,
        cfg,
        perversities,
        degrees,
        rng: ChaCha8Rng::seed_from_u64(label_seed(cfg.seed, label)),
    };
    let mut checks = suite.cochain_identities();
    checks.extend(suite.perversity_checks());
    checks.extend(suite.square_checks());
    checks.push(suite.cartan());
    checks.extend(suite.adem());
    let order = |c: &CheckResult| {
        CHECK_NAMES
            .iter()
            .position(|n| *n == c.name)
            .unwrap_or(usize::MAX)
    };
    checks.sort_by_key(order);
    Ok(VerifyReport {
        label: label.to_string(),
        checks,
    })
}
