use std::sync::OnceLock;

use perverse_steenrod::blowup::{Blowup, GlobalSection, LocalCochain, LocalComplex};
use perverse_steenrod::corpus;
use perverse_steenrod::cupi::{cup_i_global, cup_i_local, cup_i_local_reference, CupEngine};
use perverse_steenrod::filtered::{cone, trivial_filtration, FiltrationVector};
use perverse_steenrod::gf2::{combine, BitVec};
use proptest::prelude::*;

const SHAPES: [&[i32]; 7] = [
    &[0, 1],
    &[1, 1],
    &[0, 0, 1],
    &[1, 0, 0],
    &[0, -1, 1],
    &[-1, 0, 1],
    &[2, 0],
];

fn local(shape: usize) -> LocalComplex {
    LocalComplex::new(&FiltrationVector(SHAPES[shape].to_vec()), "s").unwrap()
}

fn pick(l: &LocalComplex, d: usize, bits: &[bool]) -> LocalCochain {
    let d = d % (l.dim() + 1);
    let terms = l
        .basis(d)
        .iter()
        .enumerate()
        .filter(|(j, _)| bits[j % bits.len()])
        .map(|(_, &t)| t)
        .collect();
    LocalCochain::from_terms(0, d, terms)
}

fn coboundary(l: &LocalComplex, c: &LocalCochain) -> LocalCochain {
    let terms = c
        .terms
        .iter()
        .flat_map(|&t| l.coboundary_terms(t))
        .collect();
    LocalCochain::from_terms(c.owner, c.degree + 1, terms)
}

fn sum(parts: &[LocalCochain]) -> Vec<u64> {
    let all = parts.iter().flat_map(|p| p.terms.iter().copied()).collect();
    LocalCochain::from_terms(0, 0, all).terms
}

fn bits() -> impl Strategy<Value = Vec<bool>> {
    prop::collection::vec(any::<bool>(), 1..24)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_matches_reference(shape in 0..SHAPES.len(), d1 in 0usize..5, d2 in 0usize..5, a in bits(), b in bits(), i in 0usize..4) {
        let l = local(shape);
        let (x, y) = (pick(&l, d1, &a), pick(&l, d2, &b));
        let fast = cup_i_local(&l, &x, &y, i as i64).unwrap();
        let slow = cup_i_local_reference(&l, &x, &y, i);
        prop_assert_eq!(fast.terms, slow.terms);
    }

    #[test]
    fn local_leibniz(shape in 0..SHAPES.len(), d1 in 0usize..5, d2 in 0usize..5, a in bits(), b in bits(), i in 0i64..4) {
        let l = local(shape);
        let (x, y) = (pick(&l, d1, &a), pick(&l, d2, &b));
        let (dx, dy) = (coboundary(&l, &x), coboundary(&l, &y));
        let lhs = coboundary(&l, &cup_i_local(&l, &x, &y, i).unwrap());
        let rhs = sum(&[
            cup_i_local(&l, &x, &y, i - 1).unwrap(),
            cup_i_local(&l, &y, &x, i - 1).unwrap(),
            cup_i_local(&l, &dx, &y, i).unwrap(),
            cup_i_local(&l, &x, &dy, i).unwrap(),
        ]);
        prop_assert_eq!(lhs.terms, rhs);
    }

    #[test]
    fn local_niceness(shape in 0..SHAPES.len(), d1 in 0usize..5, d2 in 0usize..5, a in bits(), b in bits()) {
        let l = local(shape);
        let (x, y) = (pick(&l, d1, &a), pick(&l, d2, &b));
        prop_assert_eq!(cup_i_local(&l, &x, &x, x.degree as i64).unwrap().terms, x.terms.clone());
        let above = x.degree.min(y.degree) as i64 + 1;
        prop_assert!(cup_i_local(&l, &x, &y, above).unwrap().is_zero());
        prop_assert!(cup_i_local(&l, &x, &y, -1).unwrap().is_zero());
    }
}

#[test]
fn plain_simplex_agrees_with_classical_cup() {
    // blocks (-1, 1): the local complex is the cochains of an edge
    let l = local_of(&[-1, 1]);
    let f = corpus::interval().to_face_set();
    let b = Blowup::new(trivial_filtration(&f, 1)).unwrap();
    for d1 in 0..=1 {
        for d2 in 0..=1 {
            for x in b.global_sections(d1).basis() {
                for y in b.global_sections(d2).basis() {
                    let (u, v) = (
                        b.section(d1, x.clone()).unwrap(),
                        b.section(d2, y.clone()).unwrap(),
                    );
                    for i in 0..=1 {
                        let lhs = b
                            .top_restriction(&f, &cup_i_global(&b, &u, &v, i).unwrap())
                            .unwrap();
                        let rhs = f
                            .cup_i(
                                &b.top_restriction(&f, &u).unwrap(),
                                &b.top_restriction(&f, &v).unwrap(),
                                i,
                            )
                            .unwrap();
                        assert_eq!(lhs.coeffs, rhs.coeffs);
                    }
                }
            }
        }
    }
    assert_eq!(l.dim(), 1);
    assert_eq!(l.basis(0).len(), 2);
    assert_eq!(l.basis(1).len(), 1);
}

fn local_of(blocks: &[i32]) -> LocalComplex {
    LocalComplex::new(&FiltrationVector(blocks.to_vec()), "s").unwrap()
}

#[test]
fn trivial_filtration_agrees_with_classical_cup() {
    for name in ["rp2", "torus"] {
        let f = corpus::by_name(name).unwrap().to_face_set();
        let b = Blowup::new(trivial_filtration(&f, 2)).unwrap();
        for d1 in 0..=2 {
            for d2 in 0..=(2 - d1) {
                let xs = b.global_sections(d1).basis();
                let ys = b.global_sections(d2).basis();
                for (x, y) in xs.iter().zip(ys.iter().cycle()).take(12) {
                    let (u, v) = (
                        b.section(d1, x.clone()).unwrap(),
                        b.section(d2, y.clone()).unwrap(),
                    );
                    let (tu, tv) = (
                        b.top_restriction(&f, &u).unwrap(),
                        b.top_restriction(&f, &v).unwrap(),
                    );
                    for i in 0..=(d1.min(d2) as i64) {
                        let w = cup_i_global(&b, &u, &v, i).unwrap();
                        assert!(b.is_section(&w));
                        assert_eq!(
                            b.top_restriction(&f, &w).unwrap().coeffs,
                            f.cup_i(&tu, &tv, i).unwrap().coeffs
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn zero_annihilates() {
    let b = Blowup::new(cone(&corpus::circle().to_face_set(), 2).unwrap()).unwrap();
    for d in 0..b.degree_count() {
        for v in b.global_sections(d).basis() {
            let c = b.section(d, v.clone()).unwrap();
            for e in 0..b.degree_count() {
                for i in 0..3 {
                    assert!(cup_i_global(&b, &c, &b.zero(e), i).unwrap().is_zero());
                    assert!(cup_i_global(&b, &b.zero(e), &c, i).unwrap().is_zero());
                }
            }
        }
    }
}

#[test]
fn corrupted_engine_differs() {
    let f = corpus::projective_plane().to_face_set();
    let b = Blowup::new(trivial_filtration(&f, 2)).unwrap();
    let differs = b.global_sections(1).basis().iter().any(|x| {
        b.global_sections(1).basis().iter().any(|y| {
            let (u, v) = (
                b.section(1, x.clone()).unwrap(),
                b.section(1, y.clone()).unwrap(),
            );
            CupEngine::Standard.cup_i(&b, &u, &v, 0).unwrap()
                != CupEngine::Corrupted.cup_i(&b, &u, &v, 0).unwrap()
        })
    });
    assert!(differs);
}

struct Pair {
    small: Blowup,
    big: Blowup,
}

fn pair() -> &'static Pair {
    static CELL: OnceLock<Pair> = OnceLock::new();
    CELL.get_or_init(|| Pair {
        small: Blowup::new(cone(&corpus::circle().to_face_set(), 3).unwrap()).unwrap(),
        big: Blowup::new(cone(&corpus::projective_plane().to_face_set(), 3).unwrap()).unwrap(),
    })
}

/// Restriction along the inclusion of the cone on the circle 0.1.2 into the
/// cone on the projective plane, read coordinate by coordinate.
fn restrict(p: &Pair, c: &GlobalSection) -> GlobalSection {
    let d = c.degree;
    let coords = (0..p.small.ambient_dim(d)).map(|j| {
        let (s, t) = p.small.coordinate_info(d, j);
        let id = &p.small.complex().simplex(s).id;
        let big = p.big.complex().lookup(id).expect("shared id");
        c.coords
            .get(p.big.coordinate(d, big, t).expect("shared term"))
    });
    GlobalSection {
        degree: d,
        coords: BitVec::from_bools(&coords.collect::<Vec<_>>()),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn naturality_under_inclusion(d1 in 0usize..3, d2 in 0usize..3, a in bits(), b in bits(), i in 0i64..3) {
        let p = pair();
        let section = |d: usize, bits: &[bool]| {
            let g = p.big.global_sections(d);
            let coeffs = BitVec::from_bools(&(0..g.dim()).map(|j| bits[j % bits.len()]).collect::<Vec<_>>());
            p.big.section(d, combine(g.basis(), &coeffs, p.big.ambient_dim(d))).unwrap()
        };
        let (u, v) = (section(d1, &a), section(d2, &b));
        let (ru, rv) = (restrict(p, &u), restrict(p, &v));
        prop_assert!(p.small.is_section(&ru));
        let lhs = restrict(p, &cup_i_global(&p.big, &u, &v, i).unwrap());
        let rhs = cup_i_global(&p.small, &ru, &rv, i).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
