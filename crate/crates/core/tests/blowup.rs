use std::sync::OnceLock;

use perverse_steenrod::blowup::{Blowup, GlobalSection};
use perverse_steenrod::corpus;
use perverse_steenrod::filtered::{trivial_filtration, ExtendedInt, Perversity};
use perverse_steenrod::gf2::{combine, BitVec};
use proptest::prelude::*;

fn singular() -> &'static [(String, Blowup)] {
    static CELL: OnceLock<Vec<(String, Blowup)>> = OnceLock::new();
    CELL.get_or_init(|| {
        corpus::filtered_corpus()
            .into_iter()
            .filter(|(l, _)| !l.starts_with("trivial") && l != "cone(rp2xI)")
            .map(|(l, k)| (l, Blowup::new(k).unwrap()))
            .collect()
    })
}

fn random_section(b: &Blowup, d: usize, bits: &[bool]) -> GlobalSection {
    let g = b.global_sections(d);
    let coeffs = BitVec::from_bools(
        &(0..g.dim())
            .map(|j| bits[j % bits.len()])
            .collect::<Vec<_>>(),
    );
    b.section(d, combine(g.basis(), &coeffs, b.ambient_dim(d)))
        .unwrap()
}

fn random_in(b: &Blowup, p: &Perversity, d: usize, bits: &[bool]) -> GlobalSection {
    let s = b.intersection_subcomplex(p, d).unwrap();
    let coeffs = BitVec::from_bools(
        &(0..s.dim())
            .map(|j| bits[j % bits.len()])
            .collect::<Vec<_>>(),
    );
    b.section(d, combine(s.basis(), &coeffs, b.ambient_dim(d)))
        .unwrap()
}

fn arb_perversity(n: usize) -> impl Strategy<Value = Perversity> {
    prop::collection::vec(
        prop_oneof![
            (-2i64..4).prop_map(ExtendedInt::Finite),
            Just(ExtendedInt::PosInf)
        ],
        n,
    )
    .prop_map(|v| Perversity::new(v).unwrap())
}

#[test]
fn trivial_sections_are_classical_cochains() {
    for name in ["circle", "torus", "rp2", "mobius"] {
        let f = corpus::by_name(name).unwrap().to_face_set();
        let b = Blowup::new(trivial_filtration(&f, 2)).unwrap();
        for d in 0..=2 {
            assert_eq!(b.global_sections(d).dim(), f.count(d), "{name} degree {d}");
        }
        assert_eq!(
            b.cohomology_dims(&Perversity::zero(2)).unwrap(),
            f.cohomology().dims()
        );
    }
}

#[test]
fn coboundary_commutes_with_top_restriction() {
    let f = corpus::projective_plane().to_face_set();
    let b = Blowup::new(trivial_filtration(&f, 2)).unwrap();
    for d in 0..2 {
        for v in b.global_sections(d).basis() {
            let c = b.section(d, v.clone()).unwrap();
            let lhs = b.top_restriction(&f, &b.coboundary(&c)).unwrap();
            let rhs = f.coboundary(&b.top_restriction(&f, &c).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn extension_then_restriction_is_identity() {
    let f = corpus::torus().to_face_set();
    let b = Blowup::new(trivial_filtration(&f, 2)).unwrap();
    for d in 0..=2 {
        for &s in f.simplices_of_dim(d) {
            let u = f.dual(s);
            let c = b.extend_classical(&f, &u).unwrap();
            assert!(b.is_section(&c));
            assert_eq!(b.top_restriction(&f, &c).unwrap(), u);
        }
    }
}

#[test]
fn infinite_perversity_keeps_every_section() {
    for (label, b) in singular() {
        let inf = Perversity::infinite(b.n());
        for d in 0..b.degree_count() {
            let g = b.global_sections(d);
            let s = b.intersection_subcomplex(&inf, d).unwrap();
            assert_eq!(s.dim(), g.dim(), "{label} degree {d}");
            assert!(s.is_subspace_of(g));
        }
    }
}

#[test]
fn sections_satisfy_the_equalizer() {
    for (_, b) in singular() {
        for d in 0..b.degree_count() {
            let m = b.equalizer_matrix(d);
            for v in b.global_sections(d).basis() {
                assert!(m.mul_vec(v).is_zero());
            }
        }
    }
}

#[test]
fn wrong_perversity_length_is_rejected() {
    let (_, b) = &singular()[0];
    assert!(b.cohomology_dims(&Perversity::zero(b.n() + 1)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn coboundary_squares_to_zero(s in 0usize..4, d in 0usize..4, bits in prop::collection::vec(any::<bool>(), 1..40)) {
        let (_, b) = &singular()[s];
        let d = d % b.degree_count();
        let c = random_section(b, d, &bits);
        let dc = b.coboundary(&c);
        prop_assert!(b.is_section(&dc));
        prop_assert!(b.coboundary(&dc).is_zero());
    }

    #[test]
    fn perverse_degree_of_sum_is_at_most_the_max(s in 0usize..4, d in 0usize..4, a in prop::collection::vec(any::<bool>(), 1..40), c in prop::collection::vec(any::<bool>(), 1..40)) {
        let (_, b) = &singular()[s];
        let d = d % b.degree_count();
        let (x, y) = (random_section(b, d, &a), random_section(b, d, &c));
        let (dx, dy, dxy) = (b.perverse_degree(&x), b.perverse_degree(&y), b.perverse_degree(&x.add(&y)));
        for l in 0..b.n() {
            prop_assert!(dxy[l] <= dx[l].max(dy[l]));
        }
    }

    #[test]
    fn maximal_simplices_suffice(s in 0usize..4, d in 0usize..4, bits in prop::collection::vec(any::<bool>(), 1..40)) {
        let (_, b) = &singular()[s];
        let d = d % b.degree_count();
        let c = random_section(b, d, &bits);
        prop_assert_eq!(b.perverse_degree_over(&c, b.maximal_regular()), b.perverse_degree(&c));
    }

    #[test]
    fn intersection_cochains_are_admissible((s, p) in (0usize..4).prop_flat_map(|s| (Just(s), arb_perversity(singular()[s].1.n()))), d in 0usize..4, bits in prop::collection::vec(any::<bool>(), 1..40)) {
        let (_, b) = &singular()[s];
        let d = d % b.degree_count();
        let c = random_in(b, &p, d, &bits);
        prop_assert!(b.is_admissible(&c, &p));
        let dc = b.coboundary(&c);
        prop_assert!(b.is_admissible(&dc, &p));
        if d + 1 < b.degree_count() {
            prop_assert!(b.intersection_subcomplex(&p, d + 1).unwrap().contains(&dc.coords));
        }
    }

    #[test]
    fn intersection_spaces_grow_with_the_perversity((s, p, q) in (0usize..4).prop_flat_map(|s| { let n = singular()[s].1.n(); (Just(s), arb_perversity(n), arb_perversity(n)) }), d in 0usize..4) {
        let (_, b) = &singular()[s];
        let d = d % b.degree_count();
        let lo = p.meet(&q).unwrap();
        let small = b.intersection_subcomplex(&lo, d).unwrap();
        let big = b.intersection_subcomplex(&p, d).unwrap();
        prop_assert!(small.is_subspace_of(&big));
    }
}
