use perverse_steenrod::blowup::Blowup;
use perverse_steenrod::corpus;
use perverse_steenrod::filtered::{cone, suspension, trivial_filtration, ExtendedInt, Perversity};
use perverse_steenrod::gf2::{BitMatrix, BitVec};
use perverse_steenrod::squares::{perverse_cohomology, square_matrix, steenrod_square};

fn rp2() -> Blowup {
    Blowup::new(trivial_filtration(
        &corpus::projective_plane().to_face_set(),
        2,
    ))
    .unwrap()
}

#[test]
fn rp2_squares() {
    let b = rp2();
    let p = Perversity::zero(2);
    assert_eq!(square_matrix(&b, &p, 1, 1).unwrap(), BitMatrix::identity(1));
    assert_eq!(square_matrix(&b, &p, 2, 0).unwrap(), BitMatrix::identity(1));
    assert!(square_matrix(&b, &p, 1, 2).unwrap().is_zero());
    assert!(square_matrix(&b, &p, 0, 1).unwrap().is_zero());
}

#[test]
fn sq0_is_the_identity() {
    for (label, k) in corpus::filtered_corpus() {
        if label == "cone(rp2xI)" {
            continue;
        }
        let b = Blowup::new(k).unwrap();
        for v in 0..3 {
            let p = Perversity::constant(b.n(), ExtendedInt::Finite(v));
            for deg in 0..b.degree_count() {
                let d = perverse_cohomology(&b, &p, deg).unwrap().dim();
                assert_eq!(
                    square_matrix(&b, &p, deg, 0).unwrap(),
                    BitMatrix::identity(d),
                    "{label} p={p} k={deg}"
                );
            }
        }
    }
}

#[test]
fn top_square_is_the_cup_square() {
    let f = corpus::torus().to_face_set();
    let b = Blowup::new(trivial_filtration(&f, 2)).unwrap();
    let p = Perversity::zero(2);
    let h = perverse_cohomology(&b, &p, 1).unwrap();
    let h2 = perverse_cohomology(&b, &p, 2).unwrap();
    for z in h.representatives() {
        let coords = h.express(&z).unwrap();
        let sq = steenrod_square(&b, &p, 1, &coords, 1).unwrap();
        let cup = perverse_steenrod::cupi::cup_i_global(&b, &z, &z, 0).unwrap();
        assert_eq!(sq.coords, h2.express(&cup).unwrap());
        // the torus has no nonzero squares
        assert!(sq.coords.is_zero());
    }
}

#[test]
fn squares_above_the_degree_vanish() {
    let b = Blowup::new(suspension(&corpus::projective_plane().to_face_set())).unwrap();
    let p = Perversity::zero(3);
    for k in 0..4 {
        let d = perverse_cohomology(&b, &p, k).unwrap().dim();
        for j in 0..d {
            let r = steenrod_square(&b, &p, k, &BitVec::unit(d, j), k as i64 + 1).unwrap();
            assert!(r.coords.is_zero() && r.witness.is_zero());
            let r = steenrod_square(&b, &p, k, &BitVec::unit(d, j), -1).unwrap();
            assert!(r.coords.is_zero());
        }
    }
}

#[test]
fn wrong_class_length_is_an_error() {
    let b = rp2();
    assert!(steenrod_square(&b, &Perversity::zero(2), 1, &BitVec::zeros(3), 1).is_err());
}

#[test]
fn suspension_of_rp2_keeps_the_first_square() {
    let b = Blowup::new(suspension(&corpus::projective_plane().to_face_set())).unwrap();
    let p = Perversity::zero(3);
    assert_eq!(b.cohomology_dims(&p).unwrap(), vec![1, 0, 1, 1]);
    assert_eq!(square_matrix(&b, &p, 2, 1).unwrap(), BitMatrix::identity(1));
}

#[test]
fn cone_squares_restrict_to_the_base() {
    for base in [
        corpus::circle(),
        corpus::torus(),
        corpus::projective_plane(),
    ] {
        let f = base.to_face_set();
        let n = f.dim().unwrap() + 1;
        let b = Blowup::new(cone(&f, n).unwrap()).unwrap();
        let hl = f.cohomology();
        for v in 0..=3 {
            let p = Perversity::constant(n, ExtendedInt::Finite(v));
            for k in 0..=f.dim().unwrap() {
                let h = perverse_cohomology(&b, &p, k).unwrap();
                let expected = if k as i64 <= v { hl.dim(k) } else { 0 };
                assert_eq!(h.dim(), expected);
                for z in h.representatives() {
                    let coords = h.express(&z).unwrap();
                    let r = b.top_restriction(&f, &z).unwrap();
                    for i in 0..=k as i64 {
                        let sq = steenrod_square(&b, &p, k, &coords, i).unwrap();
                        let classical = f.cup_i(&r, &r, k as i64 - i).unwrap();
                        assert_eq!(
                            b.top_restriction(&f, &sq.witness).unwrap().coeffs,
                            classical.coeffs
                        );
                    }
                }
            }
        }
    }
}
