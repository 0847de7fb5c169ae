use perverse_steenrod::gf2::{
    dependencies, rank_and_kernel, solve, BitMatrix, BitVec, QuotientSpace, Subspace,
};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize, bits: &[bool]) -> BitMatrix {
    BitMatrix::from_rows(
        (0..rows)
            .map(|r| {
                BitVec::from_bools(
                    &(0..cols)
                        .map(|c| bits[(r * cols + c) % bits.len()])
                        .collect::<Vec<_>>(),
                )
            })
            .collect(),
        cols,
    )
}

#[test]
fn inverse_examples() {
    let id = BitMatrix::identity(4);
    assert_eq!(id.inverse(), Some(id.clone()));
    // upper unitriangular
    let m = matrix(2, 2, &[true, true, false, true]);
    assert_eq!(m.inverse(), Some(m.clone()));
    assert_eq!(matrix(2, 2, &[true, true, true, true]).inverse(), None);
    assert_eq!(matrix(2, 3, &[true]).inverse(), None);
    assert_eq!(
        BitMatrix::zeros(0, 0).inverse(),
        Some(BitMatrix::zeros(0, 0))
    );
}

proptest! {
    #[test]
    fn inverse_is_two_sided(n in 1usize..9, bits in prop::collection::vec(any::<bool>(), 1..81)) {
        let m = matrix(n, n, &bits);
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(m.rank(), n);
                prop_assert_eq!(m.mul(&inv), BitMatrix::identity(n));
                prop_assert_eq!(inv.mul(&m), BitMatrix::identity(n));
            }
            None => prop_assert!(m.rank() < n),
        }
    }

    #[test]
    fn rank_nullity(r in 1usize..8, c in 1usize..8, bits in prop::collection::vec(any::<bool>(), 1..64)) {
        let m = matrix(r, c, &bits);
        let (rank, kernel) = rank_and_kernel(&m);
        prop_assert_eq!(rank, m.rank());
        prop_assert_eq!(rank, m.transpose().rank());
        prop_assert_eq!(rank + kernel.dim(), c);
        for v in kernel.basis() {
            prop_assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn solve_finds_preimages(r in 1usize..8, c in 1usize..8, bits in prop::collection::vec(any::<bool>(), 1..64), x in prop::collection::vec(any::<bool>(), 8)) {
        let m = matrix(r, c, &bits);
        let x = BitVec::from_bools(&x[..c]);
        let b = m.mul_vec(&x);
        let y = solve(&m, &b).unwrap().expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn dependencies_combine_to_zero(k in 1usize..8, len in 1usize..8, bits in prop::collection::vec(any::<bool>(), 1..64)) {
        let vs: Vec<BitVec> = matrix(k, len, &bits).rows().to_vec();
        let deps = dependencies(&vs);
        let rank = Subspace::span(len, vs.iter().cloned()).dim();
        prop_assert_eq!(deps.len(), k - rank);
        for d in deps {
            let mut acc = BitVec::zeros(len);
            for j in d.ones() {
                acc.xor_assign(&vs[j]);
            }
            prop_assert!(acc.is_zero());
        }
    }

    #[test]
    fn intersection_is_contained_in_both(len in 1usize..8, a in prop::collection::vec(any::<bool>(), 1..40), b in prop::collection::vec(any::<bool>(), 1..40)) {
        let s = Subspace::span(len, matrix(3, len, &a).rows().to_vec());
        let t = Subspace::span(len, matrix(3, len, &b).rows().to_vec());
        let i = s.intersection(&t);
        prop_assert!(i.is_subspace_of(&s) && i.is_subspace_of(&t));
        let sum = Subspace::span(len, s.basis().iter().chain(t.basis()).cloned());
        prop_assert_eq!(sum.dim() + i.dim(), s.dim() + t.dim());
    }

    #[test]
    fn quotient_dimension(len in 1usize..8, a in prop::collection::vec(any::<bool>(), 1..40), b in prop::collection::vec(any::<bool>(), 1..40)) {
        let amb = Subspace::span(len, matrix(4, len, &a).rows().to_vec());
        let sub = amb.intersection(&Subspace::span(len, matrix(2, len, &b).rows().to_vec()));
        let q = QuotientSpace::new(amb.clone(), sub.clone()).unwrap();
        prop_assert_eq!(q.dim(), amb.dim() - sub.dim());
        for (j, r) in q.representatives().iter().enumerate() {
            prop_assert_eq!(q.express(r).unwrap(), BitVec::unit(q.dim(), j));
        }
    }
}
