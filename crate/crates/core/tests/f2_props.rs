use lensorbit::f2::{image, kernel, quotient_basis, rank, BitMatrix, BitVec, Solver, Subspace};
use proptest::prelude::*;

fn arb_matrix() -> impl Strategy<Value = BitMatrix> {
    (1usize..=9, 1usize..=9).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), c), r).prop_map(move |rows| {
            BitMatrix::from_rows(c, rows.into_iter().map(BitVec::from_bools).collect())
        })
    })
}

/// Size of the column space by listing every combination of columns.
fn column_space_size(m: &BitMatrix) -> usize {
    let mut seen = std::collections::HashSet::new();
    for combo in BitVec::all(m.cols()) {
        seen.insert(format!("{}", m.mul_vec(&combo)));
    }
    seen.len()
}

proptest! {
    #[test]
    fn rank_plus_nullity(m in arb_matrix()) {
        prop_assert_eq!(rank(&m) + kernel(&m).dim(), m.cols());
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
        prop_assert_eq!(1usize << rank(&m), column_space_size(&m));
    }

    #[test]
    fn kernel_and_image_are_right(m in arb_matrix()) {
        for v in kernel(&m).basis() {
            prop_assert!(m.mul_vec(v).is_zero());
        }
        let im = image(&m);
        prop_assert_eq!(im.dim(), rank(&m));
        for j in 0..m.cols() {
            prop_assert!(im.contains(&m.column(j)));
        }
        for combo in BitVec::all(m.cols()) {
            prop_assert!(im.contains(&m.mul_vec(&combo)));
        }
    }

    #[test]
    fn quotient_basis_is_canonical(
        n in 1usize..=8,
        a in prop::collection::vec(any::<u8>(), 0..5),
        b in prop::collection::vec(any::<u8>(), 0..5),
        perm in any::<u64>(),
    ) {
        let vec_of = |x: &u8| BitVec::from_bools((0..n).map(|i| x >> i & 1 == 1));
        let sub = Subspace::span(n, a.iter().map(vec_of));
        let inside = sub.sum(&Subspace::span(n, b.iter().map(vec_of)));
        let q = quotient_basis(&sub, &inside).unwrap();
        prop_assert_eq!(q.len(), inside.dim() - sub.dim());
        let together = Subspace::span(n, sub.basis().iter().cloned().chain(q.iter().cloned()));
        prop_assert_eq!(together.dim(), inside.dim());
        for v in &q {
            prop_assert!(inside.contains(v));
        }
        // another spanning family of the same subspaces gives the same representatives
        let mut shuffled: Vec<BitVec> = inside.basis().to_vec();
        if shuffled.len() > 1 {
            let k = (perm as usize) % shuffled.len();
            shuffled.rotate_left(k);
            let first = shuffled[0].clone();
            for v in shuffled.iter_mut().skip(1) {
                if perm >> 8 & 1 == 1 {
                    v.xor_assign(&first);
                }
            }
        }
        let inside2 = Subspace::span(n, shuffled);
        prop_assert_eq!(quotient_basis(&sub, &inside2).unwrap(), q);
    }

    #[test]
    fn solver_finds_combinations(m in arb_matrix(), combo in any::<u16>()) {
        let family: Vec<BitVec> = (0..m.cols()).map(|j| m.column(j)).collect();
        let s = Solver::new(m.rows(), &family);
        prop_assert_eq!(s.rank(), rank(&m));
        let c = BitVec::from_bools((0..m.cols()).map(|i| combo >> i & 1 == 1));
        let target = m.mul_vec(&c);
        let found = s.solve(&target).unwrap();
        prop_assert_eq!(m.mul_vec(&found), target);
        let outside = BitVec::from_bools((0..m.rows()).map(|i| combo >> (i + 3) & 1 == 1));
        prop_assert_eq!(s.solve(&outside).is_some(), image(&m).contains(&outside));
    }
}
