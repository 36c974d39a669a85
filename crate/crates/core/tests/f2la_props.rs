mod common;

use common::{naive_mul, naive_rank};
use proptest::prelude::*;
use qec_core::f2la::{self, alist, F2Matrix, F2Vec};

fn sized(r: usize, c: usize) -> impl Strategy<Value = F2Matrix> {
    proptest::collection::vec(any::<bool>(), r * c).prop_map(move |bits| {
        let mut m = F2Matrix::zeros(r, c);
        for (i, b) in bits.into_iter().enumerate() {
            m.set(i / c, i % c, b);
        }
        m
    })
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = F2Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| sized(r, c))
}

fn vector(len: usize) -> impl Strategy<Value = F2Vec> {
    proptest::collection::vec(any::<bool>(), len).prop_map(|b| F2Vec::from_bools(&b))
}

proptest! {
    #[test]
    fn rank_matches_naive(m in matrix(12, 128)) {
        prop_assert_eq!(f2la::rank(&m), naive_rank(&m));
        prop_assert_eq!(f2la::rank(&m), f2la::rank(&m.transpose()));
    }

    #[test]
    fn mul_vec_matches_naive((m, v) in matrix(10, 70).prop_flat_map(|m| { let c = m.cols(); (Just(m), vector(c)) })) {
        prop_assert_eq!(m.mul_vec(&v).unwrap(), naive_mul(&m, &v));
        prop_assert_eq!(m.transpose().vec_mul(&v).unwrap(), naive_mul(&m, &v));
    }

    #[test]
    fn matrix_product_is_associative_with_vectors(
        (a, b, v) in (1usize..8, 1usize..70, 1usize..8)
            .prop_flat_map(|(r, k, c)| (sized(r, k), sized(k, c), vector(c)))
    ) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.mul_vec(&v).unwrap(), naive_mul(&a, &naive_mul(&b, &v)));
    }

    #[test]
    fn kernel_basis_spans_the_kernel(m in matrix(8, 20)) {
        let k = f2la::kernel_basis(&m);
        prop_assert_eq!(k.rows(), m.cols() - naive_rank(&m));
        prop_assert_eq!(naive_rank(&k), k.rows());
        for row in k.row_vecs() {
            prop_assert!(naive_mul(&m, &row).is_zero());
        }
    }

    #[test]
    fn solve_finds_preimages((m, e) in matrix(8, 20).prop_flat_map(|m| { let c = m.cols(); (Just(m), vector(c)) })) {
        let s = naive_mul(&m, &e);
        let x = f2la::solve(&m, &s).unwrap();
        prop_assert_eq!(naive_mul(&m, &x), s);
    }

    #[test]
    fn elimination_respects_column_order(m in matrix(8, 16), seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..m.cols()).collect();
        let mut state = seed;
        for i in (1..order.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (state >> 33) as usize % (i + 1));
        }
        let res = f2la::eliminate(&m, &order).unwrap();
        prop_assert_eq!(res.rank(), naive_rank(&m));
        // pivots are the greedy independent prefix of the order
        let mut chosen = Vec::new();
        for &c in &order {
            chosen.push(c);
            if naive_rank(&m.select_columns(&chosen)) < chosen.len() {
                chosen.pop();
            }
        }
        prop_assert_eq!(res.pivot_columns.clone(), chosen);
        prop_assert_eq!(res.row_transform.mul(&m).unwrap(), res.reduced.clone());
    }

    #[test]
    fn alist_round_trip(m in matrix(10, 20)) {
        prop_assert_eq!(alist::parse(&alist::write(&m)).unwrap(), m);
    }

    #[test]
    fn kron_shape_and_entries(a in matrix(3, 4), b in matrix(3, 4)) {
        let k = a.kron(&b);
        prop_assert_eq!(k.shape(), (a.rows() * b.rows(), a.cols() * b.cols()));
        for i in 0..k.rows() {
            for j in 0..k.cols() {
                let expect = a.get(i / b.rows(), j / b.cols()) && b.get(i % b.rows(), j % b.cols());
                prop_assert_eq!(k.get(i, j), expect);
            }
        }
    }
}
