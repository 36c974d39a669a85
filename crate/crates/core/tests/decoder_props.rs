mod common;

use common::{all_errors, brute_mwd, log_prob, naive_mul};
use proptest::prelude::*;
use qec_core::classical::{girth, tanner_graph};
use qec_core::decoders::{
    exhaustive_mld, exhaustive_mwd, osd0, osd_candidates, osd_w, soft_weight, success, BpConfig,
    BpDecoder,
};
use qec_core::f2la::{F2Matrix, F2Vec};
use qec_core::noise::{DecodingProblem, Prior};

/// Build a random tree Tanner graph: each new node hangs off an existing
/// node of the other type. `steps` encodes (is_check, parent choice).
fn tree_matrix(steps: &[(bool, usize)]) -> F2Matrix {
    let mut vars = 1usize;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut checks = 0usize;
    for &(is_check, pick) in steps {
        if is_check || checks == 0 {
            edges.push((checks, pick % vars));
            checks += 1;
        } else {
            edges.push((pick % checks, vars));
            vars += 1;
        }
    }
    let mut h = F2Matrix::zeros(checks.max(1), vars);
    for (c, v) in edges {
        h.set(c, v, true);
    }
    h
}

fn problem_strategy(
    max_rows: usize,
    max_cols: usize,
) -> impl Strategy<Value = (F2Matrix, F2Matrix, Vec<f64>)> {
    (1..=max_rows, 2..=max_cols).prop_flat_map(|(r, c)| {
        (
            proptest::collection::vec(any::<bool>(), r * c),
            proptest::collection::vec(any::<bool>(), c),
            proptest::collection::vec(0.01f64..0.45, c),
        )
            .prop_map(move |(hb, lb, p)| {
                let mut h = F2Matrix::zeros(r, c);
                for (i, b) in hb.into_iter().enumerate() {
                    h.set(i / c, i % c, b);
                }
                let l = F2Matrix::from_row_vecs(c, &[F2Vec::from_bools(&lb)]).unwrap();
                (h, l, p)
            })
    })
}

/// Exact conditional marginals `P(e_i = 1 | H e = s)` by enumeration.
fn exact_marginals(h: &F2Matrix, s: &F2Vec, p: &[f64]) -> Option<Vec<f64>> {
    let mut z = 0.0;
    let mut m = vec![0.0; p.len()];
    for (e, w) in all_errors(p) {
        if naive_mul(h, &e) == *s {
            z += w;
            for i in e.iter_ones() {
                m[i] += w;
            }
        }
    }
    (z > 0.0).then(|| m.into_iter().map(|x| x / z).collect())
}

fn prob_one(llr: f64) -> f64 {
    1.0 / (1.0 + llr.exp())
}

/// Unroll the Tanner graph of `h` into the depth-`rounds` computation tree
/// rooted at variable `root`; returns (tree checks as variable lists with
/// their syndrome bits, original variable of each tree variable).
fn computation_tree(
    h: &F2Matrix,
    s: &F2Vec,
    root: usize,
    rounds: usize,
) -> (Vec<(Vec<usize>, bool)>, Vec<usize>) {
    let mut checks = Vec::new();
    let mut origin = vec![root];
    let mut frontier = vec![(0usize, usize::MAX)];
    for _ in 0..rounds {
        let mut next = Vec::new();
        for (tv, parent) in frontier {
            let v = origin[tv];
            for c in (0..h.rows()).filter(|&c| h.get(c, v) && c != parent) {
                let mut members = vec![tv];
                for u in (0..h.cols()).filter(|&u| u != v && h.get(c, u)) {
                    origin.push(u);
                    members.push(origin.len() - 1);
                    next.push((origin.len() - 1, c));
                }
                checks.push((members, s.get(c)));
            }
        }
        frontier = next;
    }
    (checks, origin)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bp_is_exact_on_trees(
        steps in proptest::collection::vec((any::<bool>(), any::<usize>()), 2..13),
        p_seed in proptest::collection::vec(0.02f64..0.4, 14),
        s_bits in proptest::collection::vec(any::<bool>(), 14),
    ) {
        let h = tree_matrix(&steps);
        prop_assume!(h.cols() <= 14);
        prop_assert!(girth(&tanner_graph(&h)).is_none());
        let p = p_seed[..h.cols()].to_vec();
        let s = F2Vec::from_bools(&s_bits[..h.rows()]);
        let exact = exact_marginals(&h, &s, &p);
        prop_assume!(exact.is_some());
        let problem = DecodingProblem::new(h.clone(), F2Matrix::zeros(0, h.cols()), Prior::new(p).unwrap()).unwrap();
        let mut bp = BpDecoder::new(&problem, BpConfig { llr_clamp: 60.0, ..Default::default() }).unwrap();
        // tree depth is below the node count, so this many rounds suffices
        let llr = bp.marginals(&s, h.rows() + h.cols()).unwrap();
        for (i, m) in exact.unwrap().iter().enumerate() {
            prop_assert!((prob_one(llr[i]) - m).abs() < 1e-8, "var {}: {} vs {}", i, prob_one(llr[i]), m);
        }
    }

    #[test]
    fn bp_equals_computation_tree_marginals(
        (h, _, p) in problem_strategy(3, 4),
        s_bits in proptest::collection::vec(any::<bool>(), 3),
        rounds in 1usize..=3,
    ) {
        let s = F2Vec::from_bools(&s_bits[..h.rows()]);
        let problem = DecodingProblem::new(h.clone(), F2Matrix::zeros(0, h.cols()), Prior::new(p.clone()).unwrap()).unwrap();
        let mut bp = BpDecoder::new(&problem, BpConfig { llr_clamp: 60.0, ..Default::default() }).unwrap();
        let llr = bp.marginals(&s, rounds).unwrap();
        for root in 0..h.cols() {
            let (checks, origin) = computation_tree(&h, &s, root, rounds);
            prop_assume!(origin.len() <= 16);
            let tp: Vec<f64> = origin.iter().map(|&v| p[v]).collect();
            let (mut z, mut one) = (0.0, 0.0);
            for (e, w) in all_errors(&tp) {
                if checks.iter().all(|(m, b)| m.iter().filter(|&&v| e.get(v)).count() % 2 == usize::from(*b)) {
                    z += w;
                    if e.get(0) {
                        one += w;
                    }
                }
            }
            prop_assume!(z > 0.0);
            prop_assert!((prob_one(llr[root]) - one / z).abs() < 1e-8);
        }
    }

    #[test]
    fn osd_outputs_satisfy_the_syndrome(
        (h, _, p) in problem_strategy(6, 12),
        e_bits in proptest::collection::vec(any::<bool>(), 12),
        w in 0usize..=3,
    ) {
        let c = h.cols();
        let e = F2Vec::from_bools(&e_bits[..c]);
        let s = naive_mul(&h, &e);
        let soft = Prior::new(p).unwrap().llr();
        for cand in osd_candidates(&h, &s, &soft, w).unwrap() {
            prop_assert_eq!(naive_mul(&h, &cand), s.clone());
        }
        let best = osd_w(&h, &s, &soft, w).unwrap();
        prop_assert_eq!(naive_mul(&h, &best), s.clone());
        // higher order never does worse than OSD-0
        prop_assert!(soft_weight(&best, &soft) <= soft_weight(&osd0(&h, &s, &soft).unwrap(), &soft) + 1e-12);
    }

    #[test]
    fn exhaustive_decoders_match_oracles(
        (h, l, p) in problem_strategy(5, 10),
        e_bits in proptest::collection::vec(any::<bool>(), 10),
    ) {
        let c = h.cols();
        let e = F2Vec::from_bools(&e_bits[..c]);
        let s = naive_mul(&h, &e);
        let problem = DecodingProblem::new(h.clone(), l.clone(), Prior::new(p.clone()).unwrap()).unwrap();
        let mwd = exhaustive_mwd(&problem, &s).unwrap();
        let brute = brute_mwd(&h, &s, &p).unwrap();
        prop_assert!((log_prob(&mwd, &p) - log_prob(&brute, &p)).abs() < 1e-9);

        // MLD picks the logical class with the largest total probability
        let mut class = [0.0f64; 2];
        for (f, w) in all_errors(&p) {
            if naive_mul(&h, &f) == s {
                class[usize::from(naive_mul(&l, &f).get(0))] += w;
            }
        }
        let mld = exhaustive_mld(&problem, &s).unwrap();
        prop_assert_eq!(naive_mul(&h, &mld.correction), s.clone());
        let chosen = usize::from(naive_mul(&l, &mld.correction).get(0));
        prop_assert!(class[chosen] >= class[1 - chosen] - 1e-12);
        // success probability given s: MLD is at least MWD
        let mwd_class = usize::from(naive_mul(&l, &mwd).get(0));
        prop_assert!(class[chosen] >= class[mwd_class] - 1e-12);
        prop_assert!(success(&mld.correction, &mld.correction, &problem).unwrap().success);
    }
}

#[test]
fn four_cycle_toy_matches_unrolled_tree() {
    // two checks share variables 0 and 1, so the Tanner graph has a 4-cycle
    let h = F2Matrix::from_dense(&[[1, 1, 1], [1, 1, 0]]);
    assert_eq!(girth(&tanner_graph(&h)), Some(4));
    let p = vec![0.1, 0.2, 0.3];
    let s = F2Vec::from_bits(&[1, 0]);
    let problem = DecodingProblem::new(
        h.clone(),
        F2Matrix::zeros(0, 3),
        Prior::new(p.clone()).unwrap(),
    )
    .unwrap();
    let mut bp = BpDecoder::new(&problem, BpConfig::default()).unwrap();
    let exact = exact_marginals(&h, &s, &p).unwrap();
    for rounds in 1..=4 {
        let llr = bp.marginals(&s, rounds).unwrap();
        for root in 0..3 {
            let (checks, origin) = computation_tree(&h, &s, root, rounds);
            let tp: Vec<f64> = origin.iter().map(|&v| p[v]).collect();
            let (mut z, mut one) = (0.0, 0.0);
            for (e, w) in all_errors(&tp) {
                if checks
                    .iter()
                    .all(|(m, b)| m.iter().filter(|&&v| e.get(v)).count() % 2 == usize::from(*b))
                {
                    z += w;
                    if e.get(0) {
                        one += w;
                    }
                }
            }
            assert!(
                (prob_one(llr[root]) - one / z).abs() < 1e-9,
                "round {rounds}, var {root}"
            );
        }
    }
    // past the girth BP double counts and no longer matches the true marginal
    let llr = bp.marginals(&s, 4).unwrap();
    assert!((0..3).any(|i| (prob_one(llr[i]) - exact[i]).abs() > 1e-6));
}
