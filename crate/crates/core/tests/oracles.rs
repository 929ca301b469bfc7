mod common;

use std::collections::BTreeMap;

use crystal_walks::cartan::{RootSystemType, WeightVector};
use crystal_walks::crystal::{generate, generate_full, walks_to_highest};
use crystal_walks::perfect::Walk;
use crystal_walks::verify::{check_axioms, fundamental_pairs, verify_thm_global, Status};
use proptest::prelude::*;

fn ty(s: &str) -> RootSystemType {
    s.parse().unwrap()
}

#[test]
fn root_counts() {
    for (s, count) in [("A3", 6), ("B3", 9), ("C3", 9), ("D4", 12), ("B2", 4), ("A4", 10)] {
        let a = ty(s).cartan_matrix().rows().to_vec();
        assert_eq!(common::positive_roots(&a).len(), count, "{s}");
    }
}

#[test]
fn known_dimensions() {
    let cases: [(&str, &[i64], u128); 6] = [
        ("A2", &[1, 1], 8),
        ("B2", &[0, 1], 4),
        ("C2", &[0, 1], 5),
        ("B3", &[0, 1, 0], 21),
        ("D4", &[0, 1, 0, 0], 28),
        ("C3", &[2, 0, 0], 21),
    ];
    for (s, d, dim) in cases {
        let t = ty(s);
        assert_eq!(common::weyl_dimension(t, &WeightVector::from_dense(t, d).unwrap()), dim, "{s}");
    }
}

#[test]
fn small_grid_matches_weyl() {
    for s in ["A1", "A2", "A3", "B2", "C2"] {
        let t = ty(s);
        for lambda in fundamental_pairs(t) {
            let g = generate_full(t, &lambda).unwrap();
            assert_eq!(g.len() as u128, common::weyl_dimension(t, &lambda), "{t} {lambda}");
        }
    }
}

#[test]
fn type_a_weights_match_tableaux() {
    for (n, dense) in [(2usize, vec![1i64, 1]), (3, vec![0, 1, 0]), (3, vec![1, 0, 1]), (3, vec![2, 1, 0])] {
        let t = ty(&format!("A{n}"));
        let g = generate_full(t, &WeightVector::from_dense(t, &dense).unwrap()).unwrap();
        let mut seen = BTreeMap::new();
        for idx in 0..g.len() {
            let r = g.node(idx);
            let wt: Vec<i64> = r.phi.iter().zip(&r.eps).map(|(p, e)| p - e).collect();
            *seen.entry(wt).or_insert(0usize) += 1;
        }
        assert_eq!(seen, common::type_a_weights(n, &dense), "A{n} {dense:?}");
    }
}

#[test]
fn a3_lambda2_first_step() {
    let t = ty("A3");
    let g = generate_full(t, &WeightVector::fundamental(2)).unwrap();
    let a = g.f(g.highest(), 2).unwrap();
    assert_eq!(walks_to_highest(&g, a).unwrap(), vec![Walk::new(vec![2])]);
    assert_eq!(verify_thm_global(&g).unwrap().status, Status::Pass);
}

/// The zero-weight node reached through `α_3` in the adjoint crystal of
/// `B_3`: singular, with singular parent, yet reached by two walks, neither
/// a run of consecutive arrows. Checked by hand against root strings.
#[test]
fn b3_adjoint_zero_node() {
    let t = ty("B3");
    let g = generate_full(t, &WeightVector::fundamental(2)).unwrap();
    let mut node = g.highest();
    for c in [2, 3, 1, 2, 3] {
        node = g.f(node, c).unwrap();
    }
    assert!(g.is_singular(node));
    assert!(g.is_singular(g.e(node, 3).unwrap()));
    let r = g.node(node);
    assert!(r.phi.iter().zip(&r.eps).all(|(p, e)| p == e));
    let walks: Vec<String> = walks_to_highest(&g, node).unwrap().iter().map(|w| w.to_string()).collect();
    assert_eq!(walks, ["(3,2,1,3,2)", "(3,2,3,1,2)"]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn finite_crystals_satisfy_axioms(which in 0usize..6, a in 0i64..3, b in 0i64..3) {
        let s = ["A2", "B2", "C2", "A3", "B3", "C3"][which];
        let t = ty(s);
        let mut dense = vec![0; t.rank()];
        dense[0] = a;
        dense[t.rank() - 1] += b;
        let lambda = WeightVector::from_dense(t, &dense).unwrap();
        let g = generate_full(t, &lambda).unwrap();
        prop_assert_eq!(g.len() as u128, common::weyl_dimension(t, &lambda));
        prop_assert!(check_axioms(&g).ok());
        for e in g.edges() {
            prop_assert_eq!(g.e(e.dst, e.color), Some(e.src));
        }
    }

    #[test]
    fn affine_truncation_is_monotone(which in 0usize..4, i in 0usize..3, d in 1usize..6) {
        let t = ty(["A2~1", "C2~1", "A4~2", "D3~2"][which]);
        let color = t.colors()[i % t.num_colors()];
        let lambda = WeightVector::fundamental(color);
        let small = generate(t, &lambda, d).unwrap();
        let big = generate(t, &lambda, d + 1).unwrap();
        prop_assert!(small.len() <= big.len());
        for r in small.nodes() {
            prop_assert!(big.find(&r.node).is_some());
        }
    }
}
