mod common;

use common::is_strict_linear_order;
use proptest::prelude::*;
use uniflearn_core::rng::SplitMix64;
use uniflearn_core::tree::{has_path, interleave_trees, kb_linearize, FinTree, TreeGen};

fn tree(seed: u64, max_nodes: usize) -> FinTree {
    FinTree::random(&mut SplitMix64::new(seed), max_nodes, 3)
}

/// Whether some node has length `d`, by scanning the node set.
fn reaches(t: &FinTree, d: usize) -> bool {
    t.nodes().any(|s| s.len() == d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn interleaving_is_prefix_closed(a in any::<u64>(), b in any::<u64>()) {
        let it = interleave_trees(&tree(a, 20), &tree(b, 20));
        let nodes: Vec<_> = it.nodes().cloned().collect();
        prop_assert!(FinTree::new(nodes).is_ok());
    }

    #[test]
    fn interleaving_paths_need_both(a in any::<u64>(), b in any::<u64>()) {
        let (t, s) = (tree(a, 20), tree(b, 20));
        let it = interleave_trees(&t, &s);
        for d in 0..=t.height().max(s.height()) + 1 {
            prop_assert_eq!(has_path(&it, 2 * d).unwrap(), reaches(&t, d) && reaches(&s, d));
        }
    }

    #[test]
    fn kb_is_a_total_order_on_the_nodes(a in any::<u64>()) {
        let t = tree(a, 40);
        let kb = kb_linearize(&t).unwrap();
        prop_assert_eq!(kb.size(), t.len());
        prop_assert!(is_strict_linear_order(&kb));
        let nodes: Vec<_> = t.nodes().collect();
        for (i, x) in nodes.iter().enumerate() {
            for (j, y) in nodes.iter().enumerate() {
                if y.len() > x.len() && y.starts_with(x) {
                    prop_assert!(kb.holds2(0, j, i), "extension {:?} not below {:?}", y, x);
                }
            }
        }
    }

    #[test]
    fn generators_agree_with_their_trees(a in any::<u64>()) {
        let t = tree(a, 30);
        let g = TreeGen::from_tree(&t);
        prop_assert_eq!(g.truncate(t.height()).unwrap(), t.clone());
        for d in 0..=t.height() {
            prop_assert_eq!(has_path(&g, d).unwrap(), reaches(&t, d));
        }
    }
}

#[test]
fn truncations_bound_descending_sequences() {
    // Strictly decreasing sequences below 5: well-founded, every path has length ≤ 5.
    let g = TreeGen::new(|s| s.iter().all(|&x| x < 5) && s.windows(2).all(|w| w[1] < w[0]), 5, 8);
    for d in 0..=8 {
        let t = g.truncate(d).unwrap();
        assert_eq!(t.height(), d.min(5));
        assert_eq!(has_path(&g, d).unwrap(), d <= 5);
        // A descending run in KB(T) visits distinct nodes, so it is no longer than |T|.
        let kb = kb_linearize(&t).unwrap();
        let longest = longest_descending(&kb);
        assert!(longest <= t.len());
        assert_eq!(longest, t.len());
    }
    assert!(g.truncate(9).is_err());
}

/// Longest chain `x₀ > x₁ > …` by dynamic programming over the relation.
fn longest_descending(s: &uniflearn_core::Snapshot) -> usize {
    let n = s.size();
    let below: Vec<usize> = (0..n).map(|a| (0..n).filter(|&b| s.holds2(0, b, a)).count()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&a| below[a]);
    let mut best = vec![1usize; n];
    for (k, &a) in order.iter().enumerate() {
        for &b in &order[..k] {
            if s.holds2(0, b, a) {
                best[a] = best[a].max(best[b] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}
