#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use uniflearn_core::rng::SplitMix64;
use uniflearn_core::{parse_expr, OrderExpr, Snapshot, StructureDescriptor, Vocabulary};

pub fn order(s: &str) -> StructureDescriptor {
    StructureDescriptor::order_type(parse_expr(s).unwrap()).unwrap()
}

pub fn expr(s: &str) -> OrderExpr {
    parse_expr(s).unwrap()
}

pub fn vocab(names: &[&str]) -> Arc<Vocabulary> {
    Arc::new(Vocabulary::unary(names.iter().copied()).unwrap())
}

/// Unary structure with finitely many exceptional elements and infinitely
/// many of type `tail`.
pub fn unary(v: &Arc<Vocabulary>, exceptions: &[(u32, u64)], tail: u32) -> StructureDescriptor {
    let exc: BTreeMap<u32, u64> = exceptions.iter().copied().collect();
    StructureDescriptor::unary_tail(v.clone(), exc, tail).unwrap()
}

fn digraph(n: usize, mask: u32) -> Snapshot {
    Snapshot::from_fn(Arc::new(Vocabulary::order()), n, |_, t| mask >> (t[0] * n + t[1]) & 1 == 1).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class of loop-allowing digraphs with
/// at most `max` vertices: the masks that are least among their relabelings.
pub fn digraph_classes(max: usize) -> Vec<Snapshot> {
    let mut out = Vec::new();
    for n in 0..=max {
        let perms = permutations(n);
        for mask in 0u32..1 << (n * n) {
            let canonical = perms.iter().all(|p| {
                let mut m = 0u32;
                for i in 0..n {
                    for j in 0..n {
                        if mask >> (i * n + j) & 1 == 1 {
                            m |= 1 << (p[i] * n + p[j]);
                        }
                    }
                }
                m >= mask
            });
            if canonical {
                out.push(digraph(n, mask));
            }
        }
    }
    out
}

/// Random order expression over the full syntax.
pub fn random_expr(rng: &mut SplitMix64, depth: usize) -> OrderExpr {
    let leaf = |rng: &mut SplitMix64| match rng.below(7) {
        0 => OrderExpr::Omega,
        1 => OrderExpr::OmegaStar,
        2 => OrderExpr::Zeta,
        3 => OrderExpr::Eta,
        4 => OrderExpr::BigW,
        _ => OrderExpr::Fin(rng.below(4)),
    };
    if depth == 0 {
        return leaf(rng);
    }
    match rng.below(5) {
        0 | 1 => {
            let k = 2 + rng.below(3) as usize;
            OrderExpr::Sum((0..k).map(|_| random_expr(rng, depth - 1)).collect())
        }
        2 => OrderExpr::prod(random_expr(rng, depth - 1), random_expr(rng, depth - 1)),
        _ => leaf(rng),
    }
}

/// Small W-free expressions, where profile enumeration stays cheap.
pub fn random_plain_expr(rng: &mut SplitMix64, depth: usize) -> OrderExpr {
    let leaf = |rng: &mut SplitMix64| match rng.below(6) {
        0 => OrderExpr::Omega,
        1 => OrderExpr::OmegaStar,
        2 => OrderExpr::Zeta,
        3 => OrderExpr::Eta,
        _ => OrderExpr::Fin(1 + rng.below(3)),
    };
    if depth == 0 {
        return leaf(rng);
    }
    match rng.below(4) {
        0 => OrderExpr::Sum(vec![random_plain_expr(rng, depth - 1), random_plain_expr(rng, depth - 1)]),
        1 => OrderExpr::prod(random_plain_expr(rng, depth - 1), leaf(rng)),
        _ => leaf(rng),
    }
}

/// Every chain satisfies irreflexivity, transitivity and totality.
pub fn is_strict_linear_order(s: &Snapshot) -> bool {
    let n = s.size();
    (0..n).all(|a| {
        !s.holds2(0, a, a)
            && (0..n).all(|b| {
                (a == b || s.holds2(0, a, b) != s.holds2(0, b, a))
                    && (0..n).all(|c| !(s.holds2(0, a, b) && s.holds2(0, b, c)) || s.holds2(0, a, c))
            })
    })
}

/// `e`, or `e + ω` when `e` is finite, so it describes an infinite order.
pub fn infinite(e: OrderExpr) -> OrderExpr {
    if e.cardinality().is_infinite() {
        e
    } else {
        OrderExpr::Sum(vec![e, OrderExpr::Omega])
    }
}

/// Largest finite constant in a descriptor: an exception count or a `Fin`
/// literal. Caps above it see every finite size exactly.
pub fn max_points(d: &StructureDescriptor) -> u64 {
    fn walk(e: &OrderExpr) -> u64 {
        match e {
            OrderExpr::Fin(k) => *k,
            OrderExpr::Sum(parts) => parts.iter().map(walk).max().unwrap_or(0),
            OrderExpr::Prod(a, b) => walk(a).max(walk(b)),
            _ => 0,
        }
    }
    match d {
        StructureDescriptor::UnaryTail { exceptional, .. } => exceptional.values().copied().max().unwrap_or(0),
        StructureDescriptor::OrderType { expr } => walk(expr),
    }
}
