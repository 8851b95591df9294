//! Canonical enumeration of the points of an order expression.
//!
//! Point `n` of an expression gets a [`PointKey`]; comparing keys
//! lexicographically compares the points in the denoted order. Keys of one
//! expression never have one as a proper prefix of another, so plain
//! lexicographic comparison is enough.
//!
//! Enumeration rules:
//!
//! * `Fin(k)`, `w`: point `n` is the `n`-th element; `w*`: the `n`-th from the top.
//! * `z`: `0, 1, −1, 2, −2, …`.
//! * `q`: the dyadic rationals of `(0, 1)` by level: `1/2, 1/4, 3/4, 1/8, …`.
//! * `W`: presented through the well-order `w*w` (Cantor pairs). A finite
//!   stand-in cannot present the pseudo well-order itself.
//! * sums: the finite summands first, then round-robin over the infinite ones.
//! * products `a*b`: block-major when `a` is finite, copy-interleaved when
//!   `b` is finite, Cantor pairs when both are infinite.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::OrderExpr;
use crate::Card;

/// A dyadic rational `num / 2^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: i128,
    exp: u32,
}

impl Dyadic {
    fn int(v: i128) -> Self {
        Dyadic { num: v, exp: 0 }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        (self.num << (e - self.exp)).cmp(&(other.num << (e - other.exp)))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type PointKey = Vec<Dyadic>;

pub(crate) fn cantor_unpair(n: u64) -> (u64, u64) {
    let w = ((8 * u128::from(n) + 1).isqrt() as u64 - 1) / 2;
    let t = w * (w + 1) / 2;
    let y = n - t;
    (w - y, y)
}

fn eta_point(n: u64) -> Dyadic {
    let d = (n + 1).ilog2();
    let j = n + 1 - (1u64 << d);
    Dyadic { num: 2 * i128::from(j) + 1, exp: d + 1 }
}

/// The key of point `n` in the canonical enumeration, or `None` when the
/// order has at most `n` points.
pub fn point_key(e: &OrderExpr, n: u64) -> Option<PointKey> {
    let mut key = Vec::new();
    push_key(e, n, &mut key).then_some(key)
}

fn push_key(e: &OrderExpr, n: u64, key: &mut PointKey) -> bool {
    match e {
        OrderExpr::Fin(k) => {
            if n >= *k {
                return false;
            }
            key.push(Dyadic::int(n.into()));
        }
        OrderExpr::Omega => key.push(Dyadic::int(n.into())),
        OrderExpr::OmegaStar => key.push(Dyadic::int(-i128::from(n))),
        OrderExpr::Zeta => {
            let v = if n % 2 == 1 { i128::from(n.div_ceil(2)) } else { -i128::from(n / 2) };
            key.push(Dyadic::int(v));
        }
        OrderExpr::Eta => key.push(eta_point(n)),
        OrderExpr::BigW => {
            let (copy, inside) = cantor_unpair(n);
            key.push(Dyadic::int(copy.into()));
            key.push(Dyadic::int(inside.into()));
        }
        OrderExpr::Sum(parts) => {
            let mut remaining = n;
            let mut infinite = Vec::new();
            for (i, p) in parts.iter().enumerate() {
                match p.cardinality() {
                    Card::Fin(k) => {
                        if remaining < k {
                            key.push(Dyadic::int(i as i128));
                            return push_key(p, remaining, key);
                        }
                        remaining -= k;
                    }
                    Card::Inf => infinite.push(i),
                }
            }
            if infinite.is_empty() {
                return false;
            }
            let m = infinite.len() as u64;
            let i = infinite[(remaining % m) as usize];
            key.push(Dyadic::int(i as i128));
            return push_key(&parts[i], remaining / m, key);
        }
        OrderExpr::Prod(a, b) => {
            let (in_b, in_a) = match (a.cardinality(), b.cardinality()) {
                (Card::Fin(0), _) | (_, Card::Fin(0)) => return false,
                (Card::Fin(ka), _) => (n / ka, n % ka),
                (Card::Inf, Card::Fin(kb)) => (n % kb, n / kb),
                (Card::Inf, Card::Inf) => cantor_unpair(n),
            };
            return push_key(b, in_b, key) && push_key(a, in_a, key);
        }
    }
    true
}

/// Ranks of the first `count` points: `ranks[i] < ranks[j]` iff point `i`
/// lies below point `j`. Returns `None` if the order has fewer points.
pub fn point_ranks(e: &OrderExpr, count: usize) -> Option<Vec<u32>> {
    let keys: Vec<PointKey> =
        (0..count as u64).map(|n| point_key(e, n)).collect::<Option<_>>()?;
    let mut idx: Vec<usize> = (0..count).collect();
    idx.sort_by(|&i, &j| keys[i].cmp(&keys[j]));
    let mut ranks = vec![0u32; count];
    for (r, &i) in idx.iter().enumerate() {
        ranks[i] = r as u32;
    }
    Some(ranks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::parse_expr;

    fn ranks(s: &str, count: usize) -> Vec<u32> {
        point_ranks(&parse_expr(s).unwrap(), count).unwrap()
    }

    #[test]
    fn cantor_pairs_cover_the_grid() {
        assert_eq!(cantor_unpair(0), (0, 0));
        assert_eq!(cantor_unpair(1), (1, 0));
        assert_eq!(cantor_unpair(2), (0, 1));
        assert_eq!(cantor_unpair(3), (2, 0));
    }

    #[test]
    fn omega_plus_omega_interleaves() {
        // Points alternate between the two copies: 0=(0,0) 1=(1,0) 2=(0,1) 3=(1,1).
        assert_eq!(ranks("w+w", 4), vec![0, 2, 1, 3]);
    }

    #[test]
    fn finite_summands_come_first() {
        // w + 2: the two finite points are enumerated first and sit on top.
        assert_eq!(ranks("w+2", 3), vec![1, 2, 0]);
    }

    #[test]
    fn eta_levels() {
        assert_eq!(ranks("q", 3), vec![1, 0, 2]);
        assert_eq!(ranks("z", 3), vec![1, 2, 0]);
        assert_eq!(ranks("w*", 3), vec![2, 1, 0]);
    }

    #[test]
    fn finite_orders_run_out() {
        let e = parse_expr("2*3").unwrap();
        assert!(point_key(&e, 5).is_some());
        assert!(point_key(&e, 6).is_none());
        assert_eq!(point_ranks(&e, 6).unwrap(), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn products_with_infinite_left_factor() {
        // w*2: point n is copy n%2, position n/2.
        assert_eq!(ranks("w*2", 4), vec![0, 2, 1, 3]);
        assert_eq!(ranks("w*w", 3), vec![0, 2, 1]);
    }
}
