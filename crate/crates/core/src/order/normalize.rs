//! Rewriting normalizer for order expressions.
//!
//! The rule set is small and sound but not complete for order-type
//! isomorphism; terms outside its reach are left as they are.
//!
//! | rule | rewrite |
//! |------|---------|
//! | zeta | `z → w* + w` |
//! | flatten | nested sums are spliced into the parent sum |
//! | drop-zero | `0` summands are removed |
//! | merge-fin | `j + k → (j+k)` |
//! | fin-omega | `k + w → w` |
//! | omegastar-fin | `w* + k → w*` |
//! | absorb-w | `α + W → W` for a well-ordered, `W`-free term `α` |
//! | eta-sandwich | `X*q + X + X*q → X*q` |
//! | prod-zero | `0*x → 0`, `x*0 → 0` |
//! | prod-unit | `x*1 → x`, `1*x → x` |
//! | prod-fin | `j*k → (j·k)` |
//! | unfold | `x*k → x + … + x` (k copies, `2 ≤ k ≤ 4096`) |
//! | fin-omega-prod | `k*w → w` for `k ≥ 1` |
//! | w-omega | `(W + W*q + r)*w → W + W*q` for well-ordered `r` (possibly absent) |
//!
//! `absorb-w` only fires for well-ordered `α` built from naturals and `w`:
//! a summand such as `w*` placed before `W` would add a descending sequence
//! below the least element, so it is not absorbed.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::OrderExpr;

const UNFOLD_LIMIT: u64 = 4096;

/// A rewrite-irreducible expression. Equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalForm(OrderExpr);

impl NormalForm {
    pub fn expr(&self) -> &OrderExpr {
        &self.0
    }

    pub fn into_expr(self) -> OrderExpr {
        self.0
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Normalizes by always rewriting the first redex in post-order.
pub fn normalize(e: &OrderExpr) -> NormalForm {
    normalize_with(e, |_| 0)
}

/// Normalizes with a caller-chosen strategy: at each step `choose(n)` picks
/// one of the `n` currently available rewrites (an index below `n`).
pub fn normalize_with(e: &OrderExpr, mut choose: impl FnMut(usize) -> usize) -> NormalForm {
    let mut cur = e.clone();
    let mut redexes = Vec::new();
    let mut path = Vec::new();
    loop {
        redexes.clear();
        collect(&cur, &mut path, &mut redexes);
        if redexes.is_empty() {
            return NormalForm(cur);
        }
        let pick = choose(redexes.len()) % redexes.len();
        let (at, replacement) = redexes.swap_remove(pick);
        *subterm_mut(&mut cur, &at) = replacement;
    }
}

/// Structural equality of normal forms: sound for isomorphism, incomplete.
pub fn expr_equal(a: &OrderExpr, b: &OrderExpr) -> bool {
    normalize(a) == normalize(b)
}

fn collect(e: &OrderExpr, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, OrderExpr)>) {
    match e {
        OrderExpr::Sum(parts) => {
            for (i, p) in parts.iter().enumerate() {
                path.push(i);
                collect(p, path, out);
                path.pop();
            }
        }
        OrderExpr::Prod(a, b) => {
            path.push(0);
            collect(a, path, out);
            path.pop();
            path.push(1);
            collect(b, path, out);
            path.pop();
        }
        _ => {}
    }
    for r in root_rewrites(e) {
        out.push((path.clone(), r));
    }
}

fn subterm_mut<'a>(e: &'a mut OrderExpr, path: &[usize]) -> &'a mut OrderExpr {
    let Some((&first, rest)) = path.split_first() else {
        return e;
    };
    match e {
        OrderExpr::Sum(parts) => subterm_mut(&mut parts[first], rest),
        OrderExpr::Prod(a, b) => subterm_mut(if first == 0 { a } else { b }, rest),
        _ => unreachable!("paths only descend through sums and products"),
    }
}

fn without(parts: &[OrderExpr], range: core::ops::Range<usize>, insert: Option<OrderExpr>) -> OrderExpr {
    let mut v = Vec::with_capacity(parts.len());
    v.extend_from_slice(&parts[..range.start]);
    v.extend(insert);
    v.extend_from_slice(&parts[range.end..]);
    OrderExpr::sum(v)
}

fn flat(x: &OrderExpr) -> &[OrderExpr] {
    match x {
        OrderExpr::Sum(parts) => parts,
        other => core::slice::from_ref(other),
    }
}

/// Every rewrite that applies at the root of `e`.
fn root_rewrites(e: &OrderExpr) -> Vec<OrderExpr> {
    use OrderExpr::*;
    let mut out = Vec::new();
    match e {
        Zeta => out.push(Sum(vec![OmegaStar, Omega])),
        Sum(parts) => {
            for (i, p) in parts.iter().enumerate() {
                match p {
                    Sum(inner) => {
                        let mut v = parts[..i].to_vec();
                        v.extend_from_slice(inner);
                        v.extend_from_slice(&parts[i + 1..]);
                        out.push(OrderExpr::sum(v));
                    }
                    Fin(0) => out.push(without(parts, i..i + 1, None)),
                    _ => {}
                }
                let Some(next) = parts.get(i + 1) else { continue };
                match (p, next) {
                    (Fin(j), Fin(k)) => {
                        if let Some(s) = j.checked_add(*k) {
                            out.push(without(parts, i..i + 2, Some(Fin(s))));
                        }
                    }
                    (Fin(_), Omega) => out.push(without(parts, i..i + 1, None)),
                    (OmegaStar, Fin(_)) => out.push(without(parts, i + 1..i + 2, None)),
                    (alpha, BigW) if alpha.is_well_ordered_syntax() => {
                        out.push(without(parts, i..i + 1, None))
                    }
                    _ => {}
                }
                if let Prod(x, eta) = p {
                    if **eta == Eta {
                        let body = flat(x);
                        let mid_end = i + 1 + body.len();
                        if parts.get(i + 1..mid_end) == Some(body) && parts.get(mid_end) == Some(p) {
                            out.push(without(parts, i..mid_end + 1, Some(p.clone())));
                        }
                    }
                }
            }
        }
        Prod(a, b) => {
            match (&**a, &**b) {
                (Fin(0), _) | (_, Fin(0)) => out.push(Fin(0)),
                _ => {}
            }
            if **b == Fin(1) {
                out.push((**a).clone());
            }
            if **a == Fin(1) {
                out.push((**b).clone());
            }
            if let (Fin(j), Fin(k)) = (&**a, &**b) {
                if let Some(p) = j.checked_mul(*k) {
                    out.push(Fin(p));
                }
            }
            if let Fin(k) = **b {
                if (2..=UNFOLD_LIMIT).contains(&k) {
                    out.push(Sum(vec![(**a).clone(); k as usize]));
                }
            }
            if matches!((&**a, &**b), (Fin(k), Omega) if *k >= 1) {
                out.push(Omega);
            }
            if **b == Omega {
                if let Sum(parts) = &**a {
                    let w_eta = OrderExpr::prod(BigW, Eta);
                    if parts.len() >= 2
                        && parts[0] == BigW
                        && parts[1] == w_eta
                        && parts[2..].iter().all(OrderExpr::is_well_ordered_syntax)
                    {
                        out.push(Sum(vec![BigW, w_eta]));
                    }
                }
            }
        }
        _ => {}
    }
    out
}
