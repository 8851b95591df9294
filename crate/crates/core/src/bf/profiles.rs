//! Interval-cardinality profiles of linear orders.
//!
//! Marking `p` distinct points of a linear order cuts it into `p + 1` open
//! intervals. The profile of the marking is the list of their cardinalities,
//! truncated at `cap`: a finite value `cap` reads "at least `cap`, finite",
//! and infinite intervals stay `∞`. Empty intervals are allowed.
//!
//! For linear orders, `(A, ā) ≤₁ (B, b̄)` holds exactly when the tuples are
//! ordered alike and every interval of `A` is at least as large as the
//! matching interval of `B`, so `≤₂` reduces to a ∀∃ comparison of profile
//! sets. Because the comparison is monotone, only the componentwise minimal
//! profiles matter, and those are computed without materializing the rest.
//!
//! Split rules: `Fin(k)` and `ω`, `ω*`, `ζ` split as usual; every interval
//! of `η` is infinite; `W` yields any cardinality left of a marked point and
//! `∞` after the last one. Sums fuse the boundary intervals of adjacent
//! summands; in `a·b` the marked points fall into `r` copies of `a` sitting
//! at `r` marked points of `b`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::BfError;
use crate::order::OrderExpr;
use crate::Card;

pub type CardProfile = Vec<Card>;
pub type ProfileSet = BTreeSet<CardProfile>;

/// Largest profile set materialized by [`interval_profiles`].
const PROFILE_LIMIT: usize = 200_000;

/// Every achievable profile of `points` marked points in `e`.
pub fn interval_profiles(e: &OrderExpr, points: usize, cap: u64) -> Result<ProfileSet, BfError> {
    let sets = Profiler { cap, minimal: false }.all(e, points)?;
    Ok(sets.into_iter().nth(points).unwrap_or_default())
}

/// The componentwise-minimal elements of [`interval_profiles`].
pub fn minimal_profiles(e: &OrderExpr, points: usize, cap: u64) -> Result<ProfileSet, BfError> {
    let sets = Profiler { cap, minimal: true }.all(e, points)?;
    Ok(sets.into_iter().nth(points).unwrap_or_default())
}

/// `(A, ā) ≤₁ (B, b̄)` from interval profiles: `a[i] ≥ b[i]` for every `i`.
pub fn leq1_intervals(a: &[Card], b: &[Card]) -> Result<bool, BfError> {
    if a.len() != b.len() {
        return Err(BfError::ProfileLengthMismatch { left: a.len(), right: b.len() });
    }
    Ok(a.iter().zip(b).all(|(x, y)| x >= y))
}

/// `a ≤₁ b` for order expressions: every number of points `p ≤ cap` that
/// fits in `b` fits in `a`.
pub(crate) fn leq1_order(a: &OrderExpr, b: &OrderExpr, cap: u64) -> Result<bool, BfError> {
    let (ca, cb) = (a.cardinality().truncate(cap + 1), b.cardinality().truncate(cap + 1));
    Ok(ca >= cb)
}

/// `a ≤₂ b`: for every marking of `p ≤ cap` points in `b` with profile `q`
/// there is a marking of `p` points in `a` with profile `r` such that
/// `(B, q) ≤₁ (A, r)`, i.e. `q ≥ r` componentwise.
pub fn leq2_order(a: &OrderExpr, b: &OrderExpr, cap: u64) -> Result<bool, BfError> {
    if cap < 2 {
        return Err(BfError::CapTooSmall { cap, min: 2 });
    }
    let p = cap as usize;
    let pr = Profiler { cap, minimal: true };
    let (sa, sb) = (pr.all(a, p)?, pr.all(b, p)?);
    for (qa, qb) in sa.iter().zip(&sb) {
        for q in qb {
            if !qa.iter().any(|r| q.iter().zip(r).all(|(x, y)| x >= y)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

struct Profiler {
    cap: u64,
    minimal: bool,
}

/// Componentwise-minimal elements.
fn minimize(set: ProfileSet) -> ProfileSet {
    let all: Vec<CardProfile> = set.into_iter().collect();
    all.iter()
        .filter(|v| !all.iter().any(|w| w != *v && w.iter().zip(v.iter()).all(|(x, y)| x <= y)))
        .cloned()
        .collect()
}

impl Profiler {
    fn finish(&self, set: ProfileSet) -> Result<ProfileSet, BfError> {
        if set.len() > PROFILE_LIMIT {
            return Err(BfError::BoundsExceeded("more than 200000 interval profiles"));
        }
        Ok(if self.minimal { minimize(set) } else { set })
    }

    fn t(&self, c: Card) -> Card {
        c.truncate(self.cap)
    }

    /// Profile sets for `0..=pmax` marked points.
    fn all(&self, e: &OrderExpr, pmax: usize) -> Result<Vec<ProfileSet>, BfError> {
        match e {
            OrderExpr::Sum(parts) => self.sum(parts, pmax),
            OrderExpr::Prod(a, b) => self.prod(a, b, pmax),
            atom => (0..=pmax).map(|p| self.finish(self.atom(atom, p))).collect(),
        }
    }

    fn atom(&self, e: &OrderExpr, p: usize) -> ProfileSet {
        let cap = self.cap;
        let finite_gaps = |n: usize| -> Vec<Vec<Card>> {
            let choices: Vec<Card> =
                if self.minimal { vec![Card::ZERO] } else { (0..=cap).map(Card::Fin).collect() };
            product(&choices, n)
        };
        let framed = |n: usize, left: bool, right: bool| -> ProfileSet {
            finite_gaps(n)
                .into_iter()
                .map(|v| {
                    let mut w = Vec::with_capacity(n + 2);
                    if left {
                        w.push(Card::Inf);
                    }
                    w.extend(v);
                    if right {
                        w.push(Card::Inf);
                    }
                    w
                })
                .collect()
        };
        match e {
            OrderExpr::Fin(k) => self.finite(*k, p),
            OrderExpr::Omega => framed(p, false, true),
            OrderExpr::OmegaStar => framed(p, true, false),
            OrderExpr::Zeta if p == 0 => [vec![Card::Inf]].into(),
            OrderExpr::Zeta => framed(p - 1, true, true),
            OrderExpr::Eta => [vec![Card::Inf; p + 1]].into(),
            OrderExpr::BigW => {
                let choices: Vec<Card> = if self.minimal {
                    vec![Card::ZERO]
                } else {
                    (0..=cap).map(Card::Fin).chain([Card::Inf]).collect()
                };
                product(&choices, p)
                    .into_iter()
                    .map(|mut v| {
                        v.push(Card::Inf);
                        v
                    })
                    .collect()
            }
            OrderExpr::Sum(_) | OrderExpr::Prod(..) => unreachable!("compound terms are split in `all`"),
        }
    }

    /// Truncated gap vectors of `p` points in a `k`-chain.
    fn finite(&self, k: u64, p: usize) -> ProfileSet {
        let mut out = ProfileSet::new();
        if p as u64 > k {
            return out;
        }
        let total = k - p as u64;
        let mut cur = Vec::with_capacity(p + 1);
        self.finite_rec(total, p + 1, 0, 0, &mut cur, &mut out);
        out
    }

    fn finite_rec(&self, total: u64, len: usize, exact: u64, capped: u64, cur: &mut Vec<Card>, out: &mut ProfileSet) {
        if cur.len() == len {
            let ok = if capped == 0 { exact == total } else { exact + capped * self.cap <= total };
            if ok {
                out.insert(cur.clone());
            }
            return;
        }
        for v in 0..=self.cap {
            let (e2, c2) = if v == self.cap { (exact, capped + 1) } else { (exact + v, capped) };
            if e2 + c2 * self.cap > total {
                break;
            }
            cur.push(Card::Fin(v));
            self.finite_rec(total, len, e2, c2, cur, out);
            cur.pop();
        }
    }

    fn sum(&self, parts: &[OrderExpr], pmax: usize) -> Result<Vec<ProfileSet>, BfError> {
        // partial[u]: open profiles using u points so far; the last entry is
        // the interval still growing to the right.
        let mut partial: Vec<ProfileSet> = vec![ProfileSet::new(); pmax + 1];
        partial[0].insert(vec![Card::ZERO]);
        for part in parts {
            let part_sets = self.all(part, pmax)?;
            let mut next: Vec<ProfileSet> = vec![ProfileSet::new(); pmax + 1];
            for (used, prev) in partial.iter().enumerate() {
                for (k, qs) in part_sets.iter().enumerate().take(pmax - used + 1) {
                    for v in prev {
                        for q in qs {
                            next[used + k].insert(self.fuse(v, q));
                        }
                    }
                }
            }
            partial = next.into_iter().map(|s| self.finish(s)).collect::<Result<_, _>>()?;
        }
        Ok(partial)
    }

    fn fuse(&self, v: &[Card], q: &[Card]) -> CardProfile {
        let mut w = v.to_vec();
        let last = w.last_mut().unwrap();
        *last = self.t(*last + q[0]);
        w.extend_from_slice(&q[1..]);
        w
    }

    fn prod(&self, a: &OrderExpr, b: &OrderExpr, pmax: usize) -> Result<Vec<ProfileSet>, BfError> {
        let ca = a.cardinality();
        let a_sets = self.all(a, pmax)?;
        let b_sets = self.all(b, pmax)?;
        let mut out = vec![ProfileSet::new(); pmax + 1];
        out[0].insert(vec![self.t(ca * b.cardinality())]);
        for (p, slot) in out.iter_mut().enumerate().skip(1) {
            for (r, hs) in b_sets.iter().enumerate().take(p + 1).skip(1) {
                for h in hs {
                    slot.extend(self.fill_copies(&a_sets, ca, h, r, p)?);
                }
            }
        }
        out.into_iter().map(|s| self.finish(s)).collect()
    }

    /// Profiles of `p` points spread over the `r` copies of `a` that sit at
    /// the marked points of a `b`-marking with profile `h`.
    fn fill_copies(&self, a_sets: &[ProfileSet], ca: Card, h: &[Card], r: usize, p: usize) -> Result<ProfileSet, BfError> {
        let mut states: Vec<ProfileSet> = vec![ProfileSet::new(); p + 1];
        states[0].insert(vec![self.t(ca * h[0])]);
        for (j, &gap) in h.iter().enumerate().skip(1) {
            let copies_after = r - j;
            let mut next: Vec<ProfileSet> = vec![ProfileSet::new(); p + 1];
            for (used, vs) in states.iter().enumerate() {
                for k in 1..=p.saturating_sub(used + copies_after) {
                    for v in vs {
                        for q in &a_sets[k] {
                            let mut w = self.fuse(v, q);
                            let last = w.last_mut().unwrap();
                            *last = self.t(*last + ca * gap);
                            next[used + k].insert(w);
                        }
                    }
                }
            }
            states = next.into_iter().map(|s| self.finish(s)).collect::<Result<_, _>>()?;
        }
        Ok(core::mem::take(&mut states[p]))
    }
}

fn product(choices: &[Card], n: usize) -> Vec<Vec<Card>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| choices.iter().map(move |&c| { let mut w = v.clone(); w.push(c); w }))
            .collect();
    }
    out
}
