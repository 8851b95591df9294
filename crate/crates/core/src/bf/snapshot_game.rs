//! The back-and-forth relations ≤ₙ on finite pointed snapshots.
//!
//! `(A, ā) ≤ₙ (B, b̄)` iff for every `m < n` and every extension `d̄` over
//! `B` there is `c̄` over `A` with `(B, b̄d̄) ≤ₘ (A, āc̄)`; `≤₀` is agreement
//! on atomic formulas.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::atomic::{check_pair, same_atomic_type, same_atomic_type_from};
use super::{BfError, PointedSnapshot};
use crate::structure::{advance_tuple, Snapshot};

/// Which extension tuples `d̄` the universal player may choose.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtensionBound {
    /// Pairwise distinct elements, any length up to the domain size. Repeats
    /// only add equality information, which the responder can mirror.
    Distinct,
    /// Arbitrary tuples, repetitions allowed, of length at most `k`.
    All(usize),
}

/// Largest snapshot the literal game accepts.
pub const MAX_GAME_SIZE: usize = 8;

/// `(a.snapshot, a.tuple) ≤ₙ (b.snapshot, b.tuple)` by literal recursion
/// over distinct extension tuples.
pub fn leq_n_snapshots(a: &PointedSnapshot, b: &PointedSnapshot, n: usize) -> Result<bool, BfError> {
    leq_n_snapshots_with(a, b, n, ExtensionBound::Distinct)
}

/// Longest extension tuple [`ExtensionBound::All`] accepts.
pub const MAX_EXTENSION_LEN: usize = 16;

pub fn leq_n_snapshots_with(
    a: &PointedSnapshot,
    b: &PointedSnapshot,
    n: usize,
    bound: ExtensionBound,
) -> Result<bool, BfError> {
    check_pair(a, b)?;
    for s in [&a.snapshot, &b.snapshot] {
        if s.size() > MAX_GAME_SIZE {
            return Err(BfError::BoundsExceeded("snapshot games support at most 8 elements"));
        }
    }
    if matches!(bound, ExtensionBound::All(k) if k > MAX_EXTENSION_LEN) {
        return Err(BfError::BoundsExceeded("extension tuples are limited to 16 elements"));
    }
    Ok(game(&a.snapshot, &a.tuple, &b.snapshot, &b.tuple, n, false, bound))
}

/// `verified`: `ta` and `tb` are already known to share their atomic type,
/// so only atoms touching the extension need checking.
fn game(a: &Snapshot, ta: &[usize], b: &Snapshot, tb: &[usize], n: usize, verified: bool, bound: ExtensionBound) -> bool {
    if n == 0 {
        return verified || same_atomic_type(a, ta, b, tb);
    }
    let from = if verified { tb.len() } else { 0 };
    let mut bd = Vec::with_capacity(tb.len() + b.size().max(1) * 2);
    let mut ac = Vec::with_capacity(ta.len() + a.size().max(1) * 2);
    for m in (0..n).rev() {
        // Longest extensions first: they fail fastest.
        for len in extension_lengths(b.size(), bound).rev() {
            let all_answered = for_each_extension(b.size(), len, bound, &mut |d| {
                bd.clear();
                bd.extend_from_slice(tb);
                bd.extend_from_slice(d);
                let unanswered = for_each_extension(a.size(), len, bound, &mut |c| {
                    ac.clear();
                    ac.extend_from_slice(ta);
                    ac.extend_from_slice(c);
                    let answers =
                        same_atomic_type_from(b, &bd, a, &ac, from) && (m == 0 || game(b, &bd, a, &ac, m, true, bound));
                    !answers
                });
                !unanswered
            });
            if !all_answered {
                return false;
            }
        }
    }
    true
}

fn extension_lengths(size: usize, bound: ExtensionBound) -> core::ops::RangeInclusive<usize> {
    match bound {
        ExtensionBound::Distinct => 0..=size,
        ExtensionBound::All(_) if size == 0 => 0..=0,
        ExtensionBound::All(k) => 0..=k,
    }
}

/// Calls `f` on every extension tuple of length `len` over `0..size` until
/// it returns false; returns whether every call returned true.
fn for_each_extension(size: usize, len: usize, bound: ExtensionBound, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    let mut buf = [0usize; MAX_EXTENSION_LEN];
    let distinct = bound == ExtensionBound::Distinct;
    fn rec(
        size: usize,
        len: usize,
        depth: usize,
        used: u32,
        distinct: bool,
        buf: &mut [usize; MAX_EXTENSION_LEN],
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == len {
            return f(&buf[..len]);
        }
        for e in 0..size {
            if distinct && used >> e & 1 == 1 {
                continue;
            }
            buf[depth] = e;
            if !rec(size, len, depth + 1, used | 1 << e, distinct, buf, f) {
                return false;
            }
        }
        true
    }
    rec(size, len, 0, 0, distinct, &mut buf, f)
}

fn distinct_tuples(size: usize, len: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    for e in 0..size {
        if !used[e] {
            used[e] = true;
            cur.push(e);
            distinct_tuples(size, len, cur, used, out);
            cur.pop();
            used[e] = false;
        }
    }
}

/// Largest snapshot [`PreparedSnapshot`] accepts.
pub const MAX_PREPARED_SIZE: usize = 6;

/// A snapshot with every distinct tuple, its atomic type, and the types of
/// its disjoint extensions precomputed, for sweeping ≤ₙ over many pairs.
///
/// Extensions here are disjoint from the tuple they extend; this decides
/// the same relation as [`leq_n_snapshots`], since an extension element that
/// repeats a tuple element is matched by the corresponding element.
#[derive(Clone, Debug)]
pub struct PreparedSnapshot {
    nodes: Vec<Node>,
    /// Minimal extension-type sets per tuple type, longest tuples first:
    /// the only positions that matter for ≤₂ from the empty tuple.
    level1: Vec<(u64, Vec<u64>)>,
}

#[derive(Clone, Debug)]
struct Node {
    code: u64,
    /// Indices of all nodes extending this one (itself included).
    desc: Vec<usize>,
    /// Sorted, deduplicated codes of `desc`.
    desc_types: Vec<u64>,
}

/// Type code of a tuple of distinct elements: length in the top byte, then
/// one bit per relation atom over the tuple positions.
fn type_code(s: &Snapshot, t: &[usize]) -> u64 {
    let mut code = 0u64;
    let mut bit = 0u32;
    let mut vars = Vec::new();
    let mut x = Vec::new();
    for r in 0..s.vocab().len() {
        let arity = s.vocab().arity(r);
        if t.is_empty() {
            break;
        }
        vars.clear();
        vars.resize(arity, 0);
        loop {
            x.clear();
            x.extend(vars.iter().map(|&v| t[v]));
            if s.holds(r, &x) {
                code |= 1 << bit;
            }
            bit += 1;
            if !advance_tuple(&mut vars, t.len()) {
                break;
            }
        }
    }
    debug_assert!(bit <= 56);
    code | (t.len() as u64) << 56
}

fn code_len(code: u64) -> u64 {
    code >> 56
}

fn is_subset(small: &[u64], big: &[u64]) -> bool {
    let mut j = 0;
    for &x in small {
        while j < big.len() && big[j] < x {
            j += 1;
        }
        if j == big.len() || big[j] != x {
            return false;
        }
    }
    true
}

impl PreparedSnapshot {
    pub fn new(s: &Snapshot) -> Result<Self, BfError> {
        let n = s.size();
        let atoms: usize = s.vocab().relations().iter().map(|r| n.pow(r.arity as u32)).sum();
        if n > MAX_PREPARED_SIZE || atoms > 56 {
            return Err(BfError::BoundsExceeded("prepared snapshots need at most 56 atoms over the full domain"));
        }
        let mut tuples: Vec<Vec<usize>> = Vec::new();
        for len in 0..=n {
            let mut cur = Vec::new();
            let mut used = vec![false; n];
            distinct_tuples(n, len, &mut cur, &mut used, &mut tuples);
        }
        let index: BTreeMap<Vec<usize>, usize> =
            tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let mut nodes: Vec<Node> = tuples
            .iter()
            .map(|t| Node { code: type_code(s, t), desc: Vec::new(), desc_types: Vec::new() })
            .collect();
        for (i, t) in tuples.iter().enumerate() {
            let desc: Vec<usize> = tuples
                .iter()
                .filter(|u| u.len() >= t.len() && u[..t.len()] == t[..])
                .map(|u| index[u])
                .collect();
            let mut types: Vec<u64> = desc.iter().map(|&d| nodes[d].code).collect();
            types.sort_unstable();
            types.dedup();
            nodes[i].desc = desc;
            nodes[i].desc_types = types;
        }
        let mut level1: Vec<(u64, Vec<u64>)> = Vec::new();
        for node in &nodes {
            let sig = (node.code, node.desc_types.clone());
            if level1.iter().any(|(c, d)| *c == sig.0 && is_subset(d, &sig.1)) {
                continue;
            }
            level1.retain(|(c, d)| !(*c == sig.0 && is_subset(&sig.1, d)));
            level1.push(sig);
        }
        level1.sort_by(|x, y| code_len(y.0).cmp(&code_len(x.0)).then(x.0.cmp(&y.0)));
        Ok(PreparedSnapshot { nodes, level1 })
    }

    fn root_codes(&self) -> &[u64] {
        &self.nodes[0].desc_types
    }
}

/// `(a, ∅) ≤ₙ (b, ∅)` on prepared snapshots (same vocabulary assumed).
pub fn leq_n_prepared(a: &PreparedSnapshot, b: &PreparedSnapshot, n: usize) -> bool {
    match n {
        0 => true,
        1 => is_subset(b.root_codes(), a.root_codes()),
        2 => {
            // m = 1 first: it implies the m = 0 clause, which is checked anyway.
            let m1 = b.level1.iter().all(|(code, b_desc)| {
                a.level1.iter().any(|(c, a_desc)| c == code && is_subset(a_desc, b_desc))
            });
            m1 && is_subset(b.root_codes(), a.root_codes())
        }
        _ => prepared_game(a, 0, b, 0, n),
    }
}

fn prepared_game(a: &PreparedSnapshot, na: usize, b: &PreparedSnapshot, nb: usize, n: usize) -> bool {
    if n == 0 {
        return a.nodes[na].code == b.nodes[nb].code;
    }
    if n == 1 {
        return is_subset(&b.nodes[nb].desc_types, &a.nodes[na].desc_types);
    }
    (0..n).rev().all(|m| {
        b.nodes[nb].desc.iter().all(|&d| {
            a.nodes[na]
                .desc
                .iter()
                .any(|&c| a.nodes[c].code == b.nodes[d].code && prepared_game(b, d, a, c, m))
        })
    })
}
